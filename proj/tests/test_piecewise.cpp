#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "rodsym/corpus.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/json_io.hpp"
#include "rodsym/piecewise.hpp"

using namespace rodsym;

namespace {

const Interval kRod = rod_domain();

// v_1 from the half-rod example: 0, x^2/2 + pi x/2 + pi^2/8, pi x.
PiecewisePoly example_v1() {
  return PiecewisePoly(kRod, {-kPi, -kPi / 2, kPi / 2, kPi},
                       {Quadratic{0, 0, 0}, Quadratic{kPi * kPi / 8, kPi / 2, 0.5},
                        Quadratic{0, kPi, 0}});
}

PiecewisePoly random_poly(std::mt19937_64& rng, const Interval& d) {
  const StepFunction breaks = random_nonnegative_step(rng, d);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::vector<Quadratic> q(breaks.size());
  for (auto& p : q) p = {c(rng), c(rng), c(rng)};
  return PiecewisePoly(d, {breaks.breakpoints().begin(), breaks.breakpoints().end()}, q);
}

// Simpson over each piece with that piece's own coefficients.
double per_piece(const PiecewisePoly& p, const std::function<double(double)>& outer,
                 std::size_t intervals) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Quadratic q = p.piece(i);
    total += oracle::simpson([&](double x) { return outer(q(x)); }, p.piece_lo(i), p.piece_hi(i),
                             intervals);
  }
  return total;
}

}  // namespace

TEST(Interval, RejectsEmptyOrReversed) {
  EXPECT_THROW(Interval(1.0, 1.0), ParameterError);
  EXPECT_THROW(Interval(2.0, 1.0), ParameterError);
  EXPECT_THROW(Interval(0.0, INFINITY), ParameterError);
  EXPECT_DOUBLE_EQ(Interval::centered(2 * kPi).lo(), -kPi);
}

TEST(StepFunction, ValidatesShape) {
  EXPECT_THROW(StepFunction(kRod, {-kPi, kPi}, {1.0, 2.0}), ParameterError);
  EXPECT_THROW(StepFunction(kRod, {-kPi, 1.0, 0.0, kPi}, {1, 2, 3}), ParameterError);
  EXPECT_THROW(StepFunction(kRod, {-3.0, kPi}, {1.0}), ParameterError);
  EXPECT_THROW(StepFunction(kRod, {-kPi, kPi}, {NAN}), ParameterError);
}

TEST(StepFunction, FusesNearlyCoincidentBreakpoints) {
  const StepFunction f(kRod, {-kPi, 0.0, 1e-14, kPi}, {1.0, 5.0, 2.0});
  EXPECT_EQ(f.size(), 2u);
  EXPECT_DOUBLE_EQ(f(0.5), 2.0);
}

TEST(StepFunction, EvaluatesRightPieceAtBreakpoints) {
  const StepFunction f(kRod, {-kPi, 0.0, kPi}, {1.0, 2.0});
  EXPECT_EQ(f(-kPi), 1.0);
  EXPECT_EQ(f(0.0), 2.0);
  EXPECT_EQ(f(kPi), 2.0);
  EXPECT_THROW(f(4.0), DomainError);
}

TEST(StepFunction, IntegralIsSumOfPieces) {
  const StepFunction f(Interval(0, kPi), {0, 1, 2, kPi}, {1.0, -3.0, 2.5});
  EXPECT_DOUBLE_EQ(f.integral(), 1.0 - 3.0 + 2.5 * (kPi - 2));
  EXPECT_DOUBLE_EQ(f.l1_norm(), 1.0 + 3.0 + 2.5 * (kPi - 2));
  EXPECT_DOUBLE_EQ(f.sup_norm(), 3.0);
}

TEST(PiecewisePoly, EvaluatesOnContainingPiece) {
  EXPECT_EQ(PiecewisePoly::zero(kRod)(1.0), 0.0);
  EXPECT_NEAR(example_v1()(kPi), kPi * kPi, 1e-15);
  const PiecewisePoly p(kRod, {-kPi, 0, kPi}, {Quadratic{1, 0, 0}, Quadratic{2, 0, 0}});
  EXPECT_EQ(p(0.0), 2.0);
  EXPECT_EQ(p(kPi), 2.0);
  EXPECT_THROW(p(-4.0), DomainError);
}

TEST(PiecewisePoly, ContinuityFlagRejectsJumps) {
  EXPECT_THROW(PiecewisePoly(kRod, {-kPi, 0, kPi}, {Quadratic{1, 0, 0}, Quadratic{2, 0, 0}}, true),
               ParameterError);
  EXPECT_TRUE(example_v1().is_continuous());
}

TEST(Integrate, Examples) {
  const auto chi = StepFunction::indicator(kRod, -kPi, 0.0);
  EXPECT_NEAR(integrate(chi, -kPi, kPi), kPi, 1e-15);
  EXPECT_NEAR(moment(chi, 1), -kPi * kPi / 2, 1e-14);
  EXPECT_NEAR(integrate(PiecewisePoly::constant(Interval(1, 4), 2.5)), 7.5, 1e-15);
  EXPECT_THROW(integrate(chi, -4.0, 0.0), DomainError);
  EXPECT_THROW(moment(chi, 3), ParameterError);
}

TEST(Integrate, AdditiveOverAdjacentIntervals) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_poly(rng, kRod);
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double whole = integrate(p, a, c);
    EXPECT_NEAR(integrate(p, a, b) + integrate(p, b, c), whole, 1e-12 * std::max(1.0, std::abs(whole)));
  }
}

TEST(Integrate, MatchesSimpsonOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, kRod);
    EXPECT_NEAR(integrate(p), per_piece(p, [](double y) { return y; }, 2), 1e-11);
  }
}

TEST(CumulativeMoments, Examples) {
  const auto one = cumulative_moments(StepFunction::constant(kRod, 1.0));
  EXPECT_NEAR(one.m0(1.0), 1.0 + kPi, 1e-15);
  const auto half = cumulative_moments(StepFunction::indicator(kRod, -kPi, 0.0));
  EXPECT_NEAR(half.m0(kPi), kPi, 1e-15);
  EXPECT_NEAR(half.m1(kPi), -kPi * kPi / 2, 1e-14);
  const auto zero = cumulative_moments(StepFunction::constant(kRod, 0.0));
  EXPECT_EQ(zero.m0(0.3), 0.0);
  EXPECT_EQ(zero.m1(0.3), 0.0);
}

TEST(CumulativeMoments, AgreeWithPartialIntegrals) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_zero_mean_step(rng, kRod);
    const auto m = cumulative_moments(f);
    EXPECT_NEAR(m.m0(kPi), integrate(f, -kPi, kPi), 1e-14 * (1 + f.l1_norm()));
    for (double x : uniform_grid(kRod, 17)) {
      EXPECT_NEAR(m.m0(x), integrate(f, -kPi, x), 1e-13);
      const double m1 = oracle::simpson_on_cuts(
          [&](double y) { return y * oracle::piece_value(f, y); },
          [&] {
            std::vector<double> c;
            for (double b : f.breakpoints()) if (b < x) c.push_back(b);
            c.push_back(x);
            return c;
          }());
      EXPECT_NEAR(m.m1(x), m1, 1e-12);
    }
  }
}

TEST(Extrema, HalfRodExampleSolutionV) {
  // v = -v_1 + pi x / 2 + pi / (2 c) with alpha = 1.
  const double c = 1.0 / (1.0 + kPi);
  const PiecewisePoly line(kRod, {-kPi, kPi}, {Quadratic{kPi / (2 * c), kPi / 2, 0}});
  const auto v = line - example_v1();
  const Extrema e = extrema(v);
  EXPECT_NEAR(e.argmax, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e.argmin), kPi, 1e-15);  // v(-pi) = v(pi); ties go to the smaller x
  EXPECT_NEAR(e.osc(), 3 * kPi * kPi / 8, 1e-12);
}

TEST(Extrema, ConstantAndSampledBound) {
  const Extrema e = extrema(PiecewisePoly::constant(kRod, 5.0));
  EXPECT_EQ(e.min, 5.0);
  EXPECT_EQ(e.max, 5.0);
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, kRod);
    const Extrema x = extrema(p);
    for (double t : uniform_grid(kRod, 1000)) {
      EXPECT_GE(x.max, p(t));
      EXPECT_LE(x.min, p(t));
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    // Continuous case: the extrema are attained values.
    const auto f = random_zero_mean_step(rng, kRod);
    const auto p = cumulative_moments(f).m1 - cumulative_moments(f).m0;
    const Extrema x = extrema(p);
    EXPECT_NEAR(p(x.argmax), x.max, 1e-12);
    EXPECT_NEAR(p(x.argmin), x.min, 1e-12);
  }
}

TEST(LpNorm, Examples) {
  const Interval half(0, kPi);
  EXPECT_NEAR(lp_norm(PiecewisePoly::constant(half, 1.0), 2.0), std::sqrt(kPi), 1e-14);
  for (double p : {1.0, 2.0, 3.5, kInfinity}) {
    EXPECT_EQ(lp_norm(PiecewisePoly::zero(half), p), 0.0);
  }
  const PiecewisePoly x(half, {0, kPi}, {Quadratic{0, 1, 0}});
  EXPECT_NEAR(lp_norm(x, 1.0), kPi * kPi / 2, 1e-13);
  EXPECT_THROW(lp_norm(x, 0.5), ParameterError);
}

TEST(LpNorm, MatchesQuadratureOracleAndSupNorm) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_poly(rng, kRod);
    const Extrema e = extrema(p);
    EXPECT_EQ(lp_norm(p, kInfinity), std::max(std::abs(e.min), std::abs(e.max)));
    for (double pexp : {1.0, 2.0, 3.0, 1.5}) {
      const double ref = std::pow(
          per_piece(p, [&](double y) { return std::pow(std::abs(y), pexp); }, 20000),
          1.0 / pexp);
      EXPECT_NEAR(lp_norm(p, pexp), ref, 1e-7 * std::max(1.0, ref)) << "p = " << pexp;
    }
  }
}

TEST(HingeIntegral, MatchesQuadrature) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_poly(rng, kRod);
    for (double level : {-1.0, 0.0, 0.7}) {
      const double ref = per_piece(p, [&](double y) { return std::max(y - level, 0.0); }, 20000);
      EXPECT_NEAR(hinge_integral(p, level), ref, 1e-7);
    }
    EXPECT_NEAR(integrate_square(p), std::pow(lp_norm(p, 2.0), 2), 1e-10);
  }
}

TEST(Arithmetic, SumMergesBreakpoints) {
  const PiecewisePoly a(kRod, {-kPi, 0, kPi}, {Quadratic{1, 0, 0}, Quadratic{0, 1, 0}});
  const PiecewisePoly b(kRod, {-kPi, 1, kPi}, {Quadratic{0, 0, 1}, Quadratic{2, 0, 0}});
  const auto s = a + b;
  const auto d = a - b;
  EXPECT_EQ(s.size(), 3u);
  for (double x : uniform_grid(kRod, 101)) {
    EXPECT_NEAR(s(x), a(x) + b(x), 1e-14);
    EXPECT_NEAR(d(x), a(x) - b(x), 1e-14);
  }
  EXPECT_THROW(a + PiecewisePoly::zero(Interval(0, 1)), DomainError);
}

TEST(Arithmetic, AntiderivativeRequiresLinearPieces) {
  const auto f = StepFunction::indicator(kRod, -1, 2, 3.0);
  const auto m0 = PiecewisePoly::from_step(f).antiderivative();
  EXPECT_NEAR(m0(kPi), 9.0, 1e-14);
  EXPECT_THROW(m0.antiderivative().antiderivative(), ParameterError);
}

TEST(TotalVariation, InteriorAndExtended) {
  const StepFunction f(kRod, {-kPi, 0, kPi}, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(total_variation(f, false), 2.0);
  EXPECT_DOUBLE_EQ(total_variation(f, true), 6.0);
}

TEST(UniformGrid, EndpointsExact) {
  const auto g = uniform_grid(kRod, 1001);
  ASSERT_EQ(g.size(), 1001u);
  EXPECT_EQ(g.front(), -kPi);
  EXPECT_EQ(g.back(), kPi);
  EXPECT_THROW(uniform_grid(kRod, 1), ParameterError);
}

TEST(Json, RoundTripIsExact) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_zero_mean_step(rng, Interval(0, kPi));
    const auto g = step_function_from_json(nlohmann::json::parse(to_json(f).dump()));
    ASSERT_EQ(g.size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_EQ(g.values()[i], f.values()[i]);
      EXPECT_EQ(g.breakpoints()[i], f.breakpoints()[i]);
    }
    const auto p = random_poly(rng, kRod);
    const auto q = piecewise_poly_from_json(nlohmann::json::parse(to_json(p).dump()));
    for (double x : uniform_grid(kRod, 33)) EXPECT_EQ(q(x), p(x));
  }
}

TEST(Json, SchemaErrors) {
  using nlohmann::json;
  EXPECT_THROW(step_function_from_json(json::parse(R"({"interval":[0,1]})")), ParameterError);
  EXPECT_THROW(step_function_from_json(json::parse(R"({"interval":[0,1],"breakpoints":[0,1],"values":["a"]})")),
               ParameterError);
  EXPECT_THROW(step_function_from_json(json::parse(R"([1,2])")), ParameterError);
}
