#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rodsym/corpus.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/solver.hpp"

using namespace rodsym;

namespace {

const Interval kRod = rod_domain();

double sup_diff(const PiecewisePoly& p, const std::function<double(double)>& ref, std::size_t n = 1001) {
  double worst = 0.0;
  for (double x : uniform_grid(p.domain(), n)) worst = std::max(worst, std::abs(p(x) - ref(x)));
  return worst;
}

StepFunction even_reflection(const StepFunction& f) {
  // f on [0, pi] -> F(x) = f(|x|) on [-pi, pi]
  std::vector<double> breaks;
  std::vector<double> values;
  const auto b = f.breakpoints();
  const auto v = f.values();
  for (std::size_t i = b.size(); i-- > 1;) breaks.push_back(-b[i]);
  for (double x : b) breaks.push_back(x);
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (std::size_t i = v.size(); i-- > 0;) values.push_back(v[i]);
  for (double y : v) values.push_back(y);
  return StepFunction(kRod, breaks, values);
}

}  // namespace

TEST(RobinParam, Validates) {
  EXPECT_THROW(RobinParam{0.0}, ParameterError);
  EXPECT_THROW(RobinParam{-1.0}, ParameterError);
  EXPECT_THROW(RobinParam{kInfinity}, ParameterError);
  EXPECT_THROW(RobinParam{NAN}, ParameterError);
  for (double a : {1e-6, 0.1, 1.0, 1e6}) {
    const RobinParam p(a);
    EXPECT_GT(p.c_alpha(), 0.0);
    EXPECT_LT(p.c_alpha(), 1.0 / kPi);
    EXPECT_DOUBLE_EQ(p.c_alpha(), a / (1 + a * kPi));
  }
}

TEST(RobinGreen, Examples) {
  const RobinParam one(1.0);
  EXPECT_NEAR(robin_green(0, 0, one), (1 + kPi) / 2, 1e-15);
  const double c = one.c_alpha();
  const double t = c * kPi;
  EXPECT_NEAR(robin_green(kPi, -kPi, one), c / 2 * kPi * kPi - kPi + 1 / (2 * c), 1e-13);
  EXPECT_NEAR(robin_green(kPi, -kPi, one), kPi * (t - 1) * (t - 1) / (2 * t), 1e-13);
  EXPECT_THROW(robin_green(4.0, 0, one), DomainError);
  EXPECT_THROW(dirichlet_green(0, -4.0), DomainError);
}

TEST(RobinGreen, SymmetricExactly) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 10000; ++i) {
    const RobinParam a(random_alpha(rng));
    const double x = u(rng), y = u(rng);
    EXPECT_EQ(robin_green(x, y, a), robin_green(y, x, a));
  }
}

TEST(RobinGreen, NonnegativeOnGrid) {
  const auto grid = uniform_grid(kRod, 256);
  for (double a : {0.1, 1.0, 10.0}) {
    const RobinParam p(a);
    for (double x : grid) {
      for (double y : grid) ASSERT_GE(robin_green(x, y, p), -1e-12);
    }
  }
  for (double x : grid) {
    for (double y : grid) ASSERT_GE(dirichlet_green(x, y), -1e-12);
  }
}

TEST(RobinSolve, Examples) {
  const RobinParam one(1.0);
  EXPECT_EQ(sup_diff(robin_solve(StepFunction::constant(kRod, 0), one), [](double) { return 0.0; }), 0.0);
  const auto u = robin_solve(StepFunction::constant(kRod, 1), one);
  EXPECT_LT(sup_diff(u, [](double x) { return (kPi * kPi - x * x) / 2 + kPi; }), 1e-12);
  EXPECT_NEAR(u(0.0), kPi * kPi / 2 + kPi, 1e-12);

  for (double a : {0.1, 1.0, 10.0}) {
    const RobinParam p(a);
    const double c = p.c_alpha();
    auto u1 = [](double x) { return x < 0 ? x * x / 2 + kPi * x + kPi * kPi / 2 : kPi * x + kPi * kPi / 2; };
    auto closed = [&](double x) {
      return -u1(x) + (kPi / 2 + kPi * kPi * c / 4) * x + kPi / (2 * c) + kPi * kPi / 4;
    };
    EXPECT_LT(sup_diff(robin_solve(StepFunction::indicator(kRod, -kPi, 0), p), closed, 100), 1e-10);
  }
  EXPECT_THROW(robin_solve(StepFunction::constant(Interval(0, kPi), 1), one), DomainError);
}

TEST(DirichletSolve, Examples) {
  EXPECT_EQ(sup_diff(dirichlet_solve(StepFunction::constant(kRod, 0)), [](double) { return 0.0; }), 0.0);
  const auto u = dirichlet_solve(StepFunction::constant(kRod, 1));
  EXPECT_LT(sup_diff(u, [](double x) { return (kPi * kPi - x * x) / 2; }), 1e-12);
  EXPECT_NEAR(u(-kPi), 0.0, 1e-10);
  EXPECT_NEAR(u(kPi), 0.0, 1e-10);
  const auto centered = dirichlet_solve(StepFunction::indicator(kRod, -kPi / 2, kPi / 2));
  EXPECT_NEAR(centered(0.0), 3 * kPi * kPi / 8, 1e-12);
}

TEST(GreenSolvers, MatchKernelQuadrature) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_zero_mean_step(rng, kRod);
    const RobinParam a(random_alpha(rng));
    const auto u = robin_solve(f, a);
    const auto w = dirichlet_solve(f);
    for (double x : uniform_grid(kRod, 41)) {
      const double ref = oracle::green_apply([&](double s, double y) { return robin_green(s, y, a); }, f, x);
      EXPECT_NEAR(u(x), ref, 1e-10 * std::max(1.0, std::abs(ref)));
      EXPECT_NEAR(w(x), oracle::green_apply(dirichlet_green, f, x), 1e-11);
    }
  }
}

TEST(SolverProperties, NonnegativeConcaveAndResidualsSmall) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_nonnegative_step(rng, kRod);
    const RobinParam a(random_alpha(rng));
    const double budget = kResidualTol * (1 + f.l1_norm());
    for (const auto& [u, bc] : {std::pair{robin_solve(f, a), BoundaryCondition::robin(a)},
                                std::pair{dirichlet_solve(f), BoundaryCondition::dirichlet()}}) {
      EXPECT_GE(extrema(u).min, -1e-10);
      const auto r = boundary_residuals(u, bc);
      EXPECT_LE(r.left, budget);
      EXPECT_LE(r.right, budget);
      for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_LE(u.piece(i).c2, 0.0);
        EXPECT_NEAR(u.piece(i).c2, -0.5 * f.values()[i], 1e-15);
      }
      for (std::size_t i = 1; i < u.size(); ++i) {
        const double b = u.piece_lo(i);
        EXPECT_NEAR(u.piece(i - 1).derivative(b), u.piece(i).derivative(b), 1e-10);
      }
    }
  }
}

TEST(NeumannKernel, Examples) {
  EXPECT_NEAR(neumann_kernel(0.0), kPi * kPi / 3, 1e-15);
  EXPECT_NEAR(neumann_kernel(kPi), -kPi * kPi / 6, 1e-14);
  EXPECT_NEAR(neumann_kernel(-kPi), -kPi * kPi / 6, 1e-14);
  EXPECT_NEAR(neumann_kernel(0.7 + 2 * kPi), neumann_kernel(0.7), 1e-13);
  EXPECT_NEAR(neumann_kernel(-5.0), neumann_kernel(-5.0 + 2 * kPi), 1e-13);
  EXPECT_NEAR(oracle::simpson_on_cuts(neumann_kernel, {-kPi, 0, kPi}) / (2 * kPi), 0.0, 1e-14);
}

TEST(NeumannSolve, Examples) {
  const Interval half(0, kPi);
  EXPECT_EQ(sup_diff(neumann_solve(StepFunction::constant(half, 0)), [](double) { return 0.0; }), 0.0);
  const auto src = StepFunction(half, {0, kPi / 2, kPi}, {1, -1});
  const auto u = neumann_solve(src);
  const Extrema e = extrema(u);
  EXPECT_NEAR(e.max, kPi * kPi / 8, 1e-12);
  EXPECT_NEAR(e.argmax, 0.0, 1e-15);
  EXPECT_NEAR(e.min, -kPi * kPi / 8, 1e-12);
  EXPECT_NEAR(e.argmin, kPi, 1e-15);
  EXPECT_NEAR(e.osc(), kPi * kPi / 4, 1e-12);

  const auto sinks = neumann_solve(StepFunction(half, {0, kPi / 2, kPi}, {-1, 1}));
  EXPECT_LT(sup_diff(sinks, [&](double x) { return u(kPi - x); }), 1e-12);
  EXPECT_NEAR(extrema(sinks).argmin, 0.0, 1e-15);

  EXPECT_THROW(neumann_solve(StepFunction::constant(half, 1e-9)), CompatibilityError);
  EXPECT_NO_THROW(neumann_solve(StepFunction(half, {0, 1, kPi}, {1e-11, 0})));
}

TEST(NeumannConvolution, PropertiesOnRandomData) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_zero_mean_step(rng, kRod);
    const auto u = neumann_convolution_solve(f);
    const double flux = -moment(f, 1) / (2 * kPi);
    EXPECT_NEAR(u.derivative(-kPi), flux, 1e-12);
    EXPECT_NEAR(u.derivative(kPi), flux, 1e-12);
    EXPECT_NEAR(integrate(u), 0.0, 1e-11);
    EXPECT_TRUE(u.is_continuous());
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u.piece(i).c2, -0.5 * f.values()[i], 1e-13);
    for (double x : uniform_grid(kRod, 21)) {
      const double ref = oracle::simpson_on_cuts(
          [&](double y) { return neumann_kernel(x - y) * oracle::piece_value(f, y); },
          [&] {
            auto c = oracle::breaks_of(f);
            c.push_back(x);
            std::sort(c.begin(), c.end());
            return c;
          }(), 64);
      EXPECT_NEAR(u(x), ref / (2 * kPi), 1e-10);
    }
  }
}

TEST(NeumannConvolution, AgreesWithNeumannSolveForBalancedData) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const auto half = random_zero_mean_step(rng, Interval(0, kPi));
    const auto full = even_reflection(half);
    ASSERT_NEAR(moment(full, 1), 0.0, 1e-12);
    const auto conv = neumann_convolution_solve(full);
    const auto direct = neumann_solve(half);
    EXPECT_LT(sup_diff(direct, [&](double x) { return conv(x); }), 1e-9);
    EXPECT_LT(sup_diff(neumann_solve(full), [&](double x) { return conv(x); }), 1e-9);
  }
  EXPECT_THROW(neumann_convolution_solve(StepFunction::constant(kRod, 1)), CompatibilityError);
}

TEST(DirectIntegration, Examples) {
  const auto u = direct_integration_oracle(StepFunction::constant(kRod, 1), BoundaryCondition::dirichlet());
  EXPECT_LT(sup_diff(u, [](double x) { return (kPi * kPi - x * x) / 2; }), 1e-12);
  for (const auto& bc : {BoundaryCondition::robin(RobinParam(2.0)), BoundaryCondition::dirichlet(),
                         BoundaryCondition::neumann()}) {
    EXPECT_EQ(sup_diff(direct_integration_oracle(StepFunction::constant(kRod, 0), bc),
                       [](double) { return 0.0; }), 0.0);
  }
}

TEST(DirectIntegration, AgreesWithClosedForms) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_nonnegative_step(rng, kRod);
    const RobinParam a(random_alpha(rng));
    EXPECT_LT(sup_distance(robin_solve(f, a), direct_integration_oracle(f, BoundaryCondition::robin(a))), 1e-10);
    EXPECT_LT(sup_distance(dirichlet_solve(f), direct_integration_oracle(f, BoundaryCondition::dirichlet())), 1e-10);
    const auto g = random_zero_mean_step(rng, Interval(0, kPi));
    EXPECT_LT(sup_distance(neumann_solve(g), direct_integration_oracle(g, BoundaryCondition::neumann())), 1e-10);
  }
}

TEST(DirectIntegration, RobinOnGeneralInterval) {
  const Interval d(-1.0, 2.0);
  const auto u = direct_integration_oracle(StepFunction::uniform(d, {1, 3, 0.5}), BoundaryCondition::robin(RobinParam(0.7)));
  const auto r = boundary_residuals(u, BoundaryCondition::robin(RobinParam(0.7)));
  EXPECT_LT(r.left, 1e-12);
  EXPECT_LT(r.right, 1e-12);
}

TEST(KernelFourier, Coefficients) {
  EXPECT_NEAR(kernel_fourier_check(0), 0.0, 1e-6);
  EXPECT_NEAR(kernel_fourier_check(1), 1.0, 1e-6);
  EXPECT_NEAR(kernel_fourier_check(4), 1.0 / 16, 1e-6);
  EXPECT_NEAR(kernel_fourier_check(-3), 1.0 / 9, 1e-6);
  EXPECT_THROW(kernel_fourier_check(65), ParameterError);
}

TEST(Solve, DispatchesByBoundaryCondition) {
  const auto f = StepFunction::indicator(kRod, -1, 1);
  const RobinParam a(3.0);
  EXPECT_EQ(sup_distance(solve(f, BoundaryCondition::robin(a)), robin_solve(f, a)), 0.0);
  EXPECT_EQ(sup_distance(solve(f, BoundaryCondition::dirichlet()), dirichlet_solve(f)), 0.0);
  EXPECT_EQ(BoundaryCondition::neumann().label(), "neumann");
}
