#include "rodsym/corpus.hpp"

#include <algorithm>
#include <vector>

namespace rodsym {

namespace {

std::vector<double> random_breaks(std::mt19937_64& rng, const Interval& domain) {
  std::uniform_int_distribution<int> count(kMinInteriorBreaks, kMaxInteriorBreaks);
  std::uniform_real_distribution<double> position(domain.lo(), domain.hi());
  const int k = count(rng);
  std::vector<double> breaks;
  breaks.reserve(k + 2);
  breaks.push_back(domain.lo());
  for (int i = 0; i < k; ++i) breaks.push_back(position(rng));
  breaks.push_back(domain.hi());
  std::sort(breaks.begin() + 1, breaks.end() - 1);
  return breaks;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::vector<double> values(n);
  for (double& v : values) v = value(rng);
  return values;
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

StepFunction random_nonnegative_step(std::mt19937_64& rng, const Interval& domain) {
  auto breaks = random_breaks(rng, domain);
  auto values = random_values(rng, breaks.size() - 1, 0.0, 3.0);
  return StepFunction(domain, std::move(breaks), std::move(values));
}

StepFunction random_zero_mean_step(std::mt19937_64& rng, const Interval& domain) {
  auto breaks = random_breaks(rng, domain);
  auto values = random_values(rng, breaks.size() - 1, -1.5, 1.5);
  const StepFunction raw(domain, std::move(breaks), std::move(values));
  const double mean = raw.integral() / domain.length();
  std::vector<double> centered(raw.values().begin(), raw.values().end());
  for (double& v : centered) v -= mean;
  return StepFunction(domain, {raw.breakpoints().begin(), raw.breakpoints().end()},
                      std::move(centered));
}

double random_alpha(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return 10.0 * (1.0 - u(rng));
}

}  // namespace rodsym
