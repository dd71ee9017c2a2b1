#pragma once

// Seeded random step functions for property-based audits. Instance i of a
// corpus with seed s draws from mt19937_64 seeded by seed_seq{s, i}, so each
// instance is reproducible on its own and independent of scheduling.

#include <cstdint>
#include <random>

#include "rodsym/piecewise.hpp"

namespace rodsym {

inline constexpr int kMinInteriorBreaks = 1;
inline constexpr int kMaxInteriorBreaks = 12;

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

// 1..12 interior breakpoints uniform on the domain, values uniform in [0, 3].
StepFunction random_nonnegative_step(std::mt19937_64& rng, const Interval& domain);

// Values uniform in [-1.5, 1.5], then shifted so that \int f = 0.
StepFunction random_zero_mean_step(std::mt19937_64& rng, const Interval& domain);

// Uniform on (0, 10].
double random_alpha(std::mt19937_64& rng);

}  // namespace rodsym
