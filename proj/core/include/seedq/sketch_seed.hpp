#pragma once

#include <cstddef>
#include <span>

#include "seedq/rng.hpp"
#include "seedq/seed_result.hpp"
#include "seedq/sketch.hpp"

namespace seedq {

/// Total weight of the groups S touches, divided by (|V_rho|/n) * T.
/// Groups touched by several members of S count once.
double sketch_coverage_value(const Sketch& sketch, std::span<const NodeId> seeds);

/// min(ceil((n/k) ln(1/eps_prime)), remaining).
std::size_t seed_sample_size(std::size_t n, std::size_t k, double eps_prime,
                             std::size_t remaining);

/// Stochastic greedy on the sketch: each of k steps scores a uniform sample
/// of the remaining nodes by the summed current value of their groups, takes
/// the best (lowest id on ties) and zeroes its groups.
/// Throws ParameterError when k > n, k == 0 or eps_prime is outside (0, 1).
SeedResult seed_from_sketch(const Sketch& sketch, std::size_t k, double eps_prime, Rng& rng);

/// Plain greedy on the sketch: every remaining node is scored each step.
SeedResult seed_from_sketch_exhaustive(const Sketch& sketch, std::size_t k);

/// Default eps_prime for an accuracy target epsilon.
constexpr double default_eps_prime(double epsilon) { return epsilon / 7.0; }

}  // namespace seedq
