#include "seedq/sketch_seed.hpp"

#include <algorithm>
#include <cmath>

#include "seedq/errors.hpp"
#include "seedq/generators.hpp"
#include "seedq/probe.hpp"

namespace seedq {

namespace {

double normalization(const Sketch& sketch) {
  return sketch.effective_rho() * static_cast<double>(sketch.num_copies());
}

SeedResult greedy_on_sketch(const Sketch& sketch, std::size_t k, double eps_prime, Rng* rng) {
  const std::size_t n = sketch.num_nodes();
  if (k == 0) throw ParameterError("k must be at least 1");
  if (k > n) throw ParameterError("k exceeds the number of nodes");

  SeedResult result;
  result.algorithm = "probe-seed";
  if (rng != nullptr) result.rng_token = rng->token();

  std::vector<std::uint32_t> value(sketch.num_groups());
  for (std::size_t g = 0; g < value.size(); ++g) value[g] = sketch.group_weight(g);
  std::vector<NodeId> remaining(n);
  for (NodeId v = 0; v < n; ++v) remaining[v] = v;

  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best_pos = 0;
    std::uint64_t best_score = 0;
    bool have_best = false;
    auto consider = [&](std::size_t pos) {
      std::uint64_t score = 0;
      for (std::uint32_t g : sketch.groups_of(remaining[pos])) score += value[g];
      if (!have_best || score > best_score ||
          (score == best_score && remaining[pos] < remaining[best_pos])) {
        best_pos = pos;
        best_score = score;
        have_best = true;
      }
    };
    if (rng == nullptr) {
      for (std::size_t pos = 0; pos < remaining.size(); ++pos) consider(pos);
    } else {
      const std::size_t r = seed_sample_size(n, k, eps_prime, remaining.size());
      for (NodeId pos : sample_without_replacement(remaining.size(), r, *rng)) consider(pos);
    }
    const NodeId chosen = remaining[best_pos];
    for (std::uint32_t g : sketch.groups_of(chosen)) value[g] = 0;
    result.seeds.push_back(chosen);
    remaining[best_pos] = remaining.back();
    remaining.pop_back();
  }
  result.value = sketch_coverage_value(sketch, result.seeds);
  return result;
}

}  // namespace

double sketch_coverage_value(const Sketch& sketch, std::span<const NodeId> seeds) {
  std::vector<char> covered(sketch.num_groups(), 0);
  std::uint64_t total = 0;
  for (NodeId v : seeds) {
    if (v >= sketch.num_nodes()) throw ParameterError("seed is not a node of the sketch");
    for (std::uint32_t g : sketch.groups_of(v)) {
      if (covered[g]) continue;
      covered[g] = 1;
      total += sketch.group_weight(g);
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(total) / normalization(sketch);
}

std::size_t seed_sample_size(std::size_t n, std::size_t k, double eps_prime,
                             std::size_t remaining) {
  const double raw =
      static_cast<double>(n) / static_cast<double>(k) * std::log(1.0 / eps_prime);
  return std::clamp<std::size_t>(ceil_count(raw), std::min<std::size_t>(1, remaining), remaining);
}

SeedResult seed_from_sketch(const Sketch& sketch, std::size_t k, double eps_prime, Rng& rng) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) {
    throw ParameterError("eps_prime must lie in (0, 1)");
  }
  return greedy_on_sketch(sketch, k, eps_prime, &rng);
}

SeedResult seed_from_sketch_exhaustive(const Sketch& sketch, std::size_t k) {
  return greedy_on_sketch(sketch, k, 0.5, nullptr);
}

}  // namespace seedq
