#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ukm/core.hpp"
#include "ukm/sampling.hpp"

namespace ukm {

struct SensitivityOptions {
  /// Local-search rounds refining the D-sampled bicriteria solution.
  std::size_t local_search_rounds = 5;
  /// Candidate centers considered by those rounds (uniformly drawn, plus the
  /// seeding); 0 means every point.
  std::size_t candidate_pool = 64;
};

/// Per-point sensitivity upper bounds
///   s(x) = dist(x, A) / cost(X, A) + 1 / |cluster_A(x)|
/// for a k-center bicriteria solution A (s(x) = 1 / |cluster_A(x)| when
/// cost(X, A) = 0).
struct SensitivityProfile {
  CenterSet bicriteria;
  std::vector<double> sensitivity;
  double total = 0.0;

  double probability(PointId x) const { return sensitivity[x] / total; }
};

SensitivityProfile sensitivities(const Dataset& X, std::size_t k, std::uint64_t seed,
                                 const SensitivityOptions& options = {});

/// m i.i.d. draws with probability s(x) / S_tot; each draw carries weight
/// 1 / (m * p(x)), so weighted_cost is unbiased for cost(X, C).
WeightedSample build_coreset(const SensitivityProfile& profile, std::size_t m,
                             std::uint64_t seed);
WeightedSample build_coreset(const Dataset& X, std::size_t k, std::size_t m,
                             std::uint64_t seed,
                             const SensitivityOptions& options = {});

}  // namespace ukm
