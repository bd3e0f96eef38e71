#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ukm/core.hpp"

namespace ukm {

struct ExactOptions {
  /// Upper bound on the number of k-subsets the enumeration may visit.
  double budget = 1e7;
  /// Also return every optimal center set (tiny instances).
  bool collect_all_optima = false;
};

struct ExactResult {
  double cost = 0.0;
  CenterSet centers;                 // one optimum, ids of the source dataset
  std::vector<CenterSet> all_optima; // filled when requested
  /// Balancedness of the most balanced optimum found (the returned one unless
  /// all optima were collected).
  Balancedness balancedness;
  double subsets_evaluated = 0;
};

/// Exhaustive discrete k-Median over every k-subset of distinct point
/// locations, keeping only solutions with balancedness >= beta_min. Throws
/// budget_exceeded past `budget` subsets and infeasible if no subset
/// qualifies. When fewer than k distinct locations exist every location
/// becomes a center and the cost is 0.
ExactResult brute_force_kmedian(const Dataset& X, std::size_t k, double beta_min,
                                const ExactOptions& options = {});
ExactResult brute_force_kmedian(const WeightedPoints& P, std::size_t k, double beta_min,
                                const ExactOptions& options = {});

/// Optimal 1D k-Median (centers at data points) by interval dynamic
/// programming over the sorted distinct values.
ExactResult dp_1d_kmedian(const Dataset& X, std::size_t k);
ExactResult dp_1d_kmedian(const WeightedPoints& P, std::size_t k);

/// Number of k-subsets of an n-set, as a double (saturates to +inf).
double binomial(std::size_t n, std::size_t k);

/// Local ids of one representative per distinct location, ascending.
std::vector<PointId> distinct_locations(const MetricBackend& space);

}  // namespace ukm
