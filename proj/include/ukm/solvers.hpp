#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ukm/core.hpp"
#include "ukm/sampling.hpp"

namespace ukm {

/// Single-swap local search for k-Median, optionally restricted to solutions
/// whose every cluster holds at least beta_min * W / k weight.
struct LocalSearchConfig {
  std::size_t k = 1;
  /// 0 selects the default 10 * k * ceil(log2 n).
  std::size_t max_iterations = 0;
  /// A swap is taken only if it lowers the cost by more than this fraction of
  /// the current cost.
  double min_relative_improvement = 1e-4;
  /// Local point ids allowed as centers; empty means every point.
  std::vector<PointId> candidates;
  std::uint64_t seed = 0;
  double beta_min = 0.0;
  /// Optional starting centers (local ids); D-sampling is used otherwise.
  std::vector<PointId> initial;
  /// D-sampling restarts allowed while looking for a beta_min-feasible start.
  std::size_t feasibility_retries = 32;

  void validate() const;
};

struct LocalSearchResult {
  std::vector<PointId> centers;     // local ids into the searched point set
  CenterSet center_set;             // ids of the originating dataset
  Clustering clustering;            // over the searched point set
  std::vector<double> cost_trace;   // initial cost, then one entry per swap
  std::size_t swaps = 0;
  std::size_t iterations = 0;

  double cost() const { return clustering.total_cost; }
};

std::size_t default_max_iterations(std::size_t k, std::size_t n);

/// D-sampling seeding: the first center with probability proportional to
/// weight, each next one proportional to weight * dist(x, chosen). Returns
/// local ids. A nonempty `pool` restricts the draws to those local ids.
/// Throws if fewer than k distinct locations are available.
std::vector<PointId> dsample_init(const WeightedPoints& P, std::size_t k,
                                  std::uint64_t seed, std::span<const PointId> pool = {});
CenterSet dsample_init(const Dataset& X, std::size_t k, std::uint64_t seed);
CenterSet dsample_init(const Dataset& X, const WeightedSample& S, std::size_t k,
                       std::uint64_t seed);

LocalSearchResult local_search(const WeightedPoints& P, const LocalSearchConfig& cfg);
LocalSearchResult local_search(const Dataset& X, const LocalSearchConfig& cfg);
/// Searches on the sample; centers in the result refer to X's point ids.
LocalSearchResult local_search(const Dataset& X, const WeightedSample& S,
                               const LocalSearchConfig& cfg);

/// sum over entries of weight * dist(point, C).
double weighted_cost(const Dataset& X, const WeightedSample& S, const CenterSet& C);

/// Maps local ids of `P` to a center set over the originating dataset.
CenterSet to_source_centers(const WeightedPoints& P, std::span<const PointId> local);

}  // namespace ukm
