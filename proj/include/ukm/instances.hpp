#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ukm/core.hpp"

namespace ukm {

enum class InstanceFamily {
  hidden_cluster,    // 2-Median: a small cluster at t in {1, 2}, the rest at 0
  far_group,         // 3-Median: groups at 0, 1, w and a small group at w + f
  gaussian_mixture,  // k equal-size clusters on a grid
  graph_random,      // connected random weighted graph
};

std::string to_string(InstanceFamily family);
InstanceFamily parse_instance_family(const std::string& name);

struct InstanceDescriptor {
  InstanceFamily family;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  /// Human-readable record of any rounding applied to the parameters.
  std::string notes;
};

struct Instance {
  Dataset data;
  InstanceDescriptor descriptor;
  /// Points of the distinguished group (the hidden cluster or the far group).
  std::vector<PointId> marked;
};

/// n points on the line: floor(beta * n / 2) of them (a random index set) at
/// t, the others at 0. Requires n >= 10 / beta and t in {1, 2}. The optimal
/// 2-Median cost is 0.
Instance gen_hidden_cluster(std::size_t n, double beta, int t, std::uint64_t seed);

/// n points at each of 0, 1 and w, plus floor(n / (1.01 f)) points at w + f
/// (rounded down so the optimum {0, 1, w} keeps cost <= n / 1.01). Requires
/// 3 <= f < n / 2 and w >= 100 n. Point order is shuffled by the seed.
Instance gen_far_group(std::size_t n, std::size_t f, double w, std::uint64_t seed);

/// k clusters of exactly per_cluster points; cluster centers on an integer
/// grid scaled by `separation`, Gaussian noise of standard deviation `spread`
/// per coordinate.
Instance gen_gaussian_mixture(std::size_t k, std::size_t per_cluster, std::size_t dim,
                              double separation, double spread, std::uint64_t seed);

/// Random spanning tree plus extra distinct edges up to `num_edges`. Weights
/// are drawn uniformly from a dyadic grid in (0, wmax] (2^20 or more steps),
/// which keeps every path sum exact in double precision.
Instance gen_graph_random(std::size_t num_vertices, std::size_t num_edges, double wmax,
                          std::uint64_t seed);

/// Writes the dataset in the format the loaders read back: CSV points for
/// euclidean instances, an edge list for graphs.
void write_instance(std::ostream& out, const Instance& instance);

}  // namespace ukm
