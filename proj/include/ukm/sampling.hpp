#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ukm/core.hpp"

namespace ukm {

enum class SampleOrigin { uniform, coreset };

struct SampleEntry {
  PointId id;
  double weight;
};

/// Draws from a dataset, in draw order. Uniform samples carry weight 1 per
/// draw; repeated ids are separate entries.
struct WeightedSample {
  std::vector<SampleEntry> entries;
  SampleOrigin origin = SampleOrigin::uniform;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

/// m i.i.d. draws with replacement, each id with probability 1/n.
WeightedSample uniform_sample(const Dataset& X, std::size_t m, std::uint64_t seed);

/// Collapses repeated ids (summing weights) into a compact weighted point set
/// ordered by ascending id.
WeightedPoints aggregate(const Dataset& X, const WeightedSample& S);

/// Same, but every entry counts 1 regardless of its weight (the unweighted
/// multiset view of S).
WeightedPoints aggregate_unweighted(const Dataset& X, const WeightedSample& S);

/// CSV rows `point_id,weight` with a header line.
void write_sample_csv(std::ostream& out, const WeightedSample& S);
WeightedSample read_sample_csv(std::istream& in, SampleOrigin origin);

// ---------------------------------------------------------------------------

enum class MetricClass { euclidean, doubling, finite, treewidth };

MetricClass parse_metric_class(const std::string& name);

struct SampleSizeSpec {
  MetricClass metric_class = MetricClass::euclidean;
  std::size_t k = 1;
  double beta = 1.0;
  double epsilon = 0.25;
  /// ddim, |X| or tw depending on the class; unused for euclidean.
  double class_parameter = 1.0;
  double multiplier = 1.0;
};

/// Uniform sample size guaranteeing the weak-coreset property, up to the
/// constant `multiplier`. Logarithms are base 2 and each log factor is
/// clamped below at 1:
///   euclidean  k^2/(b e^3) * log^2(k/(b e)) * log^2(1/e)
///   doubling   k^2/(b e^2) * ddim * log(k/(b e))
///   finite     k^2/(b e^2) * log|X| * log(k/(b e))
///   treewidth  k^2/(b e^2) * tw * log(k/(b e))
std::size_t sample_size(const SampleSizeSpec& spec);

/// The unrounded value behind sample_size().
double sample_size_real(const SampleSizeSpec& spec);

}  // namespace ukm
