#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ukm/metric.hpp"

namespace ukm {

/// An n-point dataset: points 0..n-1 of a metric backend.
class Dataset {
 public:
  explicit Dataset(std::shared_ptr<const MetricBackend> backend);

  std::size_t size() const noexcept { return backend_->size(); }
  const MetricBackend& metric() const noexcept { return *backend_; }
  const std::shared_ptr<const MetricBackend>& backend() const noexcept {
    return backend_;
  }

 private:
  std::shared_ptr<const MetricBackend> backend_;
};

/// Ordered list of k centers. Position in the list breaks nearest-center ties
/// (lowest position wins).
class CenterSet {
 public:
  CenterSet() = default;
  explicit CenterSet(std::vector<PointRef> centers) : centers_(std::move(centers)) {}

  static CenterSet from_ids(std::span<const PointId> ids);

  std::size_t size() const noexcept { return centers_.size(); }
  bool empty() const noexcept { return centers_.empty(); }
  const PointRef& operator[](std::size_t i) const { return centers_[i]; }
  auto begin() const noexcept { return centers_.begin(); }
  auto end() const noexcept { return centers_.end(); }

  /// Point ids of all centers; throws if any center is a free coordinate.
  std::vector<PointId> ids() const;

  /// Throws unless k >= 1, every center is valid for `backend`, and no two
  /// centers share a location.
  void validate(const MetricBackend& backend) const;

 private:
  std::vector<PointRef> centers_;
};

/// A weighted point collection with its own compact backend. `source_ids`
/// maps local point i back to the dataset it was drawn from.
struct WeightedPoints {
  std::shared_ptr<const MetricBackend> space;
  std::vector<double> weights;
  std::vector<PointId> source_ids;

  static WeightedPoints from_dataset(const Dataset& X);

  std::size_t size() const noexcept { return weights.size(); }
  double total_weight() const;
};

/// Nearest and second-nearest center per point, positions into the center
/// list. Second-nearest entries are +inf / k when k == 1.
struct NearestTable {
  std::vector<double> d1, d2;
  std::vector<std::uint32_t> a1, a2;
};

NearestTable nearest_table(const MetricBackend& backend, const CenterSet& C);

struct Clustering {
  std::vector<std::uint32_t> assignment;
  std::vector<std::size_t> cluster_sizes;
  std::vector<double> cluster_weights;  // equals cluster_sizes for unit weights
  double total_cost = 0.0;
};

/// Returned when balancedness is measured on a solution with an empty cluster.
struct Balancedness {
  double value = 0.0;
  bool empty_cluster = false;
};

// Distance from x to its nearest center, and that center's position.
struct NearestCenter {
  double distance;
  std::size_t position;
};

NearestCenter distance_to_set(const MetricBackend& backend, const PointRef& x,
                              const CenterSet& C);

double cost(const Dataset& X, const CenterSet& C);
double cost(const WeightedPoints& P, const CenterSet& C);

Clustering cluster(const Dataset& X, const CenterSet& C);
Clustering cluster(const WeightedPoints& P, const CenterSet& C);

/// min_i |X_i| * k / n, reported raw (may exceed 1 when k does not divide n).
Balancedness solution_balancedness(const Dataset& X, const CenterSet& C);
/// Weighted form: cluster weight * k / total weight.
Balancedness solution_balancedness(const WeightedPoints& P, const CenterSet& C);
Balancedness balancedness_of(const Clustering& clustering, double total_weight);

/// Balancedness of X measured on the supplied (optimal or proxy) solution.
Balancedness dataset_balancedness(const Dataset& X, std::size_t k,
                                  const CenterSet& opt);

/// (cost - baseline) / baseline; empty when the baseline cost is zero.
std::optional<double> relative_error(double cost_value, double baseline_cost);
std::optional<double> relative_error(const Dataset& X, const CenterSet& C,
                                     const CenterSet& C_apx);

}  // namespace ukm
