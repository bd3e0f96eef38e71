#include <algorithm>
#include <limits>

#include "ukm/core.hpp"
#include "ukm/error.hpp"
#include "ukm/simd.hpp"

namespace ukm {

Dataset::Dataset(std::shared_ptr<const MetricBackend> backend)
    : backend_(std::move(backend)) {
  require(backend_ != nullptr, "dataset requires a backend");
  require(backend_->size() >= 1, "dataset must contain at least one point");
}

CenterSet CenterSet::from_ids(std::span<const PointId> ids) {
  std::vector<PointRef> refs;
  refs.reserve(ids.size());
  for (PointId id : ids) refs.push_back(PointRef::index(id));
  return CenterSet(std::move(refs));
}

std::vector<PointId> CenterSet::ids() const {
  std::vector<PointId> out;
  out.reserve(centers_.size());
  for (const auto& c : centers_) {
    require(c.is_index(), "center set contains free coordinates");
    out.push_back(c.id());
  }
  return out;
}

void CenterSet::validate(const MetricBackend& backend) const {
  require(!centers_.empty(), "center set is empty");
  for (const auto& c : centers_) ukm::validate(backend, c);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    for (std::size_t j = i + 1; j < centers_.size(); ++j) {
      if (ukm::distance(backend, centers_[i], centers_[j]) == 0.0) {
        fail(ErrorCode::invalid_input, "duplicate centers at positions " +
                                           std::to_string(i) + " and " +
                                           std::to_string(j));
      }
    }
  }
}

WeightedPoints WeightedPoints::from_dataset(const Dataset& X) {
  WeightedPoints p;
  p.space = X.backend();
  p.weights.assign(X.size(), 1.0);
  p.source_ids.resize(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) p.source_ids[i] = static_cast<PointId>(i);
  return p;
}

double WeightedPoints::total_weight() const {
  return simd::kernels().sum(weights.data(), weights.size());
}

NearestTable nearest_table(const MetricBackend& backend, const CenterSet& C) {
  require(!C.empty(), "center set is empty");
  const std::size_t n = backend.size();
  const auto k = static_cast<std::uint32_t>(C.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  NearestTable t{std::vector<double>(n, inf), std::vector<double>(n, inf),
                 std::vector<std::uint32_t>(n, k), std::vector<std::uint32_t>(n, k)};
  std::vector<double> row(n);
  const auto& kern = simd::kernels();
  for (std::uint32_t pos = 0; pos < k; ++pos) {
    distance_row(backend, C[pos], row);
    kern.nearest_update(row.data(), n, pos, t.d1.data(), t.a1.data(),
                        t.d2.data(), t.a2.data());
  }
  return t;
}

NearestCenter distance_to_set(const MetricBackend& backend, const PointRef& x,
                              const CenterSet& C) {
  require(!C.empty(), "center set is empty");
  NearestCenter best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t pos = 0; pos < C.size(); ++pos) {
    const double d = distance(backend, x, C[pos]);
    if (d < best.distance) best = {d, pos};
  }
  return best;
}

double cost(const Dataset& X, const CenterSet& C) {
  C.validate(X.metric());
  const auto t = nearest_table(X.metric(), C);
  return simd::kernels().sum(t.d1.data(), t.d1.size());
}

double cost(const WeightedPoints& P, const CenterSet& C) {
  C.validate(*P.space);
  const auto t = nearest_table(*P.space, C);
  return simd::kernels().dot(t.d1.data(), P.weights.data(), t.d1.size());
}

namespace {

Clustering build_clustering(const NearestTable& t, std::size_t k,
                            std::span<const double> weights, double total_cost) {
  Clustering c;
  c.assignment = t.a1;
  c.cluster_sizes.assign(k, 0);
  c.cluster_weights.assign(k, 0.0);
  for (std::size_t i = 0; i < t.a1.size(); ++i) {
    ++c.cluster_sizes[t.a1[i]];
    c.cluster_weights[t.a1[i]] += weights.empty() ? 1.0 : weights[i];
  }
  c.total_cost = total_cost;
  return c;
}

}  // namespace

Clustering cluster(const Dataset& X, const CenterSet& C) {
  C.validate(X.metric());
  const auto t = nearest_table(X.metric(), C);
  return build_clustering(t, C.size(), {},
                          simd::kernels().sum(t.d1.data(), t.d1.size()));
}

Clustering cluster(const WeightedPoints& P, const CenterSet& C) {
  C.validate(*P.space);
  const auto t = nearest_table(*P.space, C);
  return build_clustering(
      t, C.size(), P.weights,
      simd::kernels().dot(t.d1.data(), P.weights.data(), t.d1.size()));
}

Balancedness balancedness_of(const Clustering& clustering, double total_weight) {
  require(total_weight > 0.0, "balancedness needs positive total weight");
  const auto& w = clustering.cluster_weights;
  require(!w.empty(), "clustering has no clusters");
  const double smallest = *std::min_element(w.begin(), w.end());
  if (smallest <= 0.0) return {0.0, true};
  return {smallest * static_cast<double>(w.size()) / total_weight, false};
}

Balancedness solution_balancedness(const Dataset& X, const CenterSet& C) {
  return balancedness_of(cluster(X, C), static_cast<double>(X.size()));
}

Balancedness solution_balancedness(const WeightedPoints& P, const CenterSet& C) {
  return balancedness_of(cluster(P, C), P.total_weight());
}

Balancedness dataset_balancedness(const Dataset& X, std::size_t k,
                                  const CenterSet& opt) {
  require(opt.size() == k, "optimal solution must have exactly k centers");
  return solution_balancedness(X, opt);
}

std::optional<double> relative_error(double cost_value, double baseline_cost) {
  if (!(baseline_cost > 0.0)) return std::nullopt;
  return (cost_value - baseline_cost) / baseline_cost;
}

std::optional<double> relative_error(const Dataset& X, const CenterSet& C,
                                     const CenterSet& C_apx) {
  return relative_error(cost(X, C), cost(X, C_apx));
}

}  // namespace ukm
