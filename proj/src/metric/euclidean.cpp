#include <cmath>

#include "ukm/error.hpp"
#include "ukm/metric.hpp"
#include "ukm/simd.hpp"

namespace ukm {

EuclideanSpace::EuclideanSpace(std::size_t dim,
                               const std::vector<std::vector<double>>& rows)
    : dim_(dim), n_(rows.size()), coords_(dim * rows.size()) {
  require(dim >= 1, "euclidean dimension must be at least 1");
  require(n_ >= 1, "dataset must contain at least one point");
  for (std::size_t i = 0; i < n_; ++i) {
    require(rows[i].size() == dim, "row " + std::to_string(i) + " has " +
                                       std::to_string(rows[i].size()) +
                                       " columns, expected " + std::to_string(dim));
    for (std::size_t d = 0; d < dim; ++d) {
      require(std::isfinite(rows[i][d]), "non-finite coordinate in row " + std::to_string(i));
      coords_[d * n_ + i] = rows[i][d];
    }
  }
}

EuclideanSpace::EuclideanSpace(std::size_t dim, std::size_t n,
                               std::vector<double> coords)
    : dim_(dim), n_(n), coords_(std::move(coords)) {
  require(dim >= 1, "euclidean dimension must be at least 1");
  require(n >= 1, "dataset must contain at least one point");
  require(coords_.size() == dim * n, "coordinate buffer has wrong size");
  for (double c : coords_) require(std::isfinite(c), "non-finite coordinate");
}

std::vector<double> EuclideanSpace::point(PointId i) const {
  check_index(i);
  std::vector<double> p(dim_);
  for (std::size_t d = 0; d < dim_; ++d) p[d] = coords_[d * n_ + i];
  return p;
}

// Same operation order as the euclid_row kernel, so a single distance always
// matches the corresponding row entry bit for bit.
double EuclideanSpace::distance(PointId a, PointId b) const {
  check_index(a);
  check_index(b);
  double acc = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    const double diff = coords_[d * n_ + b] - coords_[d * n_ + a];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

double EuclideanSpace::distance(std::span<const double> coords, PointId b) const {
  check_index(b);
  require(coords.size() == dim_, "query dimension mismatch");
  double acc = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    const double diff = coords_[d * n_ + b] - coords[d];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

void EuclideanSpace::row(PointId src, std::span<double> out) const {
  const std::vector<double> q = point(src);
  row(q, out);
}

void EuclideanSpace::row(std::span<const double> coords,
                         std::span<double> out) const {
  require(coords.size() == dim_, "query dimension mismatch");
  require(out.size() == n_, "row: output size mismatch");
  simd::kernels().euclid_row(coords_.data(), n_, n_, dim_, coords.data(),
                             out.data());
}

void EuclideanSpace::distances(PointId src, std::span<const PointId> targets,
                               std::span<double> out) const {
  require(out.size() == targets.size(), "distances: output size mismatch");
  for (std::size_t i = 0; i < targets.size(); ++i) out[i] = distance(src, targets[i]);
}

std::shared_ptr<const MetricBackend> EuclideanSpace::restrict_to(
    std::span<const PointId> ids) const {
  require(!ids.empty(), "cannot restrict to an empty point list");
  const std::size_t m = ids.size();
  std::vector<double> sub(dim_ * m);
  for (std::size_t i = 0; i < m; ++i) {
    check_index(ids[i]);
    for (std::size_t d = 0; d < dim_; ++d) sub[d * m + i] = coords_[d * n_ + ids[i]];
  }
  return std::make_shared<EuclideanSpace>(dim_, m, std::move(sub));
}

}  // namespace ukm
