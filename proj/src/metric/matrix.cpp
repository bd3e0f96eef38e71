#include <cmath>

#include "ukm/error.hpp"
#include "ukm/metric.hpp"

namespace ukm {

MatrixSpace::MatrixSpace(std::size_t n, std::vector<double> table,
                         bool check_triangle)
    : n_(n), table_(std::move(table)) {
  require(n_ >= 1, "distance matrix must have at least one point");
  require(table_.size() == n_ * n_, "distance matrix must be square");
  for (std::size_t i = 0; i < n_; ++i) {
    require(table_[i * n_ + i] == 0.0, "distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = table_[i * n_ + j];
      require(std::isfinite(d) && d >= 0.0,
              "distance matrix entries must be finite and nonnegative");
      require(d == table_[j * n_ + i], "distance matrix must be symmetric (entry " +
                                           std::to_string(i) + "," +
                                           std::to_string(j) + ")");
    }
  }
  if (!check_triangle) return;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double direct = table_[i * n_ + j];
        const double via = table_[i * n_ + k] + table_[k * n_ + j];
        require(direct <= via + 1e-9 * std::max(direct, via),
                "triangle inequality violated for (" + std::to_string(i) + "," +
                    std::to_string(j) + ") via " + std::to_string(k));
      }
    }
  }
}

double MatrixSpace::distance(PointId a, PointId b) const {
  check_index(a);
  check_index(b);
  return table_[static_cast<std::size_t>(a) * n_ + b];
}

void MatrixSpace::row(PointId src, std::span<double> out) const {
  check_index(src);
  require(out.size() == n_, "row: output size mismatch");
  const auto r = table_row(src);
  std::copy(r.begin(), r.end(), out.begin());
}

void MatrixSpace::distances(PointId src, std::span<const PointId> targets,
                            std::span<double> out) const {
  check_index(src);
  require(out.size() == targets.size(), "distances: output size mismatch");
  const auto r = table_row(src);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_index(targets[i]);
    out[i] = r[targets[i]];
  }
}

std::shared_ptr<const MetricBackend> MatrixSpace::restrict_to(
    std::span<const PointId> ids) const {
  require(!ids.empty(), "cannot restrict to an empty point list");
  const std::size_t m = ids.size();
  std::vector<double> sub(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    check_index(ids[i]);
    for (std::size_t j = 0; j < m; ++j) sub[i * m + j] = table_[ids[i] * n_ + ids[j]];
  }
  return std::make_shared<MatrixSpace>(m, std::move(sub));
}

}  // namespace ukm
