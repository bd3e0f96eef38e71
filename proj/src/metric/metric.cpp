#include <cmath>

#include "ukm/error.hpp"
#include "ukm/metric.hpp"

namespace ukm {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::graph: return "graph";
    case MetricKind::matrix: return "matrix";
  }
  return "unknown";
}

void MetricBackend::check_index(PointId id) const {
  if (id >= size()) {
    fail(ErrorCode::invalid_input, "point index " + std::to_string(id) +
                                       " out of range for " +
                                       std::to_string(size()) + " points");
  }
}

void MetricBackend::row(std::span<const double>, std::span<double>) const {
  fail(ErrorCode::invalid_input,
       "free coordinates are only valid for a euclidean backend");
}

double MetricBackend::distance(std::span<const double>, PointId) const {
  fail(ErrorCode::invalid_input,
       "free coordinates are only valid for a euclidean backend");
}

void MetricBackend::distances(PointId src, std::span<const PointId> targets,
                              std::span<double> out) const {
  require(out.size() == targets.size(), "distances: output size mismatch");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out[i] = distance(src, targets[i]);
  }
}

std::shared_ptr<const MetricBackend> MetricBackend::restrict_to(
    std::span<const PointId> ids) const {
  for (PointId id : ids) check_index(id);
  return std::make_shared<SubsetSpace>(shared_from_this(),
                                       std::vector<PointId>(ids.begin(), ids.end()));
}

// ---------------------------------------------------------------------------

SubsetSpace::SubsetSpace(std::shared_ptr<const MetricBackend> parent,
                         std::vector<PointId> ids)
    : parent_(std::move(parent)), ids_(std::move(ids)) {}

double SubsetSpace::distance(PointId a, PointId b) const {
  check_index(a);
  check_index(b);
  return parent_->distance(ids_[a], ids_[b]);
}

void SubsetSpace::row(PointId src, std::span<double> out) const {
  check_index(src);
  require(out.size() == ids_.size(), "row: output size mismatch");
  parent_->distances(ids_[src], ids_, out);
}

// ---------------------------------------------------------------------------

void validate(const MetricBackend& backend, const PointRef& ref) {
  if (ref.is_index()) {
    backend.check_index(ref.id());
    return;
  }
  const auto* space = dynamic_cast<const EuclideanSpace*>(&backend);
  if (space == nullptr) {
    fail(ErrorCode::invalid_input,
         "free coordinates are only valid for a euclidean backend");
  }
  if (ref.coords().size() != space->dimension()) {
    fail(ErrorCode::invalid_input, "center has " +
                                       std::to_string(ref.coords().size()) +
                                       " coordinates, backend dimension is " +
                                       std::to_string(space->dimension()));
  }
  for (double c : ref.coords()) require(std::isfinite(c), "non-finite center coordinate");
}

double distance(const MetricBackend& backend, const PointRef& a,
                const PointRef& b) {
  validate(backend, a);
  validate(backend, b);
  if (a.is_index() && b.is_index()) return backend.distance(a.id(), b.id());
  if (a.is_index()) return backend.distance(b.coords(), a.id());
  if (b.is_index()) return backend.distance(a.coords(), b.id());
  double acc = 0.0;
  for (std::size_t d = 0; d < a.coords().size(); ++d) {
    const double diff = b.coords()[d] - a.coords()[d];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

void distance_row(const MetricBackend& backend, const PointRef& src,
                  std::span<double> out) {
  validate(backend, src);
  if (src.is_index()) {
    backend.row(src.id(), out);
  } else {
    backend.row(src.coords(), out);
  }
}

}  // namespace ukm
