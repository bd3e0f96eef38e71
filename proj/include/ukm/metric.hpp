#pragma once

// Distance oracles over Euclidean coordinates, weighted graphs (shortest
// paths) and explicit distance matrices. All backends expose the same
// row-oriented interface: the distances from one source to every point, which
// is what clustering cost, local search and the exact oracles consume.

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ukm {

using PointId = std::uint32_t;

enum class MetricKind { euclidean, graph, matrix };

std::string to_string(MetricKind kind);

/// A center or query location: a point index, or free coordinates (only valid
/// against a Euclidean backend).
class PointRef {
 public:
  static PointRef index(PointId id) { return PointRef(id); }
  static PointRef coordinates(std::vector<double> coords) {
    return PointRef(std::move(coords));
  }

  bool is_index() const noexcept { return std::holds_alternative<PointId>(v_); }
  PointId id() const { return std::get<PointId>(v_); }
  std::span<const double> coords() const {
    return std::get<std::vector<double>>(v_);
  }

  friend bool operator==(const PointRef&, const PointRef&) = default;

 private:
  explicit PointRef(PointId id) : v_(id) {}
  explicit PointRef(std::vector<double> c) : v_(std::move(c)) {}

  std::variant<PointId, std::vector<double>> v_;
};

class MetricBackend : public std::enable_shared_from_this<MetricBackend> {
 public:
  virtual ~MetricBackend() = default;

  virtual MetricKind kind() const noexcept = 0;
  virtual std::size_t size() const noexcept = 0;

  virtual double distance(PointId a, PointId b) const = 0;

  /// Distances from `src` to every point; `out.size()` must equal size().
  virtual void row(PointId src, std::span<double> out) const = 0;

  /// Free-coordinate rows. Only the Euclidean backend supports them.
  virtual void row(std::span<const double> coords, std::span<double> out) const;
  virtual double distance(std::span<const double> coords, PointId b) const;

  /// Distances from `src` to the listed targets.
  virtual void distances(PointId src, std::span<const PointId> targets,
                         std::span<double> out) const;

  /// A backend over the listed points, where local point i is `ids[i]` here.
  /// Ids may repeat.
  virtual std::shared_ptr<const MetricBackend> restrict_to(
      std::span<const PointId> ids) const;

  void check_index(PointId id) const;
};

// ---------------------------------------------------------------------------

class EuclideanSpace final : public MetricBackend {
 public:
  /// `rows` holds one point per entry, each of length `dim`.
  EuclideanSpace(std::size_t dim, const std::vector<std::vector<double>>& rows);
  /// Dimension-major storage: `coords[d * n + i]`.
  EuclideanSpace(std::size_t dim, std::size_t n, std::vector<double> coords);

  MetricKind kind() const noexcept override { return MetricKind::euclidean; }
  std::size_t size() const noexcept override { return n_; }
  std::size_t dimension() const noexcept { return dim_; }

  double coordinate(PointId i, std::size_t d) const { return coords_[d * n_ + i]; }
  std::vector<double> point(PointId i) const;

  double distance(PointId a, PointId b) const override;
  double distance(std::span<const double> coords, PointId b) const override;
  void row(PointId src, std::span<double> out) const override;
  void row(std::span<const double> coords, std::span<double> out) const override;
  void distances(PointId src, std::span<const PointId> targets,
                 std::span<double> out) const override;
  std::shared_ptr<const MetricBackend> restrict_to(
      std::span<const PointId> ids) const override;

 private:
  std::size_t dim_;
  std::size_t n_;
  std::vector<double> coords_;
};

// ---------------------------------------------------------------------------

struct Edge {
  PointId u;
  PointId v;
  double w;
};

/// Shortest-path metric of an undirected graph with positive edge weights.
/// Rows are computed on demand by Dijkstra and kept in a bounded LRU cache
/// keyed by source. Safe for concurrent readers.
class GraphSpace final : public MetricBackend {
 public:
  GraphSpace(std::size_t num_vertices, const std::vector<Edge>& edges,
             std::size_t cache_rows = 256);

  MetricKind kind() const noexcept override { return MetricKind::graph; }
  std::size_t size() const noexcept override { return n_; }
  std::size_t num_edges() const noexcept { return num_edges_; }
  const std::vector<Edge>& edges() const noexcept { return edge_list_; }

  double distance(PointId a, PointId b) const override;
  void row(PointId src, std::span<double> out) const override;
  void distances(PointId src, std::span<const PointId> targets,
                 std::span<double> out) const override;

  /// Cached shortest-path row from `src`.
  std::shared_ptr<const std::vector<double>> shortest_paths(PointId src) const;

  std::size_t cache_hits() const;
  std::size_t cache_misses() const;

 private:
  std::vector<double> dijkstra(PointId src) const;

  std::size_t n_;
  std::size_t num_edges_;
  std::vector<Edge> edge_list_;
  std::vector<std::size_t> offsets_;
  std::vector<PointId> targets_;
  std::vector<double> weights_;

  using RowPtr = std::shared_ptr<const std::vector<double>>;
  std::size_t cache_rows_;
  mutable std::mutex mu_;
  mutable std::list<PointId> lru_;
  mutable std::unordered_map<PointId, std::pair<RowPtr, std::list<PointId>::iterator>> cache_;
  mutable std::size_t hits_ = 0;
  mutable std::size_t misses_ = 0;
};

// ---------------------------------------------------------------------------

class MatrixSpace final : public MetricBackend {
 public:
  /// Row-major n x n table. Checks nonnegativity, zero diagonal and symmetry;
  /// optionally the triangle inequality (relative tolerance 1e-9).
  MatrixSpace(std::size_t n, std::vector<double> table,
              bool check_triangle = false);

  MetricKind kind() const noexcept override { return MetricKind::matrix; }
  std::size_t size() const noexcept override { return n_; }

  double distance(PointId a, PointId b) const override;
  void row(PointId src, std::span<double> out) const override;
  void distances(PointId src, std::span<const PointId> targets,
                 std::span<double> out) const override;
  std::shared_ptr<const MetricBackend> restrict_to(
      std::span<const PointId> ids) const override;

  std::span<const double> table_row(PointId src) const {
    return {table_.data() + static_cast<std::size_t>(src) * n_, n_};
  }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

// ---------------------------------------------------------------------------

/// View over a subset of another backend's points (used for graphs, where a
/// compact copy is not possible).
class SubsetSpace final : public MetricBackend {
 public:
  SubsetSpace(std::shared_ptr<const MetricBackend> parent,
              std::vector<PointId> ids);

  MetricKind kind() const noexcept override { return parent_->kind(); }
  std::size_t size() const noexcept override { return ids_.size(); }

  double distance(PointId a, PointId b) const override;
  void row(PointId src, std::span<double> out) const override;

 private:
  std::shared_ptr<const MetricBackend> parent_;
  std::vector<PointId> ids_;
};

// ---------------------------------------------------------------------------

/// Throws if `ref` cannot be used against `backend`.
void validate(const MetricBackend& backend, const PointRef& ref);

double distance(const MetricBackend& backend, const PointRef& a,
                const PointRef& b);

/// Distances from `src` to every point of `backend`.
void distance_row(const MetricBackend& backend, const PointRef& src,
                  std::span<double> out);

}  // namespace ukm
