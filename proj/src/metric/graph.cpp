#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "ukm/error.hpp"
#include "ukm/metric.hpp"

namespace ukm {

GraphSpace::GraphSpace(std::size_t num_vertices, const std::vector<Edge>& edges,
                       std::size_t cache_rows)
    : n_(num_vertices),
      num_edges_(edges.size()),
      edge_list_(edges),
      cache_rows_(std::max<std::size_t>(cache_rows, 1)) {
  require(n_ >= 1, "graph must have at least one vertex");
  std::vector<std::size_t> degree(n_ + 1, 0);
  for (const Edge& e : edges) {
    require(e.u < n_ && e.v < n_, "edge endpoint out of range");
    require(std::isfinite(e.w) && e.w > 0.0, "edge weights must be positive and finite");
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  targets_.resize(offsets_[n_]);
  weights_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    targets_[fill[e.u]] = e.v;
    weights_[fill[e.u]++] = e.w;
    targets_[fill[e.v]] = e.u;
    weights_[fill[e.v]++] = e.w;
  }

  // Connectivity, so every pairwise distance is finite.
  std::vector<PointId> parent(n_);
  std::iota(parent.begin(), parent.end(), PointId{0});
  std::function<PointId(PointId)> find = [&](PointId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n_;
  for (const Edge& e : edges) {
    const PointId a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) {
    fail(ErrorCode::disconnected, "graph is disconnected (" +
                                      std::to_string(components) + " components)");
  }
}

std::vector<double> GraphSpace::dijkstra(PointId src) const {
  std::vector<double> dist(n_, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
      const double nd = d + weights_[e];
      if (nd < dist[targets_[e]]) {
        dist[targets_[e]] = nd;
        heap.emplace(nd, targets_[e]);
      }
    }
  }
  return dist;
}

std::shared_ptr<const std::vector<double>> GraphSpace::shortest_paths(
    PointId src) const {
  check_index(src);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(src); it != cache_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.second);
      ++hits_;
      return it->second.first;
    }
    ++misses_;
  }
  // Computed outside the lock; a concurrent miss on the same source computes
  // the same row twice and the second insert is dropped.
  auto row = std::make_shared<const std::vector<double>>(dijkstra(src));
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(src); it != cache_.end()) return it->second.first;
  lru_.push_front(src);
  cache_.emplace(src, std::make_pair(row, lru_.begin()));
  while (cache_.size() > cache_rows_) {
    cache_.erase(lru_.back());
    lru_.pop_back();
  }
  return row;
}

double GraphSpace::distance(PointId a, PointId b) const {
  check_index(a);
  check_index(b);
  if (a == b) return 0.0;
  // Path sums depend on traversal direction in the last bits; fixing the
  // source to the smaller id keeps distance() exactly symmetric.
  const double d = (*shortest_paths(std::min(a, b)))[std::max(a, b)];
  if (!std::isfinite(d)) fail(ErrorCode::disconnected, "vertices are disconnected");
  return d;
}

void GraphSpace::row(PointId src, std::span<double> out) const {
  require(out.size() == n_, "row: output size mismatch");
  const auto r = shortest_paths(src);
  std::copy(r->begin(), r->end(), out.begin());
}

void GraphSpace::distances(PointId src, std::span<const PointId> targets,
                           std::span<double> out) const {
  require(out.size() == targets.size(), "distances: output size mismatch");
  const auto r = shortest_paths(src);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_index(targets[i]);
    out[i] = (*r)[targets[i]];
  }
}

std::size_t GraphSpace::cache_hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t GraphSpace::cache_misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

}  // namespace ukm
