#pragma once

// Slow, independent reference computations used as test oracles. None of
// these share code paths with the library kernels.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "ukm/core.hpp"
#include "ukm/metric.hpp"

namespace ukm::testing {

inline Dataset line(const std::vector<double>& values) {
  return Dataset(std::make_shared<EuclideanSpace>(1, values.size(), values));
}

inline Dataset points(std::size_t dim, const std::vector<std::vector<double>>& rows) {
  return Dataset(std::make_shared<EuclideanSpace>(dim, rows));
}

inline std::vector<std::vector<double>> floyd_warshall(std::size_t n,
                                                       const std::vector<Edge>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
      }
    }
  }
  return d;
}

// Sum over points of the pairwise distance to the nearest listed center.
inline double naive_cost(const MetricBackend& X, const std::vector<PointId>& centers,
                         const std::vector<double>* weights = nullptr) {
  double total = 0.0;
  for (PointId x = 0; x < X.size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (PointId c : centers) best = std::min(best, X.distance(x, c));
    total += (weights ? (*weights)[x] : 1.0) * best;
  }
  return total;
}

// Nearest-center cluster sizes with lowest-position tie breaking.
inline std::vector<std::size_t> naive_sizes(const MetricBackend& X,
                                            const std::vector<PointId>& centers) {
  std::vector<std::size_t> sizes(centers.size(), 0);
  for (PointId x = 0; x < X.size(); ++x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < centers.size(); ++i) {
      if (X.distance(x, centers[i]) < X.distance(x, centers[best])) best = i;
    }
    ++sizes[best];
  }
  return sizes;
}

// Calls visit for every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<PointId>&)>& visit) {
  if (k > n) return;
  std::vector<PointId> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<PointId>(i);
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Minimum cost over all k-subsets of points (duplicates allowed as centers).
inline double naive_opt(const MetricBackend& X, std::size_t k,
                        const std::vector<double>* weights = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for_each_subset(X.size(), k, [&](const std::vector<PointId>& c) {
    best = std::min(best, naive_cost(X, c, weights));
  });
  return best;
}

inline std::vector<double> random_integers(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace ukm::testing
