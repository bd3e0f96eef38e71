#include <algorithm>
#include <limits>
#include <numeric>

#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

ExactResult dp_1d_kmedian(const WeightedPoints& P, std::size_t k) {
  require(k >= 1, "k must be at least 1");
  const auto* line = dynamic_cast<const EuclideanSpace*>(P.space.get());
  require(line != nullptr && line->dimension() == 1,
          "dp_1d_kmedian requires one-dimensional euclidean input");

  // Sorted distinct values; the representative of a value is its lowest id.
  const std::size_t n = P.size();
  std::vector<PointId> order(n);
  std::iota(order.begin(), order.end(), PointId{0});
  std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    return line->coordinate(a, 0) < line->coordinate(b, 0);
  });
  std::vector<double> x, w;
  std::vector<PointId> rep;
  for (PointId i : order) {
    const double v = line->coordinate(i, 0);
    if (!x.empty() && x.back() == v) {
      w.back() += P.weights[i];
      rep.back() = std::min(rep.back(), i);
    } else {
      x.push_back(v);
      w.push_back(P.weights[i]);
      rep.push_back(i);
    }
  }
  const std::size_t L = x.size();

  ExactResult result;
  result.subsets_evaluated = 0;
  if (k >= L) {
    result.centers = to_source_centers(P, rep);
    result.cost = 0.0;
    result.balancedness = balancedness_of(cluster(P, CenterSet::from_ids(rep)), P.total_weight());
    return result;
  }

  std::vector<double> W(L + 1, 0.0), WX(L + 1, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    W[i + 1] = W[i] + w[i];
    WX[i + 1] = WX[i] + w[i] * x[i];
  }
  // seg[i][j]: cost of values i..j served by their weighted median, which is
  // the first index whose cumulative weight reaches half the segment weight.
  std::vector<double> seg(L * L, 0.0);
  std::vector<std::size_t> med(L * L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    std::size_t t = i;
    for (std::size_t j = i; j < L; ++j) {
      const double half = (W[j + 1] - W[i]) / 2.0;
      while (W[t + 1] - W[i] < half) ++t;
      const double left = x[t] * (W[t + 1] - W[i]) - (WX[t + 1] - WX[i]);
      const double right = (WX[j + 1] - WX[t + 1]) - x[t] * (W[j + 1] - W[t + 1]);
      seg[i * L + j] = left + right;
      med[i * L + j] = t;
    }
  }

  // best[c][j]: optimal cost of the first j values with c segments.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(L + 1, inf));
  std::vector<std::vector<std::size_t>> cut(k + 1, std::vector<std::size_t>(L + 1, 0));
  best[0][0] = 0.0;
  for (std::size_t c = 1; c <= k; ++c) {
    for (std::size_t j = c; j <= L; ++j) {
      for (std::size_t p = c - 1; p < j; ++p) {
        if (best[c - 1][p] == inf) continue;
        const double v = best[c - 1][p] + seg[p * L + (j - 1)];
        if (v < best[c][j]) {
          best[c][j] = v;
          cut[c][j] = p;
        }
      }
    }
  }

  std::vector<PointId> centers(k);
  std::size_t j = L;
  for (std::size_t c = k; c >= 1; --c) {
    const std::size_t p = cut[c][j];
    centers[c - 1] = rep[med[p * L + (j - 1)]];
    j = p;
  }
  const auto local_set = CenterSet::from_ids(centers);
  const auto cl = cluster(P, local_set);
  result.centers = to_source_centers(P, centers);
  result.cost = cl.total_cost;
  result.balancedness = balancedness_of(cl, P.total_weight());
  result.subsets_evaluated = static_cast<double>(L) * static_cast<double>(L) * static_cast<double>(k);
  return result;
}

ExactResult dp_1d_kmedian(const Dataset& X, std::size_t k) {
  return dp_1d_kmedian(WeightedPoints::from_dataset(X), k);
}

}  // namespace ukm
