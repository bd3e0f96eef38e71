#include <limits>

#include "ukm/error.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

CenterSet to_source_centers(const WeightedPoints& P, std::span<const PointId> local) {
  std::vector<PointId> ids;
  ids.reserve(local.size());
  for (PointId l : local) {
    require(l < P.source_ids.size(), "local center id out of range");
    ids.push_back(P.source_ids[l]);
  }
  return CenterSet::from_ids(ids);
}

double weighted_cost(const Dataset& X, const WeightedSample& S, const CenterSet& C) {
  C.validate(X.metric());
  const std::size_t m = S.size();
  if (m == 0) return 0.0;
  std::vector<PointId> ids(m);
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    X.metric().check_index(S.entries[i].id);
    ids[i] = S.entries[i].id;
    weights[i] = S.entries[i].weight;
  }
  const auto& kern = simd::kernels();
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  std::vector<double> d(m);
  for (const auto& c : C) {
    if (c.is_index()) {
      X.metric().distances(c.id(), ids, d);
    } else {
      for (std::size_t i = 0; i < m; ++i) d[i] = X.metric().distance(c.coords(), ids[i]);
    }
    kern.min_into(best.data(), d.data(), m);
  }
  return kern.dot(best.data(), weights.data(), m);
}

}  // namespace ukm
