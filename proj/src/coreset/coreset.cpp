#include <algorithm>
#include <numeric>
#include <random>

#include "ukm/coreset.hpp"
#include "ukm/error.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

SensitivityProfile sensitivities(const Dataset& X, std::size_t k, std::uint64_t seed,
                                 const SensitivityOptions& options) {
  const std::size_t n = X.size();
  require(k >= 1, "k must be at least 1");
  require(n >= k, "sensitivities need at least k points");

  const auto P = WeightedPoints::from_dataset(X);
  std::vector<PointId> start = dsample_init(P, k, seed);

  LocalSearchConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.initial = start;
  cfg.max_iterations = options.local_search_rounds;
  if (options.candidate_pool != 0 && options.candidate_pool < n) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
    cfg.candidates = start;
    for (std::size_t i = 0; i < options.candidate_pool; ++i) cfg.candidates.push_back(pick(rng));
  }
  SensitivityProfile profile;
  std::vector<PointId> centers = start;
  if (options.local_search_rounds > 0) centers = local_search(P, cfg).centers;
  profile.bicriteria = CenterSet::from_ids(centers);

  const auto table = nearest_table(X.metric(), profile.bicriteria);
  std::vector<std::size_t> sizes(k, 0);
  for (auto a : table.a1) ++sizes[a];
  const double base = simd::kernels().sum(table.d1.data(), n);
  profile.sensitivity.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double share = base > 0.0 ? table.d1[i] / base : 0.0;
    profile.sensitivity[i] = share + 1.0 / static_cast<double>(sizes[table.a1[i]]);
  }
  profile.total = simd::kernels().sum(profile.sensitivity.data(), n);
  return profile;
}

WeightedSample build_coreset(const SensitivityProfile& profile, std::size_t m,
                             std::uint64_t seed) {
  require(m >= 1, "coreset size must be at least 1");
  const std::size_t n = profile.sensitivity.size();
  require(n >= 1 && profile.total > 0.0, "empty sensitivity profile");

  // Inverse-CDF sampling over the cumulative sensitivities.
  std::vector<double> cumulative(n);
  std::partial_sum(profile.sensitivity.begin(), profile.sensitivity.end(),
                   cumulative.begin());
  const double top = cumulative.back();

  WeightedSample S;
  S.origin = SampleOrigin::coreset;
  S.seed = seed;
  S.entries.reserve(m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, top);
  for (std::size_t draw = 0; draw < m; ++draw) {
    const double r = u(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    const auto id = static_cast<PointId>(it - cumulative.begin());
    const double p = profile.sensitivity[id] / top;
    S.entries.push_back({id, 1.0 / (static_cast<double>(m) * p)});
  }
  return S;
}

WeightedSample build_coreset(const Dataset& X, std::size_t k, std::size_t m,
                             std::uint64_t seed, const SensitivityOptions& options) {
  return build_coreset(sensitivities(X, k, seed, options), m, seed + 1);
}

}  // namespace ukm
