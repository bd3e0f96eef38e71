#include <algorithm>
#include <random>

#include "ukm/error.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace ukm {
namespace {

// First index whose running sum of scores exceeds `target`; falls back to the
// last positive score when rounding leaves the target unreached.
PointId pick_by_score(std::span<const double> scores, double target) {
  double running = 0.0;
  std::size_t last_positive = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] <= 0.0) continue;
    last_positive = i;
    running += scores[i];
    if (running > target) return static_cast<PointId>(i);
  }
  return static_cast<PointId>(last_positive);
}

}  // namespace

std::vector<PointId> dsample_init(const WeightedPoints& P, std::size_t k,
                                  std::uint64_t seed, std::span<const PointId> pool) {
  require(k >= 1, "k must be at least 1");
  const std::size_t n = P.size();
  require(n >= 1, "cannot seed centers on an empty point set");
  const auto& kern = simd::kernels();
  std::mt19937_64 rng(seed);

  std::vector<PointId> chosen;
  chosen.reserve(k);
  std::vector<double> eligible = P.weights;
  if (!pool.empty()) {
    std::fill(eligible.begin(), eligible.end(), 0.0);
    for (PointId c : pool) eligible[c] = P.weights[c];
  }
  const double total_weight = kern.sum(eligible.data(), n);
  chosen.push_back(pick_by_score(
      eligible, std::uniform_real_distribution<double>(0.0, total_weight)(rng)));

  std::vector<double> mind(n), row(n), score(n);
  P.space->row(chosen.back(), mind);
  while (chosen.size() < k) {
    for (std::size_t i = 0; i < n; ++i) score[i] = eligible[i] * mind[i];
    const double total = kern.sum(score.data(), n);
    if (!(total > 0.0)) {
      fail(ErrorCode::invalid_input,
           "fewer than k=" + std::to_string(k) + " distinct points");
    }
    chosen.push_back(pick_by_score(
        score, std::uniform_real_distribution<double>(0.0, total)(rng)));
    P.space->row(chosen.back(), row);
    kern.min_into(mind.data(), row.data(), n);
  }
  return chosen;
}

CenterSet dsample_init(const Dataset& X, std::size_t k, std::uint64_t seed) {
  const auto P = WeightedPoints::from_dataset(X);
  return to_source_centers(P, dsample_init(P, k, seed));
}

CenterSet dsample_init(const Dataset& X, const WeightedSample& S, std::size_t k,
                       std::uint64_t seed) {
  const auto P = aggregate(X, S);
  return to_source_centers(P, dsample_init(P, k, seed));
}

}  // namespace ukm
