#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ukm/error.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

void LocalSearchConfig::validate() const {
  require(k >= 1, "k must be at least 1");
  require(min_relative_improvement >= 0.0 && std::isfinite(min_relative_improvement),
          "improvement threshold must be nonnegative");
  require(beta_min >= 0.0 && beta_min <= 1.0, "beta_min must lie in [0, 1]");
  require(initial.empty() || initial.size() == k, "initial center list must have k entries");
}

std::size_t default_max_iterations(std::size_t k, std::size_t n) {
  const double lg = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  return std::max<std::size_t>(1, 10 * k * static_cast<std::size_t>(lg));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SwapMove {
  double delta;
  PointId candidate;
  std::uint32_t position;
};

// Keeps one distance row per current center and the nearest/second-nearest
// tables derived from them.
class SearchState {
 public:
  SearchState(const WeightedPoints& P, std::vector<PointId> centers)
      : P_(&P), n_(P.size()), centers_(std::move(centers)),
        rows_(centers_.size() * n_) {
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      P_->space->row(centers_[j], {rows_.data() + j * n_, n_});
    }
    rebuild();
  }

  void rebuild() {
    const auto k = static_cast<std::uint32_t>(centers_.size());
    table_.d1.assign(n_, kInf);
    table_.d2.assign(n_, kInf);
    table_.a1.assign(n_, k);
    table_.a2.assign(n_, k);
    const auto& kern = simd::kernels();
    for (std::uint32_t j = 0; j < k; ++j) {
      kern.nearest_update(rows_.data() + j * n_, n_, j, table_.d1.data(),
                          table_.a1.data(), table_.d2.data(), table_.a2.data());
    }
    cost_ = kern.dot(table_.d1.data(), P_->weights.data(), n_);
  }

  void replace(std::uint32_t pos, PointId candidate, std::span<const double> row) {
    centers_[pos] = candidate;
    std::copy(row.begin(), row.end(), rows_.begin() + pos * n_);
    rebuild();
  }

  std::vector<double> cluster_weights() const {
    std::vector<double> w(centers_.size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) w[table_.a1[i]] += P_->weights[i];
    return w;
  }

  // Cluster weights after swapping `pos` for a candidate with row `dc`,
  // honoring lowest-position tie-breaking.
  std::vector<double> cluster_weights_after(std::uint32_t pos,
                                            std::span<const double> dc) const {
    std::vector<double> w(centers_.size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint32_t owner;
      if (table_.a1[i] != pos) {
        const bool wins = dc[i] < table_.d1[i] || (dc[i] == table_.d1[i] && pos < table_.a1[i]);
        owner = wins ? pos : table_.a1[i];
      } else {
        const bool wins = dc[i] < table_.d2[i] || (dc[i] == table_.d2[i] && pos < table_.a2[i]);
        owner = wins ? pos : table_.a2[i];
      }
      w[owner] += P_->weights[i];
    }
    return w;
  }

  double cost() const { return cost_; }
  const NearestTable& table() const { return table_; }
  const std::vector<PointId>& centers() const { return centers_; }
  std::span<const double> row(std::uint32_t pos) const {
    return {rows_.data() + pos * n_, n_};
  }

 private:
  const WeightedPoints* P_;
  std::size_t n_;
  std::vector<PointId> centers_;
  std::vector<double> rows_;
  NearestTable table_;
  double cost_ = 0.0;
};

bool balanced_enough(std::span<const double> cluster_weights, double total, double beta_min) {
  if (beta_min <= 0.0) return true;
  const double k = static_cast<double>(cluster_weights.size());
  for (double w : cluster_weights) {
    if (w * k < beta_min * total) return false;
  }
  return true;
}

bool improves(double old_cost, double new_cost, double threshold) {
  return new_cost < old_cost && old_cost - new_cost > threshold * old_cost;
}

}  // namespace

LocalSearchResult local_search(const WeightedPoints& P, const LocalSearchConfig& cfg) {
  cfg.validate();
  const std::size_t n = P.size();
  const std::size_t k = cfg.k;
  const double total_weight = P.total_weight();

  std::vector<PointId> pool = cfg.candidates;
  if (pool.empty()) {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), PointId{0});
  } else {
    for (PointId c : pool) require(c < n, "candidate id out of range");
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }
  require(pool.size() >= k, "candidate pool smaller than k");

  // Starting solution.
  std::vector<PointId> start;
  if (!cfg.initial.empty()) {
    start = cfg.initial;
    for (PointId c : start) {
      require(c < n, "initial center id out of range");
      require(cfg.candidates.empty() || std::binary_search(pool.begin(), pool.end(), c),
              "initial center outside the candidate pool");
    }
    CenterSet::from_ids(start).validate(*P.space);
  } else {
    start = dsample_init(P, k, cfg.seed, cfg.candidates);
  }
  SearchState state(P, start);
  if (cfg.beta_min > 0.0) {
    std::size_t attempt = 0;
    while (!balanced_enough(state.cluster_weights(), total_weight, cfg.beta_min)) {
      if (!cfg.initial.empty() || attempt >= cfg.feasibility_retries) {
        fail(ErrorCode::infeasible, "no beta_min-feasible starting solution found");
      }
      ++attempt;
      state = SearchState(P, dsample_init(P, k, cfg.seed + attempt, cfg.candidates));
    }
  }

  LocalSearchResult result;
  result.cost_trace.push_back(state.cost());
  const std::size_t max_iter =
      cfg.max_iterations ? cfg.max_iterations : default_max_iterations(k, n);
  const auto& kern = simd::kernels();
  std::vector<double> dc(n), common(n), extra(n), extra_by_center(k);
  std::vector<SwapMove> moves;

  while (result.iterations < max_iter) {
    ++result.iterations;
    const auto& t = state.table();
    const double threshold = cfg.min_relative_improvement * state.cost();
    moves.clear();
    SwapMove best{0.0, 0, 0};
    bool have_best = false;
    for (PointId c : pool) {
      // Candidates sitting on a current center's location change nothing.
      if (t.d1[c] == 0.0) continue;
      P.space->row(c, dc);
      kern.swap_terms(dc.data(), t.d1.data(), t.d2.data(), P.weights.data(), n,
                      common.data(), extra.data());
      const double base = kern.sum(common.data(), n);
      std::fill(extra_by_center.begin(), extra_by_center.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) extra_by_center[t.a1[i]] += extra[i];
      for (std::uint32_t j = 0; j < k; ++j) {
        const double delta = base + extra_by_center[j];
        if (!(delta < -threshold)) continue;
        if (cfg.beta_min > 0.0) {
          moves.push_back({delta, c, j});
        } else if (!have_best || delta < best.delta) {
          best = {delta, c, j};
          have_best = true;
        }
      }
    }
    if (cfg.beta_min > 0.0) {
      std::stable_sort(moves.begin(), moves.end(),
                       [](const SwapMove& a, const SwapMove& b) { return a.delta < b.delta; });
    } else if (have_best) {
      moves.push_back(best);
    }

    bool accepted = false;
    const double old_cost = state.cost();
    for (const SwapMove& mv : moves) {
      P.space->row(mv.candidate, dc);
      if (cfg.beta_min > 0.0 &&
          !balanced_enough(state.cluster_weights_after(mv.position, dc), total_weight,
                           cfg.beta_min)) {
        continue;
      }
      const PointId previous = state.centers()[mv.position];
      const std::vector<double> previous_row(state.row(mv.position).begin(),
                                             state.row(mv.position).end());
      state.replace(mv.position, mv.candidate, dc);
      // The recomputed solution is authoritative for both acceptance tests.
      if (improves(old_cost, state.cost(), cfg.min_relative_improvement) &&
          balanced_enough(state.cluster_weights(), total_weight, cfg.beta_min)) {
        accepted = true;
        break;
      }
      state.replace(mv.position, previous, previous_row);
      if (cfg.beta_min <= 0.0) break;
    }
    if (!accepted) break;
    ++result.swaps;
    result.cost_trace.push_back(state.cost());
  }

  result.centers = state.centers();
  result.center_set = to_source_centers(P, result.centers);
  const auto& t = state.table();
  result.clustering.assignment = t.a1;
  result.clustering.cluster_sizes.assign(k, 0);
  for (auto a : t.a1) ++result.clustering.cluster_sizes[a];
  result.clustering.cluster_weights = state.cluster_weights();
  result.clustering.total_cost = state.cost();
  return result;
}

LocalSearchResult local_search(const Dataset& X, const LocalSearchConfig& cfg) {
  return local_search(WeightedPoints::from_dataset(X), cfg);
}

LocalSearchResult local_search(const Dataset& X, const WeightedSample& S,
                               const LocalSearchConfig& cfg) {
  return local_search(aggregate(X, S), cfg);
}

}  // namespace ukm
