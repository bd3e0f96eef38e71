#include <cmath>
#include <limits>

#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/metric_io.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

std::vector<PointId> distinct_locations(const MetricBackend& space) {
  const std::size_t n = space.size();
  std::vector<bool> covered(n, false);
  std::vector<double> row(n);
  std::vector<PointId> reps;
  for (PointId i = 0; i < n; ++i) {
    if (covered[i]) continue;
    reps.push_back(i);
    space.row(i, row);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] == 0.0) covered[j] = true;
    }
  }
  return reps;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class SubsetEnumerator {
 public:
  SubsetEnumerator(const WeightedPoints& P, std::vector<PointId> locations,
                   std::size_t k, double beta_min, bool collect)
      : P_(P), n_(P.size()), k_(k), beta_min_(beta_min), collect_(collect),
        locations_(std::move(locations)), rows_(locations_.size() * n_),
        d_((k + 1) * n_, kInf), a_((k + 1) * n_, 0), chosen_(k),
        total_weight_(P.total_weight()) {
    for (std::size_t l = 0; l < locations_.size(); ++l) {
      P.space->row(locations_[l], {rows_.data() + l * n_, n_});
    }
  }

  void run() { descend(0, 0); }

  bool found() const { return best_cost_ < kInf; }
  double best_cost() const { return best_cost_; }
  const std::vector<std::vector<PointId>>& optima() const { return optima_; }
  double visited() const { return visited_; }

 private:
  void descend(std::size_t level, std::size_t first) {
    if (level == k_) {
      evaluate();
      return;
    }
    const double* prev_d = d_.data() + level * n_;
    const std::uint32_t* prev_a = a_.data() + level * n_;
    double* next_d = d_.data() + (level + 1) * n_;
    std::uint32_t* next_a = a_.data() + (level + 1) * n_;
    const auto pos = static_cast<std::uint32_t>(level);
    for (std::size_t l = first; l + (k_ - level) <= locations_.size(); ++l) {
      const double* row = rows_.data() + l * n_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (row[i] < prev_d[i]) {
          next_d[i] = row[i];
          next_a[i] = pos;
        } else {
          next_d[i] = prev_d[i];
          next_a[i] = prev_a[i];
        }
      }
      chosen_[level] = locations_[l];
      descend(level + 1, l + 1);
    }
  }

  void evaluate() {
    ++visited_;
    const double* d = d_.data() + k_ * n_;
    const std::uint32_t* a = a_.data() + k_ * n_;
    if (beta_min_ > 0.0) {
      std::vector<double> w(k_, 0.0);
      for (std::size_t i = 0; i < n_; ++i) w[a[i]] += P_.weights[i];
      for (double cw : w) {
        if (cw * static_cast<double>(k_) < beta_min_ * total_weight_) return;
      }
    }
    const double c = simd::kernels().dot(d, P_.weights.data(), n_);
    if (c < best_cost_) {
      best_cost_ = c;
      optima_.clear();
      optima_.push_back(chosen_);
    } else if (collect_ && c == best_cost_) {
      optima_.push_back(chosen_);
    }
  }

  const WeightedPoints& P_;
  std::size_t n_;
  std::size_t k_;
  double beta_min_;
  bool collect_;
  std::vector<PointId> locations_;
  std::vector<double> rows_;
  std::vector<double> d_;
  std::vector<std::uint32_t> a_;
  std::vector<PointId> chosen_;
  double total_weight_;
  double best_cost_ = kInf;
  double visited_ = 0;
  std::vector<std::vector<PointId>> optima_;
};

}  // namespace

ExactResult brute_force_kmedian(const WeightedPoints& P, std::size_t k,
                                double beta_min, const ExactOptions& options) {
  require(k >= 1, "k must be at least 1");
  require(beta_min >= 0.0 && beta_min <= 1.0, "beta_min must lie in [0, 1]");
  auto locations = distinct_locations(*P.space);
  ExactResult result;
  if (locations.size() <= k) {
    result.centers = to_source_centers(P, locations);
    result.cost = 0.0;
    const auto cl = cluster(P, CenterSet::from_ids(locations));
    result.balancedness = balancedness_of(cl, P.total_weight());
    if (beta_min > 0.0 && locations.size() < k) {
      fail(ErrorCode::infeasible, "fewer than k distinct locations; no balanced k-subset");
    }
    if (result.balancedness.value < beta_min) {
      fail(ErrorCode::infeasible, "the only k-subset violates beta_min");
    }
    if (options.collect_all_optima) result.all_optima.push_back(result.centers);
    result.subsets_evaluated = 1;
    return result;
  }
  const double subsets = binomial(locations.size(), k);
  if (subsets > options.budget) {
    fail(ErrorCode::budget_exceeded,
         "enumeration of " + format_double(subsets) + " subsets exceeds budget");
  }

  SubsetEnumerator search(P, std::move(locations), k, beta_min,
                          options.collect_all_optima);
  search.run();
  if (!search.found()) {
    fail(ErrorCode::infeasible, "no k-subset satisfies beta_min");
  }
  result.cost = search.best_cost();
  result.subsets_evaluated = search.visited();
  const double total = P.total_weight();
  bool first = true;
  for (const auto& local : search.optima()) {
    const auto local_set = CenterSet::from_ids(local);
    const auto b = balancedness_of(cluster(P, local_set), total);
    if (options.collect_all_optima) result.all_optima.push_back(to_source_centers(P, local));
    if (first || b.value > result.balancedness.value) {
      result.balancedness = b;
      result.centers = to_source_centers(P, local);
      first = false;
    }
  }
  return result;
}

ExactResult brute_force_kmedian(const Dataset& X, std::size_t k, double beta_min,
                                const ExactOptions& options) {
  return brute_force_kmedian(WeightedPoints::from_dataset(X), k, beta_min, options);
}

}  // namespace ukm
