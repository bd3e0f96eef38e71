#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ukm/diagnostics.hpp"
#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/metric_io.hpp"
#include "ukm/simd.hpp"

namespace ukm {

XiSReport check_xi_s(const Dataset& X, const WeightedSample& S, const CenterSet& C_star,
                     double beta, double lambda) {
  require(!S.empty(), "sample is empty");
  C_star.validate(X.metric());
  const auto t = nearest_table(X.metric(), C_star);
  const std::size_t n = X.size();
  const std::size_t k = C_star.size();
  const double m = static_cast<double>(S.size());

  XiSReport r;
  r.lambda = lambda;
  r.beta = beta;
  r.opt_cost = simd::kernels().sum(t.d1.data(), n);

  std::vector<std::size_t> in_cluster(k, 0), in_sample(k, 0);
  for (auto a : t.a1) ++in_cluster[a];
  double sample_cost = 0.0;
  for (const auto& e : S.entries) {
    X.metric().check_index(e.id);
    sample_cost += t.d1[e.id];
    ++in_sample[t.a1[e.id]];
  }
  r.sample_average_cost = sample_cost / m;
  r.average_bound = lambda * r.opt_cost / static_cast<double>(n);
  r.condition1 = r.sample_average_cost <= r.average_bound;

  r.condition2 = true;
  for (std::size_t i = 0; i < k; ++i) {
    const double expected = static_cast<double>(in_cluster[i]) / static_cast<double>(n);
    const double observed = static_cast<double>(in_sample[i]) / m;
    r.expected_fractions.push_back(expected);
    r.observed_fractions.push_back(observed);
    if (!(observed > 0.5 * expected && observed < 1.5 * expected)) r.condition2 = false;
  }
  return r;
}

GoodCenterReport check_good_center(const Dataset& X, const CenterSet& C,
                                   const CenterSet& C_star, double beta, double lambda) {
  require(beta > 0.0, "beta must be positive");
  C.validate(X.metric());
  C_star.validate(X.metric());
  const std::size_t n = X.size();
  const double k = static_cast<double>(C_star.size());
  const auto star = nearest_table(X.metric(), C_star);
  const auto other = nearest_table(X.metric(), C);

  std::vector<double> star_to_C(C_star.size());
  for (std::size_t i = 0; i < C_star.size(); ++i) {
    star_to_C[i] = distance_to_set(X.metric(), C_star[i], C).distance;
  }

  GoodCenterReport r;
  r.opt_cost = simd::kernels().sum(star.d1.data(), n);
  double moved = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    moved += star_to_C[star.a1[x]];
    r.b2_value = std::max(r.b2_value, std::abs(other.d1[x] - star.d1[x]));
  }
  const double nn = static_cast<double>(n);
  r.b1_value = moved / nn;
  r.b1_bound = 6.0 * lambda * r.opt_cost / nn;
  r.b2_bound = 6.0 * lambda * k * r.opt_cost / (beta * nn);
  r.b1 = r.b1_value <= r.b1_bound;
  r.b2 = r.b2_value <= r.b2_bound;
  return r;
}

CostVectorDiag cost_vector_diag(const Dataset& X, const CenterSet& C,
                                const CenterSet& C_star, double beta, double lambda) {
  require(beta > 0.0, "beta must be positive");
  C.validate(X.metric());
  C_star.validate(X.metric());
  const std::size_t n = X.size();
  const auto star = nearest_table(X.metric(), C_star);
  const auto other = nearest_table(X.metric(), C);
  CostVectorDiag diag;
  diag.opt_cost = simd::kernels().sum(star.d1.data(), n);
  const double nn = static_cast<double>(n);
  diag.gamma = 12.0 * lambda * static_cast<double>(C_star.size()) * diag.opt_cost / (beta * nn);
  diag.v.resize(n);
  diag.err.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    diag.v[x] = other.d1[x] - star.d1[x];
    diag.err[x] = other.d1[x] + star.d1[x] + diag.opt_cost / nn;
  }
  return diag;
}

// ---------------------------------------------------------------------------

std::string to_string(WeakCoresetStatus status) {
  switch (status) {
    case WeakCoresetStatus::holds: return "holds";
    case WeakCoresetStatus::violated: return "violated";
    case WeakCoresetStatus::no_balanced_solution_on_sample: return "no_balanced_solution_on_sample";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nearest-center folding over the candidate locations for two point groups
// (the dataset and the distinct sample points) at once.
class PairedEnumerator {
 public:
  struct Eval {
    double x_cost;
    double s_cost;
    bool x_balanced;
    bool s_balanced;
  };

  PairedEnumerator(const Dataset& X, const std::vector<PointId>& locations,
                   const std::vector<PointId>& sample_ids,
                   const std::vector<double>& sample_counts, std::size_t k,
                   double beta)
      : n_(X.size()), m_(sample_ids.size()), k_(k), beta_(beta),
        locations_(locations), counts_(sample_counts),
        x_rows_(locations.size() * n_), s_rows_(locations.size() * m_),
        xd_((k + 1) * n_, kInf), xa_((k + 1) * n_, 0),
        sd_((k + 1) * m_, kInf), sa_((k + 1) * m_, 0), chosen_(k) {
    for (std::size_t l = 0; l < locations.size(); ++l) {
      X.metric().row(locations[l], {x_rows_.data() + l * n_, n_});
      for (std::size_t j = 0; j < m_; ++j) s_rows_[l * m_ + j] = x_rows_[l * n_ + sample_ids[j]];
    }
    for (double c : counts_) s_total_ += c;
  }

  void run(const std::function<void(const std::vector<PointId>&, const Eval&)>& visit) {
    visit_ = &visit;
    descend(0, 0);
  }

 private:
  static void fold(const double* row, std::size_t len, std::uint32_t pos, const double* pd,
                   const std::uint32_t* pa, double* nd, std::uint32_t* na) {
    for (std::size_t i = 0; i < len; ++i) {
      if (row[i] < pd[i]) {
        nd[i] = row[i];
        na[i] = pos;
      } else {
        nd[i] = pd[i];
        na[i] = pa[i];
      }
    }
  }

  void descend(std::size_t level, std::size_t first) {
    if (level == k_) {
      evaluate();
      return;
    }
    const auto pos = static_cast<std::uint32_t>(level);
    for (std::size_t l = first; l + (k_ - level) <= locations_.size(); ++l) {
      fold(x_rows_.data() + l * n_, n_, pos, xd_.data() + level * n_, xa_.data() + level * n_,
           xd_.data() + (level + 1) * n_, xa_.data() + (level + 1) * n_);
      fold(s_rows_.data() + l * m_, m_, pos, sd_.data() + level * m_, sa_.data() + level * m_,
           sd_.data() + (level + 1) * m_, sa_.data() + (level + 1) * m_);
      chosen_[level] = locations_[l];
      descend(level + 1, l + 1);
    }
  }

  void evaluate() {
    const double* xd = xd_.data() + k_ * n_;
    const std::uint32_t* xa = xa_.data() + k_ * n_;
    const double* sd = sd_.data() + k_ * m_;
    const std::uint32_t* sa = sa_.data() + k_ * m_;
    const auto& kern = simd::kernels();
    std::vector<double> xw(k_, 0.0), sw(k_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) xw[xa[i]] += 1.0;
    for (std::size_t j = 0; j < m_; ++j) sw[sa[j]] += counts_[j];
    const double kk = static_cast<double>(k_);
    bool xb = true, sb = true;
    for (std::size_t c = 0; c < k_; ++c) {
      if (xw[c] * kk < beta_ * static_cast<double>(n_)) xb = false;
      if (sw[c] * kk < 0.5 * beta_ * s_total_) sb = false;
    }
    (*visit_)(chosen_, Eval{kern.sum(xd, n_), kern.dot(sd, counts_.data(), m_), xb, sb});
  }

  std::size_t n_, m_, k_;
  double beta_;
  std::vector<PointId> locations_;
  std::vector<double> counts_;
  std::vector<double> x_rows_, s_rows_;
  std::vector<double> xd_;
  std::vector<std::uint32_t> xa_;
  std::vector<double> sd_;
  std::vector<std::uint32_t> sa_;
  std::vector<PointId> chosen_;
  double s_total_ = 0.0;
  const std::function<void(const std::vector<PointId>&, const Eval&)>* visit_ = nullptr;
};

}  // namespace

WeakCoresetReport verify_weak_coreset(const Dataset& X, const WeightedSample& S,
                                      std::size_t k, double beta, double epsilon,
                                      const WeakCoresetOptions& options) {
  require(k >= 1, "k must be at least 1");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(epsilon > 0.0, "epsilon must be positive");
  require(options.factor > 0.0, "factor must be positive");
  require(!S.empty(), "sample is empty");

  std::map<PointId, double> multiplicity;
  for (const auto& e : S.entries) {
    X.metric().check_index(e.id);
    multiplicity[e.id] += 1.0;
  }
  std::vector<PointId> sample_ids;
  std::vector<double> counts;
  for (const auto& [id, c] : multiplicity) {
    sample_ids.push_back(id);
    counts.push_back(c);
  }

  const auto locations = distinct_locations(X.metric());
  require(locations.size() >= k, "fewer than k distinct locations in X");
  const double subsets = binomial(locations.size(), k);
  if (subsets > options.budget) {
    fail(ErrorCode::budget_exceeded,
         "enumeration of " + format_double(subsets) + " subsets exceeds budget");
  }

  PairedEnumerator search(X, locations, sample_ids, counts, k, beta);
  WeakCoresetReport r;
  r.subsets_evaluated = subsets;

  double opt_x = kInf, opt_s = kInf, best_unconstrained_s = kInf;
  std::vector<PointId> unconstrained_best;
  double unconstrained_best_x = 0.0;
  search.run([&](const std::vector<PointId>& ids, const PairedEnumerator::Eval& e) {
    if (e.x_balanced) opt_x = std::min(opt_x, e.x_cost);
    if (e.s_balanced) opt_s = std::min(opt_s, e.s_cost);
    if (e.s_cost < best_unconstrained_s) {
      best_unconstrained_s = e.s_cost;
      unconstrained_best = ids;
      unconstrained_best_x = e.x_cost;
    }
  });
  if (opt_x == kInf) {
    fail(ErrorCode::infeasible, "no beta-balanced center set exists on X");
  }
  r.opt_x = opt_x;
  r.x_bound = (1.0 + options.factor * epsilon) * opt_x;
  if (opt_s == kInf) {
    r.status = WeakCoresetStatus::no_balanced_solution_on_sample;
    r.opt_sample = kInf;
    r.witness = CenterSet::from_ids(unconstrained_best);
    r.witness_cost_x = unconstrained_best_x;
    return r;
  }
  r.opt_sample = opt_s;

  const double s_limit = (1.0 + epsilon) * opt_s;
  search.run([&](const std::vector<PointId>& ids, const PairedEnumerator::Eval& e) {
    if (!e.s_balanced || e.s_cost > s_limit) return;
    ++r.near_optimal_sets;
    if (e.x_cost > r.x_bound && r.status == WeakCoresetStatus::holds) {
      r.status = WeakCoresetStatus::violated;
      r.witness = CenterSet::from_ids(ids);
      r.witness_cost_x = e.x_cost;
    }
  });
  return r;
}

}  // namespace ukm
