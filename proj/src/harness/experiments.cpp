#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "ukm/coreset.hpp"
#include "ukm/diagnostics.hpp"
#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/harness.hpp"
#include "ukm/sampling.hpp"
#include "ukm/solvers.hpp"

namespace ukm {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base ^ c) ^ b) ^ a);
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) {
    threads = 1;
    if (const char* env = std::getenv("UKM_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) threads = static_cast<std::size_t>(v);
    }
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

using Clock = std::chrono::steady_clock;
using Value = std::optional<double>;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

enum class Summary { mean, mean_std };

struct Column {
  std::string name;
  Summary summary = Summary::mean;
};

struct TrialRow {
  std::uint64_t seed = 0;
  std::vector<Value> values;
  std::vector<Value> timings;
};

// Layout: row_type, experiment, k, m, trial, seed, statistics (each optionally
// followed by its _std column), then the timing columns.
class TableBuilder {
 public:
  TableBuilder(ExperimentKind kind, std::vector<Column> columns, std::vector<std::string> timings)
      : kind_(kind), columns_(std::move(columns)), timings_(std::move(timings)) {
    table_.header = {"row_type", "experiment", "k", "m", "trial", "seed"};
    for (const auto& c : columns_) {
      table_.header.push_back(c.name);
      if (c.summary == Summary::mean_std) table_.header.push_back(c.name + "_std");
    }
    for (const auto& t : timings_) table_.header.push_back(t);
  }

  void add_group(std::size_t k, std::size_t m, const std::vector<TrialRow>& trials) {
    auto cell = [](const Value& v) { return v ? csv_number(*v) : std::string(); };
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto& t = trials[i];
      std::vector<std::string> row = {"trial", to_string(kind_), std::to_string(k),
                                      std::to_string(m), std::to_string(i),
                                      std::to_string(t.seed)};
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        row.push_back(cell(t.values[c]));
        if (columns_[c].summary == Summary::mean_std) row.emplace_back();
      }
      for (const auto& v : t.timings) row.push_back(cell(v));
      table_.rows.push_back(std::move(row));
    }
    std::vector<std::string> row = {"summary", to_string(kind_), std::to_string(k),
                                    std::to_string(m), "", ""};
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      const auto [mean, sd] = moments(trials, c, false);
      row.push_back(cell(mean));
      if (columns_[c].summary == Summary::mean_std) row.push_back(cell(sd));
    }
    for (std::size_t c = 0; c < timings_.size(); ++c) row.push_back(cell(moments(trials, c, true).first));
    table_.rows.push_back(std::move(row));
  }

  CsvTable take() { return std::move(table_); }

 private:
  // Mean and sample standard deviation over the trials where the value exists.
  static std::pair<Value, Value> moments(const std::vector<TrialRow>& trials, std::size_t c,
                                         bool timing) {
    std::vector<double> xs;
    for (const auto& t : trials) {
      const auto& v = timing ? t.timings[c] : t.values[c];
      if (v) xs.push_back(*v);
    }
    if (xs.empty()) return {std::nullopt, std::nullopt};
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, std::nullopt};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
  }

  ExperimentKind kind_;
  std::vector<Column> columns_;
  std::vector<std::string> timings_;
  CsvTable table_;
};

bool is_line(const Dataset& X) {
  const auto* e = dynamic_cast<const EuclideanSpace*>(&X.metric());
  return e != nullptr && e->dimension() == 1;
}

bool is_line(const WeightedPoints& P) {
  const auto* e = dynamic_cast<const EuclideanSpace*>(P.space.get());
  return e != nullptr && e->dimension() == 1;
}

ExactResult exact_optimum(const Dataset& X, std::size_t k) {
  if (is_line(X)) return dp_1d_kmedian(X, k);
  return brute_force_kmedian(X, k, 0.0);
}

LocalSearchConfig search_config(const ExperimentSpec& spec, std::size_t k, std::uint64_t seed) {
  LocalSearchConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.max_iterations = spec.max_iterations;
  cfg.min_relative_improvement = spec.min_relative_improvement;
  return cfg;
}

// A solution computed on a weighted point set, in both local and dataset ids.
struct PointSetSolution {
  std::vector<PointId> local;
  CenterSet centers;
  bool feasible = true;  // false when fewer than k distinct locations exist
};

std::vector<PointId> to_local(const WeightedPoints& P, const CenterSet& C) {
  std::vector<PointId> local;
  for (PointId id : C.ids()) {
    const auto it = std::lower_bound(P.source_ids.begin(), P.source_ids.end(), id);
    require(it != P.source_ids.end() && *it == id, "center is not part of the point set");
    local.push_back(static_cast<PointId>(it - P.source_ids.begin()));
  }
  return local;
}

PointSetSolution solve_points(const WeightedPoints& P, std::size_t k, SampleSolver mode,
                              const ExperimentSpec& spec, std::uint64_t seed) {
  PointSetSolution out;
  const auto locations = distinct_locations(*P.space);
  if (locations.size() < k) {
    out.local = locations;
    out.centers = to_source_centers(P, locations);
    out.feasible = false;
    return out;
  }
  if (mode == SampleSolver::automatic) {
    mode = is_line(P) || binomial(locations.size(), k) <= ExactOptions{}.budget
               ? SampleSolver::exact
               : SampleSolver::local_search;
  }
  if (mode == SampleSolver::local_search) {
    auto r = local_search(P, search_config(spec, k, seed));
    out.local = std::move(r.centers);
    out.centers = std::move(r.center_set);
    return out;
  }
  const auto r = is_line(P) ? dp_1d_kmedian(P, k) : brute_force_kmedian(P, k, 0.0);
  out.centers = r.centers;
  out.local = to_local(P, r.centers);
  return out;
}

CenterSet baseline_centers(const Dataset& X, std::size_t k, const ExperimentSpec& spec) {
  if (spec.baseline == BaselineKind::exact) return exact_optimum(X, k).centers;
  const std::size_t n = X.size();
  std::size_t size = spec.baseline_coreset_size;
  if (size == 0) {
    const auto lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
    size = 10 * k * lg;
  }
  const auto seed = derive_seed(spec.seed, k, 0xba5e11aeULL);
  const auto S = build_coreset(X, k, size, seed);
  return solve_points(aggregate(X, S), k, SampleSolver::local_search, spec, seed + 1).centers;
}

Value eps_hat(double c, double baseline) {
  const auto e = relative_error(c, baseline);
  return e ? Value(*e) : std::nullopt;
}

std::vector<TrialRow> run_trials(const ExperimentSpec& spec, std::size_t k, std::size_t m,
                                 const std::function<void(TrialRow&)>& trial) {
  std::vector<TrialRow> rows(spec.repetitions);
  parallel_for(spec.repetitions, spec.threads, [&](std::size_t i) {
    rows[i].seed = derive_seed(spec.seed, i, k, m);
    trial(rows[i]);
  });
  return rows;
}

double measured(const std::function<void()>& body) {
  const auto start = Clock::now();
  body();
  return ms_since(start);
}

}  // namespace

CsvTable run_size_error(const ExperimentSpec& spec) {
  spec.validate();
  const auto inst = load_source(spec.source);
  const Dataset& X = inst.data;
  TableBuilder table(ExperimentKind::size_error,
                     {{"cost_x", Summary::mean_std}, {"baseline_cost"},
                      {"eps_hat", Summary::mean_std}, {"feasible"}},
                     {"sample_ms", "solve_ms", "eval_ms"});
  for (auto k : spec.k_values) {
    const double baseline = cost(X, baseline_centers(X, k, spec));
    for (auto m : spec.m_values) {
      table.add_group(k, m, run_trials(spec, k, m, [&](TrialRow& row) {
        WeightedSample S;
        PointSetSolution sol;
        double c = 0.0;
        const double t_sample = measured([&] { S = uniform_sample(X, m, row.seed); });
        const double t_solve = measured([&] {
          sol = solve_points(aggregate(X, S), k, SampleSolver::local_search, spec, row.seed + 1);
        });
        const double t_eval = measured([&] { c = cost(X, sol.centers); });
        row.values = {c, baseline, eps_hat(c, baseline), double(sol.feasible)};
        row.timings = {t_sample, t_solve, t_eval};
      }));
    }
  }
  return table.take();
}

CsvTable run_balancedness(const ExperimentSpec& spec) {
  spec.validate();
  const auto inst = load_source(spec.source);
  const Dataset& X = inst.data;
  const auto m_values = spec.m_values.empty() ? std::vector<std::size_t>{500} : spec.m_values;
  TableBuilder table(ExperimentKind::balancedness,
                     {{"cost_x", Summary::mean_std}, {"baseline_cost"},
                      {"eps_hat", Summary::mean_std}, {"beta"},
                      {"beta_prime", Summary::mean_std}, {"beta_flag"}, {"feasible"}},
                     {"sample_ms", "solve_ms", "eval_ms"});
  for (auto k : spec.k_values) {
    const auto apx = baseline_centers(X, k, spec);
    const double baseline = cost(X, apx);
    const double beta = solution_balancedness(X, apx).value;
    for (auto m : m_values) {
      table.add_group(k, m, run_trials(spec, k, m, [&](TrialRow& row) {
        WeightedSample S;
        PointSetSolution sol;
        std::optional<WeightedPoints> P;
        double c = 0.0, beta_prime = 0.0;
        const double t_sample = measured([&] {
          S = uniform_sample(X, m, row.seed);
          P = aggregate(X, S);
        });
        const double t_solve = measured([&] {
          sol = solve_points(*P, k, SampleSolver::local_search, spec, row.seed + 1);
        });
        const double t_eval = measured([&] {
          c = cost(X, sol.centers);
          beta_prime = solution_balancedness(*P, CenterSet::from_ids(sol.local)).value;
        });
        row.values = {c, baseline, eps_hat(c, baseline), beta, beta_prime,
                      double(beta_prime >= beta / 2.0), double(sol.feasible)};
        row.timings = {t_sample, t_solve, t_eval};
      }));
    }
  }
  return table.take();
}

CsvTable run_compare_coreset(const ExperimentSpec& spec) {
  spec.validate();
  const auto inst = load_source(spec.source);
  const Dataset& X = inst.data;
  TableBuilder table(ExperimentKind::compare_coreset,
                     {{"uniform_cost_x", Summary::mean_std}, {"coreset_cost_x", Summary::mean_std},
                      {"baseline_cost"}, {"uniform_eps_hat", Summary::mean_std},
                      {"coreset_eps_hat", Summary::mean_std}, {"gap", Summary::mean_std}},
                     {"sample_ms", "coreset_ms", "uniform_solve_ms", "coreset_solve_ms", "eval_ms"});
  for (auto k : spec.k_values) {
    const double baseline = cost(X, baseline_centers(X, k, spec));
    for (auto m : spec.m_values) {
      table.add_group(k, m, run_trials(spec, k, m, [&](TrialRow& row) {
        WeightedSample U, C;
        PointSetSolution su, sc;
        double cu = 0.0, cc = 0.0;
        const double t_sample = measured([&] { U = uniform_sample(X, m, row.seed); });
        const double t_coreset = measured([&] { C = build_coreset(X, k, m, row.seed + 1); });
        const double t_usolve = measured([&] {
          su = solve_points(aggregate(X, U), k, SampleSolver::local_search, spec, row.seed + 3);
        });
        const double t_csolve = measured([&] {
          sc = solve_points(aggregate(X, C), k, SampleSolver::local_search, spec, row.seed + 4);
        });
        const double t_eval = measured([&] {
          cu = cost(X, su.centers);
          cc = cost(X, sc.centers);
        });
        row.values = {cu, cc, baseline, eps_hat(cu, baseline), eps_hat(cc, baseline),
                      baseline > 0.0 ? Value((cu - cc) / baseline) : std::nullopt};
        row.timings = {t_sample, t_coreset, t_usolve, t_csolve, t_eval};
      }));
    }
  }
  return table.take();
}

CsvTable run_lower_bound_mc(const ExperimentSpec& spec) {
  spec.validate();
  const auto inst = load_source(spec.source);
  const Dataset& X = inst.data;
  const std::size_t n = X.size();
  const bool hidden = inst.descriptor.family == InstanceFamily::hidden_cluster;
  const std::size_t k = hidden ? 2 : 3;
  std::vector<bool> marked(n, false);
  for (auto id : inst.marked) marked[id] = true;
  const double p = static_cast<double>(inst.marked.size()) / static_cast<double>(n);

  auto m_values = spec.m_values;
  if (m_values.empty()) {
    const auto& params = inst.descriptor.params;
    m_values.push_back(hidden ? static_cast<std::size_t>(std::floor(1.0 / (2.0 * params.at("beta"))))
                              : static_cast<std::size_t>(params.at("f")));
  }
  const double opt = hidden ? 0.0 : brute_force_kmedian(X, k, 0.0).cost;
  const auto& line = dynamic_cast<const EuclideanSpace&>(X.metric());
  const std::size_t locations = distinct_locations(X.metric()).size();

  TableBuilder table(ExperimentKind::lower_bound_mc,
                     {{"event"}, {"closed_form"}, {"qualifying"}, {"cost_x"}, {"opt_cost"},
                      {"ratio", Summary::mean_std}, {"ratio_ok"}},
                     {"sample_ms", "solve_ms"});
  for (auto m : m_values) {
    const double closed = hidden ? std::pow(1.0 - p, double(m)) : 1.0 - std::pow(1.0 - p, double(m));
    table.add_group(k, m, run_trials(spec, k, m, [&](TrialRow& row) {
      WeightedSample S;
      const double t_sample = measured([&] { S = uniform_sample(X, m, row.seed); });
      bool hit = false;
      std::set<double> seen;
      for (const auto& e : S.entries) {
        hit = hit || marked[e.id];
        seen.insert(line.coordinate(e.id, 0));
      }
      row.values = {double(hidden ? !hit : hit), closed, std::nullopt, std::nullopt,
                    std::nullopt, std::nullopt, std::nullopt};
      double t_solve = 0.0;
      if (!hidden) {
        const bool qualifying = seen.size() == locations;
        row.values[2] = double(qualifying);
        if (qualifying) {
          t_solve = measured([&] {
            const auto r = brute_force_kmedian(aggregate_unweighted(X, S), k, 0.0);
            const double c = cost(X, r.centers);
            row.values[3] = c;
            row.values[4] = opt;
            row.values[5] = c / opt;
            row.values[6] = double(c >= spec.ratio_threshold * opt);
          });
        }
      }
      row.timings = {t_sample, t_solve};
    }));
  }
  return table.take();
}

CsvTable run_weak_coreset_mc(const ExperimentSpec& spec) {
  spec.validate();
  const auto inst = load_source(spec.source);
  const Dataset& X = inst.data;
  TableBuilder table(ExperimentKind::weak_coreset_mc,
                     {{"cost_x", Summary::mean_std}, {"opt_cost"}, {"opt_validated"},
                      {"eps_hat", Summary::mean_std}, {"success"}, {"xi_s"}, {"feasible"}},
                     {"sample_ms", "solve_ms", "eval_ms"});
  for (auto k : spec.k_values) {
    const auto opt = exact_optimum(X, k);
    // Cross-check the line solver against enumeration whenever it is affordable.
    Value validated;
    if (is_line(X) &&
        binomial(distinct_locations(X.metric()).size(), k) <= ExactOptions{}.budget) {
      validated = double(brute_force_kmedian(X, k, 0.0).cost == opt.cost);
    }
    const double beta = solution_balancedness(X, opt.centers).value;
    for (auto m : spec.m_values) {
      table.add_group(k, m, run_trials(spec, k, m, [&](TrialRow& row) {
        WeightedSample S;
        PointSetSolution sol;
        double c = 0.0;
        bool xi = false;
        const double t_sample = measured([&] { S = uniform_sample(X, m, row.seed); });
        const double t_solve = measured([&] {
          sol = solve_points(aggregate_unweighted(X, S), k, spec.sample_solver, spec, row.seed + 1);
        });
        const double t_eval = measured([&] {
          c = cost(X, sol.centers);
          xi = check_xi_s(X, S, opt.centers, beta, spec.lambda).holds();
        });
        const bool success = c <= (1.0 + spec.epsilon) * opt.cost;
        row.values = {c, opt.cost, validated, eps_hat(c, opt.cost), double(success),
                      double(xi), double(sol.feasible)};
        row.timings = {t_sample, t_solve, t_eval};
      }));
    }
  }
  return table.take();
}

CsvTable run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::size_error: return run_size_error(spec);
    case ExperimentKind::balancedness: return run_balancedness(spec);
    case ExperimentKind::compare_coreset: return run_compare_coreset(spec);
    case ExperimentKind::lower_bound_mc: return run_lower_bound_mc(spec);
    case ExperimentKind::weak_coreset_mc: return run_weak_coreset_mc(spec);
  }
  fail(ErrorCode::invalid_input, "unknown experiment");
}

}  // namespace ukm
