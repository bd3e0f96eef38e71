// Command-line front end: instance generation, solving, sampling, coresets,
// exact oracles, weak-coreset verification and experiment runs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ukm/coreset.hpp"
#include "ukm/diagnostics.hpp"
#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/harness.hpp"
#include "ukm/instances.hpp"
#include "ukm/metric_io.hpp"
#include "ukm/sampling.hpp"
#include "ukm/simd.hpp"
#include "ukm/solvers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct InputOptions {
  std::string path;
  std::string format = "csv";

  void add(CLI::App* app) {
    app->add_option("-i,--input", path, "Dataset file")->required();
    app->add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"csv", "edges", "matrix"}));
  }

  ukm::Dataset load() const {
    return ukm::Dataset(ukm::load_backend(path, ukm::parse_input_format(format)));
  }
};

// Writes to the named file, or stdout when the name is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  ukm::require(static_cast<bool>(out), "cannot write '" + path + "'");
  out << text;
}

ukm::WeightedSample read_sample_file(const std::string& path, ukm::SampleOrigin origin) {
  std::ifstream in(path);
  ukm::require(static_cast<bool>(in), "cannot open sample file '" + path + "'");
  return ukm::read_sample_csv(in, origin);
}

json centers_json(const ukm::CenterSet& C) { return C.ids(); }

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    ukm::require(eq != std::string::npos && eq > 0, "parameter '" + item + "' is not key=value");
    try {
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      ukm::fail(ukm::ErrorCode::invalid_input, "parameter '" + item + "' is not numeric");
    }
  }
  return params;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      ukm::require(used == item.size(), "bad list item '" + item + "'");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      ukm::fail(ukm::ErrorCode::invalid_input, "bad list item '" + item + "'");
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Uniform-sampling k-Median toolkit"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel variant (also UKM_SIMD)")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  std::string family, gen_out;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 1;
  gen->add_option("family", family, "hidden-cluster | far-group | gaussian-mixture | graph-random")
      ->required();
  gen->add_option("params", gen_params, "Family parameters as key=value");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Local-search k-Median");
  InputOptions solve_in;
  solve_in.add(solve);
  ukm::LocalSearchConfig ls;
  std::string solve_sample;
  solve->add_option("-k,--k", ls.k, "Number of centers")->required();
  solve->add_option("--beta-min", ls.beta_min, "Minimum balancedness of the solution");
  solve->add_option("--seed", ls.seed, "Random seed");
  solve->add_option("--max-iterations", ls.max_iterations, "Swap limit (0: default)");
  solve->add_option("--min-improvement", ls.min_relative_improvement,
                    "Minimum relative improvement per swap");
  solve->add_option("--sample", solve_sample, "Solve on this weighted sample (point_id,weight CSV)");

  // sample
  auto* sample = app.add_subcommand("sample", "Uniform sample with replacement");
  InputOptions sample_in;
  sample_in.add(sample);
  std::size_t sample_m = 0;
  std::uint64_t sample_seed = 1;
  std::string sample_out;
  sample->add_option("-m,--m", sample_m, "Sample size")->required();
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("-o,--output", sample_out, "Output file (default stdout)");

  // coreset
  auto* coreset = app.add_subcommand("coreset", "Sensitivity-sampling coreset");
  InputOptions coreset_in;
  coreset_in.add(coreset);
  std::size_t coreset_k = 0, coreset_m = 0;
  std::uint64_t coreset_seed = 1;
  std::string coreset_out;
  ukm::SensitivityOptions sens;
  coreset->add_option("-k,--k", coreset_k, "Number of centers")->required();
  coreset->add_option("-m,--m", coreset_m, "Coreset size")->required();
  coreset->add_option("--seed", coreset_seed, "Random seed");
  coreset->add_option("--rounds", sens.local_search_rounds, "Bicriteria local-search rounds");
  coreset->add_option("--pool", sens.candidate_pool, "Bicriteria candidate pool (0: all)");
  coreset->add_option("-o,--output", coreset_out, "Output file (default stdout)");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact k-Median by enumeration or 1D DP");
  InputOptions exact_in;
  exact_in.add(exact);
  std::size_t exact_k = 0;
  double exact_beta = 0.0;
  ukm::ExactOptions exact_opts;
  std::string method = "auto";
  exact->add_option("-k,--k", exact_k, "Number of centers")->required();
  exact->add_option("--beta-min", exact_beta, "Minimum balancedness of the solution");
  exact->add_option("--budget", exact_opts.budget, "Maximum number of subsets to enumerate");
  exact->add_flag("--all-optima", exact_opts.collect_all_optima, "Report every optimal set");
  exact->add_option("--method", method, "auto | enumerate | dp")
      ->check(CLI::IsMember({"auto", "enumerate", "dp"}));

  // verify weak-coreset
  auto* verify = app.add_subcommand("verify", "Property checks");
  verify->require_subcommand(1);
  auto* weak = verify->add_subcommand("weak-coreset", "Exhaustive weak-coreset check of a sample");
  InputOptions weak_in;
  weak_in.add(weak);
  std::string weak_sample;
  std::size_t weak_k = 0;
  double weak_beta = 1.0, weak_eps = 0.1;
  ukm::WeakCoresetOptions weak_opts;
  weak->add_option("--sample", weak_sample, "Sample CSV (point_id,weight)")->required();
  weak->add_option("-k,--k", weak_k, "Number of centers")->required();
  weak->add_option("--beta", weak_beta, "Balancedness level")->required();
  weak->add_option("--epsilon", weak_eps, "Near-optimality tolerance on the sample");
  weak->add_option("--factor", weak_opts.factor, "Allowed blow-up factor on X");
  weak->add_option("--budget", weak_opts.budget, "Maximum number of subsets to enumerate");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment and write CSV");
  std::string tag, spec_path, exp_input, exp_format = "csv", exp_family, k_list, m_list;
  std::string exp_out, baseline = "apx", sample_solver = "auto";
  std::vector<std::string> exp_gen_params;
  std::uint64_t exp_gen_seed = 1;
  ukm::ExperimentSpec flags;
  exp->add_option("tag", tag, "size_error | balancedness | compare_coreset | lower_bound_mc | weak_coreset_mc");
  exp->add_option("--spec", spec_path, "JSON experiment spec (flags are ignored)");
  exp->add_option("-i,--input", exp_input, "Dataset file");
  exp->add_option("--format", exp_format, "Input format")
      ->check(CLI::IsMember({"csv", "edges", "matrix"}));
  exp->add_option("--generator", exp_family, "Instance family to generate instead of a file");
  exp->add_option("--gen-param", exp_gen_params, "Generator parameter key=value (repeatable)");
  exp->add_option("--gen-seed", exp_gen_seed, "Generator seed");
  exp->add_option("--k", k_list, "Comma-separated k values");
  exp->add_option("--m", m_list, "Comma-separated sample sizes");
  exp->add_option("--repetitions", flags.repetitions, "Trials per (k, m)");
  exp->add_option("--seed", flags.seed, "Base seed");
  exp->add_option("-o,--output", exp_out, "Output CSV (default stdout)");
  exp->add_option("--baseline", baseline, "apx | exact")->check(CLI::IsMember({"apx", "exact"}));
  exp->add_option("--baseline-coreset-size", flags.baseline_coreset_size,
                  "Coreset size for the approximate baseline (0: 10 k ceil(log2 n))");
  exp->add_option("--max-iterations", flags.max_iterations, "Local-search swap limit (0: default)");
  exp->add_option("--min-improvement", flags.min_relative_improvement,
                  "Minimum relative improvement per swap");
  exp->add_option("--epsilon", flags.epsilon, "Success tolerance");
  exp->add_option("--lambda", flags.lambda, "Sampling-event constant");
  exp->add_option("--ratio-threshold", flags.ratio_threshold, "Lower-bound ratio threshold");
  exp->add_option("--sample-solver", sample_solver, "auto | exact | local-search")
      ->check(CLI::IsMember({"auto", "exact", "local-search"}));
  exp->add_option("--threads", flags.threads, "Worker threads (0: UKM_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (simd != "auto" && !ukm::simd::select_kernels(simd)) {
    ukm::fail(ukm::ErrorCode::invalid_input, "kernel variant '" + simd + "' is unavailable");
  }

  if (*gen) {
    ukm::GeneratorSpec g{ukm::parse_instance_family(family), parse_params(gen_params), gen_seed};
    const auto inst = ukm::generate(g);
    std::ostringstream data;
    ukm::write_instance(data, inst);
    emit(gen_out, data.str());
    json desc = {{"family", ukm::to_string(inst.descriptor.family)},
                 {"seed", inst.descriptor.seed},
                 {"params", inst.descriptor.params},
                 {"marked", inst.marked}};
    if (!inst.descriptor.notes.empty()) desc["notes"] = inst.descriptor.notes;
    (gen_out.empty() || gen_out == "-" ? std::cerr : std::cout) << desc.dump() << '\n';
  } else if (*solve) {
    const auto X = solve_in.load();
    const auto r = solve_sample.empty()
                       ? ukm::local_search(X, ls)
                       : ukm::local_search(X, read_sample_file(solve_sample, ukm::SampleOrigin::uniform), ls);
    const auto b = ukm::solution_balancedness(X, r.center_set);
    json out = {{"centers", centers_json(r.center_set)},
                {"cost_x", ukm::cost(X, r.center_set)},
                {"cost_searched", r.cost()},
                {"balancedness_x", b.value},
                {"swaps", r.swaps},
                {"iterations", r.iterations},
                {"cost_trace", r.cost_trace}};
    std::cout << out.dump(2) << '\n';
  } else if (*sample) {
    const auto X = sample_in.load();
    std::ostringstream text;
    ukm::write_sample_csv(text, ukm::uniform_sample(X, sample_m, sample_seed));
    emit(sample_out, text.str());
  } else if (*coreset) {
    const auto X = coreset_in.load();
    std::ostringstream text;
    ukm::write_sample_csv(text, ukm::build_coreset(X, coreset_k, coreset_m, coreset_seed, sens));
    emit(coreset_out, text.str());
  } else if (*exact) {
    const auto X = exact_in.load();
    const bool dp = method == "dp" ||
                    (method == "auto" && exact_beta == 0.0 && !exact_opts.collect_all_optima &&
                     dynamic_cast<const ukm::EuclideanSpace*>(&X.metric()) &&
                     dynamic_cast<const ukm::EuclideanSpace&>(X.metric()).dimension() == 1);
    ukm::require(!dp || exact_beta == 0.0, "the 1D solver does not support --beta-min");
    const auto r = dp ? ukm::dp_1d_kmedian(X, exact_k)
                      : ukm::brute_force_kmedian(X, exact_k, exact_beta, exact_opts);
    json out = {{"method", dp ? "dp" : "enumerate"},
                {"cost", r.cost},
                {"centers", centers_json(r.centers)},
                {"balancedness", r.balancedness.value},
                {"subsets_evaluated", r.subsets_evaluated}};
    if (exact_opts.collect_all_optima) {
      json all = json::array();
      for (const auto& c : r.all_optima) all.push_back(centers_json(c));
      out["all_optima"] = all;
    }
    std::cout << out.dump(2) << '\n';
  } else if (*verify) {
    const auto X = weak_in.load();
    const auto S = read_sample_file(weak_sample, ukm::SampleOrigin::uniform);
    const auto r = ukm::verify_weak_coreset(X, S, weak_k, weak_beta, weak_eps, weak_opts);
    json out = {{"status", ukm::to_string(r.status)},
                {"opt_x", r.opt_x},
                {"x_bound", r.x_bound},
                {"near_optimal_sets", r.near_optimal_sets},
                {"subsets_evaluated", r.subsets_evaluated}};
    out["opt_sample"] = std::isfinite(r.opt_sample) ? json(r.opt_sample) : json(nullptr);
    if (r.witness) {
      out["witness"] = centers_json(*r.witness);
      out["witness_cost_x"] = r.witness_cost_x;
    }
    std::cout << out.dump(2) << '\n';
  } else if (*exp) {
    ukm::ExperimentSpec spec;
    if (!spec_path.empty()) {
      spec = ukm::load_experiment_spec(spec_path);
      if (!tag.empty()) {
        ukm::require(ukm::parse_experiment_kind(tag) == spec.kind,
                     "experiment tag does not match the spec file");
      }
    } else {
      ukm::require(!tag.empty(), "experiment needs a tag or --spec");
      spec = flags;
      spec.kind = ukm::parse_experiment_kind(tag);
      if (!exp_family.empty()) {
        spec.source.generator = ukm::GeneratorSpec{ukm::parse_instance_family(exp_family),
                                                   parse_params(exp_gen_params), exp_gen_seed};
      } else {
        spec.source.path = exp_input;
        spec.source.format = ukm::parse_input_format(exp_format);
      }
      if (!k_list.empty()) spec.k_values = parse_list(k_list);
      if (!m_list.empty()) spec.m_values = parse_list(m_list);
      spec.output = exp_out;
      spec.baseline = baseline == "exact" ? ukm::BaselineKind::exact : ukm::BaselineKind::approximate;
      spec.sample_solver = sample_solver == "exact"          ? ukm::SampleSolver::exact
                           : sample_solver == "local-search" ? ukm::SampleSolver::local_search
                                                             : ukm::SampleSolver::automatic;
    }
    if (!exp_out.empty()) spec.output = exp_out;
    emit(spec.output, ukm::run_experiment(spec).to_string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ukm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ukm::ErrorCode::budget_exceeded ? kExitBudget : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
