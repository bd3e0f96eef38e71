#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ukm/error.hpp"
#include "ukm/harness.hpp"

namespace ukm {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::size_error: return "size_error";
    case ExperimentKind::balancedness: return "balancedness";
    case ExperimentKind::compare_coreset: return "compare_coreset";
    case ExperimentKind::lower_bound_mc: return "lower_bound_mc";
    case ExperimentKind::weak_coreset_mc: return "weak_coreset_mc";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto k : {ExperimentKind::size_error, ExperimentKind::balancedness,
                 ExperimentKind::compare_coreset, ExperimentKind::lower_bound_mc,
                 ExperimentKind::weak_coreset_mc}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::invalid_input, "unknown experiment '" + name + "'");
}

namespace {

double param(const GeneratorSpec& g, const std::string& name, double fallback) {
  const auto it = g.params.find(name);
  return it == g.params.end() ? fallback : it->second;
}

std::size_t count_param(const GeneratorSpec& g, const std::string& name, double fallback) {
  const double v = param(g, name, fallback);
  require(v >= 0.0 && v == static_cast<double>(static_cast<std::size_t>(v)),
          "generator parameter '" + name + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

Instance generate(const GeneratorSpec& g) {
  switch (g.family) {
    case InstanceFamily::hidden_cluster:
      return gen_hidden_cluster(count_param(g, "n", 1000), param(g, "beta", 0.02),
                                static_cast<int>(count_param(g, "t", 1)), g.seed);
    case InstanceFamily::far_group:
      return gen_far_group(count_param(g, "n", 100), count_param(g, "f", 10),
                           param(g, "w", 1e6), g.seed);
    case InstanceFamily::gaussian_mixture:
      return gen_gaussian_mixture(count_param(g, "k", 4), count_param(g, "per_cluster", 100),
                                  count_param(g, "dim", 1), param(g, "separation", 100.0),
                                  param(g, "spread", 1.0), g.seed);
    case InstanceFamily::graph_random:
      return gen_graph_random(count_param(g, "nv", 50), count_param(g, "ne", 100),
                              param(g, "wmax", 10.0), g.seed);
  }
  fail(ErrorCode::invalid_input, "unknown instance family");
}

Instance load_source(const DatasetSource& source) {
  if (source.generator) return generate(*source.generator);
  require(!source.path.empty(), "dataset source needs a path or a generator");
  return {Dataset(load_backend(source.path, source.format)),
          InstanceDescriptor{InstanceFamily::gaussian_mixture, {}, 0, "loaded from " + source.path},
          {}};
}

void ExperimentSpec::validate() const {
  require(repetitions >= 1, "repetitions must be at least 1");
  for (auto m : m_values) require(m >= 1, "m values must be positive");
  for (auto k : k_values) require(k >= 1, "k values must be positive");
  require(epsilon > 0.0, "epsilon must be positive");
  require(lambda > 0.0, "lambda must be positive");
  require(min_relative_improvement >= 0.0, "min_relative_improvement must be nonnegative");
  require(source.generator.has_value() || !source.path.empty(),
          "dataset source needs a path or a generator");
  switch (kind) {
    case ExperimentKind::size_error:
    case ExperimentKind::compare_coreset:
    case ExperimentKind::weak_coreset_mc:
      require(!m_values.empty(), "experiment needs at least one m value");
      [[fallthrough]];
    case ExperimentKind::balancedness:
      require(!k_values.empty(), "experiment needs at least one k value");
      break;
    case ExperimentKind::lower_bound_mc:
      require(source.generator.has_value() &&
                  (source.generator->family == InstanceFamily::hidden_cluster ||
                   source.generator->family == InstanceFamily::far_group),
              "lower_bound_mc needs a hidden-cluster or far-group generator");
      break;
  }
}

ExperimentSpec parse_experiment_spec_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_input, std::string("malformed experiment spec: ") + e.what());
  }
  require(j.is_object(), "experiment spec must be a JSON object");
  ExperimentSpec s;
  try {
    s.kind = parse_experiment_kind(j.at("experiment").get<std::string>());
    const auto& d = j.at("dataset");
    if (d.contains("generator")) {
      const auto& g = d.at("generator");
      GeneratorSpec gen;
      gen.family = parse_instance_family(g.at("family").get<std::string>());
      for (const auto& [key, value] : g.items()) {
        if (key == "family") continue;
        if (key == "seed") {
          gen.seed = value.get<std::uint64_t>();
        } else {
          gen.params[key] = value.get<double>();
        }
      }
      s.source.generator = gen;
    } else {
      s.source.path = d.at("path").get<std::string>();
      s.source.format = parse_input_format(d.value("format", std::string("csv")));
    }
    s.k_values = j.value("k", std::vector<std::size_t>{});
    s.m_values = j.value("m", std::vector<std::size_t>{});
    s.repetitions = j.value("repetitions", s.repetitions);
    s.seed = j.value("seed", s.seed);
    s.output = j.value("output", s.output);
    s.baseline_coreset_size = j.value("baseline_coreset_size", s.baseline_coreset_size);
    const auto baseline = j.value("baseline", std::string("apx"));
    if (baseline == "apx") {
      s.baseline = BaselineKind::approximate;
    } else if (baseline == "exact") {
      s.baseline = BaselineKind::exact;
    } else {
      fail(ErrorCode::invalid_input, "baseline must be 'apx' or 'exact'");
    }
    s.max_iterations = j.value("max_iterations", s.max_iterations);
    s.min_relative_improvement = j.value("min_relative_improvement", s.min_relative_improvement);
    s.epsilon = j.value("epsilon", s.epsilon);
    s.lambda = j.value("lambda", s.lambda);
    s.ratio_threshold = j.value("ratio_threshold", s.ratio_threshold);
    const auto solver = j.value("sample_solver", std::string("auto"));
    if (solver == "auto") {
      s.sample_solver = SampleSolver::automatic;
    } else if (solver == "exact") {
      s.sample_solver = SampleSolver::exact;
    } else if (solver == "local-search") {
      s.sample_solver = SampleSolver::local_search;
    } else {
      fail(ErrorCode::invalid_input, "sample_solver must be auto, exact or local-search");
    }
    s.threads = j.value("threads", s.threads);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_input, std::string("invalid experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open spec file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_spec_json(text.str());
}

}  // namespace ukm
