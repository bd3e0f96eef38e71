#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "ukm/error.hpp"
#include "ukm/metric_io.hpp"
#include "ukm/sampling.hpp"

namespace ukm {

WeightedSample uniform_sample(const Dataset& X, std::size_t m, std::uint64_t seed) {
  WeightedSample S;
  S.origin = SampleOrigin::uniform;
  S.seed = seed;
  S.entries.resize(m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(X.size() - 1));
  for (auto& e : S.entries) e = {pick(rng), 1.0};
  return S;
}

namespace {

WeightedPoints collapse(const Dataset& X, const WeightedSample& S, bool use_weights) {
  require(!S.empty(), "sample is empty");
  std::map<PointId, double> merged;
  for (const auto& e : S.entries) {
    X.metric().check_index(e.id);
    require(e.weight > 0.0 && std::isfinite(e.weight),
            "sample weights must be positive and finite");
    merged[e.id] += use_weights ? e.weight : 1.0;
  }
  WeightedPoints p;
  p.source_ids.reserve(merged.size());
  p.weights.reserve(merged.size());
  for (const auto& [id, w] : merged) {
    p.source_ids.push_back(id);
    p.weights.push_back(w);
  }
  p.space = X.metric().restrict_to(p.source_ids);
  return p;
}

}  // namespace

WeightedPoints aggregate(const Dataset& X, const WeightedSample& S) {
  return collapse(X, S, true);
}

WeightedPoints aggregate_unweighted(const Dataset& X, const WeightedSample& S) {
  return collapse(X, S, false);
}

void write_sample_csv(std::ostream& out, const WeightedSample& S) {
  out << "point_id,weight\n";
  for (const auto& e : S.entries) out << e.id << ',' << format_double(e.weight) << '\n';
}

WeightedSample read_sample_csv(std::istream& in, SampleOrigin origin) {
  WeightedSample S;
  S.origin = origin;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && line.rfind("point_id", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long id = -1;
    double w = 0.0;
    if (!(fields >> id >> w) || id < 0 || !(w > 0.0)) {
      fail(ErrorCode::invalid_input, "malformed sample row on line " + std::to_string(lineno));
    }
    S.entries.push_back({static_cast<PointId>(id), w});
  }
  return S;
}

// ---------------------------------------------------------------------------

MetricClass parse_metric_class(const std::string& name) {
  if (name == "euclidean") return MetricClass::euclidean;
  if (name == "doubling") return MetricClass::doubling;
  if (name == "finite") return MetricClass::finite;
  if (name == "treewidth") return MetricClass::treewidth;
  fail(ErrorCode::invalid_input, "unsupported metric class '" + name + "'");
}

namespace {

double clamped_log2(double x) { return std::max(1.0, std::log2(x)); }

}  // namespace

double sample_size_real(const SampleSizeSpec& spec) {
  require(spec.k >= 1, "k must be at least 1");
  require(spec.beta > 0.0 && spec.beta <= 1.0, "beta must lie in (0, 1]");
  require(spec.epsilon > 0.0 && spec.epsilon <= 0.5, "epsilon must lie in (0, 0.5]");
  require(spec.multiplier > 0.0, "multiplier must be positive");
  const double k = static_cast<double>(spec.k);
  const double b = spec.beta;
  const double e = spec.epsilon;
  const double log_kbe = clamped_log2(k / (b * e));
  switch (spec.metric_class) {
    case MetricClass::euclidean: {
      const double log_e = clamped_log2(1.0 / e);
      return spec.multiplier * (k * k / (b * e * e * e)) * log_kbe * log_kbe *
             log_e * log_e;
    }
    case MetricClass::doubling:
    case MetricClass::treewidth:
      require(spec.class_parameter >= 1.0, "class parameter must be at least 1");
      return spec.multiplier * (k * k / (b * e * e)) * spec.class_parameter * log_kbe;
    case MetricClass::finite:
      require(spec.class_parameter >= 1.0, "class parameter must be at least 1");
      return spec.multiplier * (k * k / (b * e * e)) *
             clamped_log2(spec.class_parameter) * log_kbe;
  }
  fail(ErrorCode::invalid_input, "unsupported metric class");
}

std::size_t sample_size(const SampleSizeSpec& spec) {
  return static_cast<std::size_t>(std::ceil(sample_size_real(spec)));
}

}  // namespace ukm
