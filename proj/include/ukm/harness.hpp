#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ukm/instances.hpp"
#include "ukm/metric_io.hpp"

namespace ukm {

/// A CSV table with a header row. Cells are preformatted strings; an empty
/// cell means "not applicable". Columns whose name ends in "_ms" hold
/// wall-clock timings and are the only nondeterministic columns.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  std::string to_string() const;
  /// The table with every timing column removed.
  CsvTable without_timings() const;

  static CsvTable parse(const std::string& text);
};

std::string csv_number(double v);
std::string csv_flag(bool v);

// ---------------------------------------------------------------------------

enum class ExperimentKind {
  size_error,
  balancedness,
  compare_coreset,
  lower_bound_mc,
  weak_coreset_mc,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct GeneratorSpec {
  InstanceFamily family = InstanceFamily::gaussian_mixture;
  std::map<std::string, double> params;
  std::uint64_t seed = 1;
};

/// Builds an instance from a family name and parameters; missing parameters
/// take the defaults listed in the README.
Instance generate(const GeneratorSpec& spec);

struct DatasetSource {
  std::string path;
  InputFormat format = InputFormat::csv;
  std::optional<GeneratorSpec> generator;
};

/// Loads a file or runs a generator. File sources carry no marked group.
Instance load_source(const DatasetSource& source);

enum class BaselineKind { approximate, exact };
enum class SampleSolver { automatic, exact, local_search };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::size_error;
  DatasetSource source;
  std::vector<std::size_t> k_values;
  std::vector<std::size_t> m_values;
  std::size_t repetitions = 20;
  std::uint64_t seed = 1;
  std::string output;

  /// Coreset size for the approximate baseline; 0 means 10 k ceil(log2 n).
  std::size_t baseline_coreset_size = 0;
  BaselineKind baseline = BaselineKind::approximate;
  std::size_t max_iterations = 0;
  double min_relative_improvement = 1e-4;
  double epsilon = 0.1;
  double lambda = 1001.0;
  double ratio_threshold = 1.009;
  SampleSolver sample_solver = SampleSolver::automatic;
  /// Worker threads for trials; 0 reads UKM_THREADS (default 1).
  std::size_t threads = 0;

  void validate() const;
};

ExperimentSpec parse_experiment_spec_json(const std::string& text);
ExperimentSpec load_experiment_spec(const std::string& path);

/// Per-trial seed: splitmix64 of the base seed xor-combined with the trial
/// coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

CsvTable run_size_error(const ExperimentSpec& spec);
CsvTable run_balancedness(const ExperimentSpec& spec);
CsvTable run_compare_coreset(const ExperimentSpec& spec);
CsvTable run_lower_bound_mc(const ExperimentSpec& spec);
CsvTable run_weak_coreset_mc(const ExperimentSpec& spec);
CsvTable run_experiment(const ExperimentSpec& spec);

/// Runs body(i) for i in [0, count) on `threads` workers (0 reads UKM_THREADS).
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace ukm
