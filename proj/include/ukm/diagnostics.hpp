#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ukm/core.hpp"
#include "ukm/sampling.hpp"

namespace ukm {

inline constexpr double kDefaultLambda = 1001.0;

/// Checks of the sampling event: (1) the sample's average cost to C* is at
/// most lambda times the dataset average, and (2) every cluster of C* receives
/// a sample fraction within (1/2, 3/2) times its dataset fraction. The sample
/// is read as an unweighted multiset. OPT is instantiated as cost(X, C*).
struct XiSReport {
  double lambda = kDefaultLambda;
  double beta = 1.0;
  double opt_cost = 0.0;
  double sample_average_cost = 0.0;
  double average_bound = 0.0;
  bool condition1 = false;
  bool condition2 = false;
  std::vector<double> observed_fractions;
  std::vector<double> expected_fractions;

  bool holds() const { return condition1 && condition2; }
};

XiSReport check_xi_s(const Dataset& X, const WeightedSample& S, const CenterSet& C_star,
                     double beta, double lambda = kDefaultLambda);

/// Closeness of C to C*:
///   (b1) (1/n) sum_x dist(C*(x), C) <= 6 lambda OPT / n
///   (b2) max_x |dist(x, C) - dist(x, C*)| <= 6 lambda k OPT / (beta n)
struct GoodCenterReport {
  double opt_cost = 0.0;
  double b1_value = 0.0;
  double b1_bound = 0.0;
  double b2_value = 0.0;
  double b2_bound = 0.0;
  bool b1 = false;
  bool b2 = false;

  bool good() const { return b1 && b2; }
};

GoodCenterReport check_good_center(const Dataset& X, const CenterSet& C,
                                   const CenterSet& C_star, double beta,
                                   double lambda = kDefaultLambda);

/// Per-point cost vector v_x = dist(x, C) - dist(x, C*) and error bound
/// err_x = dist(x, C) + dist(x, C*) + OPT / n, with the sup-norm bound
/// gamma = 12 lambda k OPT / (beta n).
struct CostVectorDiag {
  std::vector<double> v;
  std::vector<double> err;
  double gamma = 0.0;
  double opt_cost = 0.0;
};

CostVectorDiag cost_vector_diag(const Dataset& X, const CenterSet& C,
                                const CenterSet& C_star, double beta,
                                double lambda = kDefaultLambda);

// ---------------------------------------------------------------------------

/// The loose constant carried through the analysis (10 lambda^2); too large to
/// be informative at desk scale, offered as a preset.
inline double analysis_factor(double lambda = kDefaultLambda) { return 10.0 * lambda * lambda; }

struct WeakCoresetOptions {
  double factor = 3.0;
  double budget = 1e7;
};

enum class WeakCoresetStatus {
  holds,
  violated,
  /// No (beta/2)-balanced center set exists on the sample, so the sample
  /// cannot certify any solution.
  no_balanced_solution_on_sample,
};

std::string to_string(WeakCoresetStatus status);

struct WeakCoresetReport {
  WeakCoresetStatus status = WeakCoresetStatus::holds;
  double opt_x = 0.0;          // OPT over beta-balanced sets on X
  double opt_sample = 0.0;     // OPT over (beta/2)-balanced sets on S
  double x_bound = 0.0;        // (1 + factor * epsilon) * opt_x
  std::size_t near_optimal_sets = 0;
  double subsets_evaluated = 0;
  std::optional<CenterSet> witness;
  double witness_cost_x = 0.0;

  bool passed() const { return status == WeakCoresetStatus::holds; }
};

/// Exhaustive check over k-subsets of X's distinct locations: every set that
/// is (beta/2)-balanced on S and within (1 + epsilon) of the best such set on
/// S must cost at most (1 + factor * epsilon) OPT_beta(X) on X. S is read as
/// an unweighted multiset.
WeakCoresetReport verify_weak_coreset(const Dataset& X, const WeightedSample& S,
                                      std::size_t k, double beta, double epsilon,
                                      const WeakCoresetOptions& options = {});

}  // namespace ukm
