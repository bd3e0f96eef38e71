#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ukm/diagnostics.hpp"
#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/instances.hpp"

namespace {

using namespace ukm;
using ukm::testing::line;

WeightedSample whole(const Dataset& X) {
  WeightedSample S;
  for (PointId i = 0; i < X.size(); ++i) S.entries.push_back({i, 1.0});
  return S;
}

WeightedSample of_ids(const std::vector<PointId>& ids) {
  WeightedSample S;
  for (auto id : ids) S.entries.push_back({id, 1.0});
  return S;
}

TEST(XiS, WholeDatasetHolds) {
  const auto inst = gen_gaussian_mixture(3, 10, 1, 50.0, 1.0, 2);
  const auto opt = brute_force_kmedian(inst.data, 3, 0.0);
  const auto r = check_xi_s(inst.data, whole(inst.data), opt.centers, 1.0);
  EXPECT_TRUE(r.condition1);
  EXPECT_TRUE(r.condition2);
  EXPECT_EQ(r.observed_fractions, r.expected_fractions);
  EXPECT_DOUBLE_EQ(r.sample_average_cost, r.opt_cost / 30.0);
}

TEST(XiS, SampleMissingHiddenClusterFailsFractions) {
  const auto inst = gen_hidden_cluster(1000, 0.02, 1, 4);
  std::vector<bool> marked(1000, false);
  for (auto id : inst.marked) marked[id] = true;
  std::vector<PointId> ids;
  for (PointId i = 0; ids.size() < 25; ++i) if (!marked[i]) ids.push_back(i);
  const auto opt = brute_force_kmedian(inst.data, 2, 0.0);
  const auto r = check_xi_s(inst.data, of_ids(ids), opt.centers, 0.02);
  EXPECT_TRUE(r.condition1);
  EXPECT_FALSE(r.condition2);
  EXPECT_FALSE(r.holds());
}

TEST(XiS, AverageCostCondition) {
  // OPT = 2 on four points; a sample of the two costly points averages 1.
  const auto X = line({0, 1, 10, 11});
  const auto C = CenterSet::from_ids(std::vector<PointId>{0, 2});
  const auto S = of_ids({1, 3});
  EXPECT_TRUE(check_xi_s(X, S, C, 1.0, 2.0).condition1);   // 1 <= 2 * 2 / 4
  EXPECT_FALSE(check_xi_s(X, S, C, 1.0, 1.5).condition1);  // 1 > 1.5 * 2 / 4
  EXPECT_THROW(check_xi_s(X, WeightedSample{}, C, 1.0), Error);
}

TEST(GoodCenter, OptimumIsGood) {
  const auto X = line({0, 1, 10, 11});
  const auto opt = brute_force_kmedian(X, 2, 0.0).centers;
  const auto r = check_good_center(X, opt, opt, 1.0);
  EXPECT_TRUE(r.good());
  EXPECT_EQ(r.b1_value, 0.0);
  EXPECT_EQ(r.b2_value, 0.0);
  // Zero-cost optimum: both sides are zero and the checks hold with equality.
  const auto Y = line({0, 0, 5, 5});
  const auto zero = brute_force_kmedian(Y, 2, 0.0).centers;
  EXPECT_TRUE(check_good_center(Y, zero, zero, 1.0).good());
}

TEST(GoodCenter, ShiftedCenterFailsWhenOptimumIsZero) {
  // OPT = 0, so both bounds are 0 and any displacement violates them.
  const auto X = line({0, 0, 5, 5});
  const auto star = CenterSet::from_ids(std::vector<PointId>{0, 2});
  const CenterSet shifted({PointRef::index(0), PointRef::coordinates({6.0})});
  const auto r = check_good_center(X, shifted, star, 1.0);
  EXPECT_FALSE(r.b1);
  EXPECT_FALSE(r.b2);
  EXPECT_EQ(r.b1_value, 0.5);
  EXPECT_EQ(r.b2_value, 1.0);
  EXPECT_EQ(r.b2_bound, 0.0);
}

TEST(CostVector, ErrorIdentity) {
  const auto inst = gen_gaussian_mixture(3, 8, 2, 10.0, 2.0, 5);
  const auto star = brute_force_kmedian(inst.data, 3, 0.0).centers;
  const auto other = CenterSet::from_ids(std::vector<PointId>{0, 1, 2});
  const auto d = cost_vector_diag(inst.data, other, star, 0.5);
  const double n = inst.data.size();
  for (PointId x = 0; x < inst.data.size(); ++x) {
    const double dstar = distance_to_set(inst.data.metric(), PointRef::index(x), star).distance;
    const double lhs = d.v[x] + 2.0 * dstar + d.opt_cost / n;
    EXPECT_NEAR(d.err[x], lhs, 1e-9 * std::max(1.0, d.err[x]));
  }
  EXPECT_DOUBLE_EQ(d.gamma, 12.0 * kDefaultLambda * 3.0 * d.opt_cost / (0.5 * n));
}

TEST(WeakCoreset, WholeDatasetPasses) {
  const auto inst = gen_gaussian_mixture(2, 6, 1, 20.0, 2.0, 3);
  const auto r = verify_weak_coreset(inst.data, whole(inst.data), 2, 1.0, 0.1);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.near_optimal_sets, 1u);
}

TEST(WeakCoreset, SampleMissingHiddenClusterFails) {
  const auto inst = gen_hidden_cluster(20, 0.5, 1, 9);
  std::vector<bool> marked(20, false);
  for (auto id : inst.marked) marked[id] = true;
  std::vector<PointId> ids;
  for (PointId i = 0; i < 20; ++i) if (!marked[i]) ids.push_back(i);
  const auto r = verify_weak_coreset(inst.data, of_ids(ids), 2, 0.5, 0.1);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.status, WeakCoresetStatus::no_balanced_solution_on_sample);
}

TEST(WeakCoreset, SampleMissingFarPairReportsWitness) {
  // OPT at beta = 0.4 is 4 ({0, 10}); the sample favours {0, 1}, which costs 18.
  const auto X = line({0, 0, 0, 0, 1, 1, 1, 1, 10, 10});
  const auto r = verify_weak_coreset(X, of_ids({0, 1, 4, 5}), 2, 0.4, 0.1);
  EXPECT_EQ(r.status, WeakCoresetStatus::violated);
  EXPECT_EQ(r.opt_x, 4.0);
  EXPECT_EQ(r.opt_sample, 0.0);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness_cost_x, 18.0);
  EXPECT_DOUBLE_EQ(r.x_bound, 1.3 * 4.0);
}

TEST(WeakCoreset, BalancedSampleHittingBothClustersPasses) {
  const auto X = line({0, 1, 2, 3, 4, 100, 101, 102, 103, 104});
  const auto r = verify_weak_coreset(X, of_ids({1, 2, 3, 6, 7, 8}), 2, 1.0, 0.2);
  EXPECT_TRUE(r.passed()) << to_string(r.status);
  EXPECT_EQ(r.subsets_evaluated, 45.0);
}

TEST(WeakCoreset, BudgetGuard) {
  std::vector<double> v(60);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  WeakCoresetOptions opts;
  opts.budget = 100;
  try {
    verify_weak_coreset(line(v), of_ids({0, 1}), 2, 1.0, 0.1, opts);
    FAIL() << "expected budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::budget_exceeded);
  }
}

TEST(GoodCenter, NearOptimalBalancedSampleSolutionsAreGood) {
  // On a balanced 12-point instance, whenever the sample event holds, every
  // (1 + eps)-near-optimal (beta / 2)-balanced set on the sample is good.
  const auto X = line({0, 1, 2, 3, 40, 41, 42, 43, 80, 81, 82, 83});
  const std::size_t k = 3;
  const double beta = 1.0, eps = 0.2;
  const auto star = brute_force_kmedian(X, k, 0.0).centers;
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    WeightedSample S = uniform_sample(X, 9, rng());
    if (!check_xi_s(X, S, star, beta).holds()) continue;
    const auto P = aggregate_unweighted(X, S);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::vector<PointId>>> feasible;
    ukm::testing::for_each_subset(X.size(), k, [&](const std::vector<PointId>& c) {
      std::vector<double> w(k, 0.0);
      double s_cost = 0.0;
      for (std::size_t j = 0; j < P.size(); ++j) {
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < k; ++i) {
          if (X.metric().distance(P.source_ids[j], c[i]) <
              X.metric().distance(P.source_ids[j], c[nearest])) nearest = i;
        }
        w[nearest] += P.weights[j];
        s_cost += P.weights[j] * X.metric().distance(P.source_ids[j], c[nearest]);
      }
      for (double cw : w) if (cw * k < 0.5 * beta * 9.0) return;
      feasible.emplace_back(s_cost, c);
      best = std::min(best, s_cost);
    });
    for (const auto& [s_cost, c] : feasible) {
      if (s_cost > (1.0 + eps) * best) continue;
      ++checked;
      EXPECT_TRUE(check_good_center(X, CenterSet::from_ids(c), star, beta).good());
    }
  }
  EXPECT_GT(checked, 0);
}

}  // namespace
