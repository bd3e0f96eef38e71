#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ukm/core.hpp"
#include "ukm/error.hpp"
#include "ukm/exact.hpp"
#include "ukm/instances.hpp"

namespace {

using namespace ukm;
using ukm::testing::line;

CenterSet ids(std::vector<PointId> v) { return CenterSet::from_ids(v); }

TEST(DistanceToSet, TieGoesToLowestPosition) {
  const auto X = line({0, 1, 2});
  const CenterSet C({PointRef::coordinates({0.0}), PointRef::coordinates({2.0})});
  const auto r = distance_to_set(X.metric(), PointRef::coordinates({1.0}), C);
  EXPECT_EQ(r.distance, 1.0);
  EXPECT_EQ(r.position, 0u);
}

TEST(DistanceToSet, UniqueMinimum) {
  const auto X = line({0});
  const CenterSet C({PointRef::coordinates({0.0}), PointRef::coordinates({4.0})});
  const auto r = distance_to_set(X.metric(), PointRef::coordinates({5.0}), C);
  EXPECT_EQ(r.distance, 1.0);
  EXPECT_EQ(r.position, 1u);
}

TEST(DistanceToSet, EmptySetIsAnError) {
  const auto X = line({0});
  EXPECT_THROW(distance_to_set(X.metric(), PointRef::index(0), CenterSet()), Error);
}

TEST(Cost, SmallExamples) {
  EXPECT_EQ(cost(line({0, 1, 2}), ids({0, 2})), 1.0);
  EXPECT_EQ(cost(line({0, 1, 2}), ids({0, 1, 2})), 0.0);
}

TEST(Cost, FreeCoordinateCenters) {
  const auto X = line({0, 1, 2});
  EXPECT_EQ(cost(X, CenterSet({PointRef::coordinates({1.0})})), 2.0);
}

TEST(Cost, FarGroupFixedCenters) {
  // 9 far points (100 / 10.1 rounded down), each at distance f = 10 from w.
  const auto inst = gen_far_group(100, 10, 1e6, 1);
  const auto& line_space = dynamic_cast<const EuclideanSpace&>(inst.data.metric());
  std::vector<PointId> c(3);
  for (PointId i = 0; i < inst.data.size(); ++i) {
    const double v = line_space.coordinate(i, 0);
    if (v == 0.0) c[0] = i;
    if (v == 1.0) c[1] = i;
    if (v == 1e6) c[2] = i;
  }
  EXPECT_EQ(cost(inst.data, ids(c)), 90.0);
}

TEST(Cost, MonotoneUnderAddingCenters) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const auto X = line(ukm::testing::random_integers(rng, 15, -50, 50));
    std::vector<PointId> c;
    double last = std::numeric_limits<double>::infinity();
    for (PointId id : distinct_locations(X.metric())) {
      c.push_back(id);
      const double now = cost(X, ids(c));
      EXPECT_LE(now, last);
      last = now;
    }
  }
}

TEST(Cost, DuplicateCentersRejected) {
  const auto X = line({0, 0, 1});
  EXPECT_THROW(cost(X, ids({0, 1})), Error);
  EXPECT_THROW(cost(X, ids({0, 0})), Error);
  EXPECT_THROW(cost(X, ids({7})), Error);
}

TEST(Cluster, Examples) {
  const auto a = cluster(line({0, 1, 10, 11}), ids({0, 2}));
  EXPECT_EQ(a.cluster_sizes, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(a.total_cost, 2.0);
  const auto b = cluster(line({0}), ids({0}));
  EXPECT_EQ(b.cluster_sizes, std::vector<std::size_t>{1});
  EXPECT_EQ(b.total_cost, 0.0);
  const auto c = cluster(line({0, 1}), ids({0, 1}));
  EXPECT_EQ(c.cluster_sizes, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(c.total_cost, 0.0);
}

TEST(Cluster, AgreesWithNaiveOracleOnGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_graph_random(20, 30, 5.0, seed);
    const std::vector<PointId> c = {3, 17, 9};
    const auto cl = cluster(inst.data, ids(c));
    EXPECT_EQ(cl.cluster_sizes, ukm::testing::naive_sizes(inst.data.metric(), c));
    EXPECT_NEAR(cl.total_cost, ukm::testing::naive_cost(inst.data.metric(), c),
                1e-9 * cl.total_cost);
    std::size_t total = 0;
    for (auto s : cl.cluster_sizes) total += s;
    EXPECT_EQ(total, 20u);
  }
}

TEST(Balancedness, SingleCenterIsOne) {
  EXPECT_EQ(solution_balancedness(line({3, 1, 4, 1, 5}), ids({2})).value, 1.0);
}

TEST(Balancedness, HiddenClusterInstance) {
  const auto inst = gen_hidden_cluster(20, 0.5, 1, 3);
  ASSERT_EQ(inst.marked.size(), 5u);
  const PointId zero = [&] {
    for (PointId i = 0;; ++i) if (std::find(inst.marked.begin(), inst.marked.end(), i) == inst.marked.end()) return i;
  }();
  EXPECT_EQ(solution_balancedness(inst.data, ids({zero, inst.marked[0]})).value, 0.5);
}

TEST(Balancedness, SymmetricSplitIsOne) {
  EXPECT_EQ(solution_balancedness(line({0, 0, 10, 10}), ids({0, 2})).value, 1.0);
  const auto X = line({0, 0, 10, 10});
  EXPECT_EQ(dataset_balancedness(X, 2, brute_force_kmedian(X, 2, 0.0).centers).value, 1.0);
}

TEST(Balancedness, TwoOfTenHiddenPoints) {
  // Ten points, two of them at t = 1: clusters of size 2 and 8.
  const auto X = line({0, 0, 0, 0, 1, 0, 0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(dataset_balancedness(X, 2, ids({0, 4})).value, 0.4);
}

TEST(Balancedness, EmptyClusterFlagged) {
  const auto X = line({0, 1, 2});
  const CenterSet C({PointRef::index(0), PointRef::coordinates({100.0})});
  const auto b = solution_balancedness(X, C);
  EXPECT_EQ(b.value, 0.0);
  EXPECT_TRUE(b.empty_cluster);
}

TEST(Balancedness, MatchesExhaustiveRecount) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const auto X = line(ukm::testing::random_integers(rng, 12, 0, 30));
    if (distinct_locations(X.metric()).size() < 3) continue;
    const auto opt = brute_force_kmedian(X, 3, 0.0);
    const auto sizes = ukm::testing::naive_sizes(X.metric(), opt.centers.ids());
    const double expected = *std::min_element(sizes.begin(), sizes.end()) * 3.0 / 12.0;
    EXPECT_DOUBLE_EQ(dataset_balancedness(X, 3, opt.centers).value, expected);
  }
}

TEST(RelativeError, Arithmetic) {
  EXPECT_EQ(*relative_error(1.0, 1.0), 0.0);
  EXPECT_NEAR(*relative_error(1.1, 1.0), 0.1, 1e-15);
  EXPECT_NEAR(*relative_error(0.9, 1.0), -0.1, 1e-15);
  EXPECT_FALSE(relative_error(1.0, 0.0).has_value());
  const auto X = line({0, 1, 10, 11});
  EXPECT_EQ(*relative_error(X, ids({0, 2}), ids({0, 2})), 0.0);
}

TEST(WeightedPointsCost, UsesWeights) {
  WeightedPoints P;
  P.space = std::make_shared<EuclideanSpace>(1, std::vector<std::vector<double>>{{0.0}, {3.0}});
  P.weights = {2.0, 1.0};
  P.source_ids = {0, 1};
  EXPECT_EQ(cost(P, ids({0})), 3.0);
  EXPECT_EQ(solution_balancedness(P, ids({0, 1})).value, 2.0 / 3.0);
}

}  // namespace
