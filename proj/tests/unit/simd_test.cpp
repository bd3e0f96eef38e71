#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ukm/simd.hpp"

namespace {

using ukm::simd::KernelTable;

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    avx = ukm::simd::avx2_kernels();
    if (avx == nullptr) GTEST_SKIP() << "AVX2 not available";
  }

  std::vector<double> random_vec(std::size_t n, bool with_ties = false) {
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::vector<double> v(n);
    for (auto& x : v) x = with_ties ? std::round(u(rng) / 20.0) : u(rng);
    return v;
  }

  const KernelTable& scalar = ukm::simd::scalar_kernels();
  const KernelTable* avx = nullptr;
  std::mt19937_64 rng{GetParam() * 7919 + 1};
};

TEST_P(KernelEquivalence, EuclidRow) {
  const std::size_t n = GetParam();
  for (std::size_t dim : {1u, 2u, 3u, 7u}) {
    const auto coords = random_vec(n * dim);
    const auto query = random_vec(dim);
    std::vector<double> a(n), b(n);
    scalar.euclid_row(coords.data(), n, n, dim, query.data(), a.data());
    avx->euclid_row(coords.data(), n, n, dim, query.data(), b.data());
    EXPECT_TRUE(same_bits(a, b)) << "dim " << dim;
  }
}

TEST_P(KernelEquivalence, Reductions) {
  const std::size_t n = GetParam();
  const auto v = random_vec(n), w = random_vec(n);
  EXPECT_TRUE(same_bits(scalar.sum(v.data(), n), avx->sum(v.data(), n)));
  EXPECT_TRUE(same_bits(scalar.dot(v.data(), w.data(), n), avx->dot(v.data(), w.data(), n)));
}

TEST_P(KernelEquivalence, NearestUpdateWithTies) {
  const std::size_t n = GetParam();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d1a(n, inf), d2a(n, inf), d1b(n, inf), d2b(n, inf);
  std::vector<std::uint32_t> a1a(n, 0), a2a(n, 0), a1b(n, 0), a2b(n, 0);
  for (std::uint32_t pos = 0; pos < 5; ++pos) {
    const auto row = random_vec(n, true);
    scalar.nearest_update(row.data(), n, pos, d1a.data(), a1a.data(), d2a.data(), a2a.data());
    avx->nearest_update(row.data(), n, pos, d1b.data(), a1b.data(), d2b.data(), a2b.data());
  }
  EXPECT_TRUE(same_bits(d1a, d1b));
  EXPECT_TRUE(same_bits(d2a, d2b));
  EXPECT_EQ(a1a, a1b);
  EXPECT_EQ(a2a, a2b);
}

TEST_P(KernelEquivalence, SwapTermsAndMin) {
  const std::size_t n = GetParam();
  const auto dc = random_vec(n, true), d1 = random_vec(n, true), d2 = random_vec(n, true);
  const auto w = random_vec(n);
  std::vector<double> ca(n), ea(n), cb(n), eb(n);
  scalar.swap_terms(dc.data(), d1.data(), d2.data(), w.data(), n, ca.data(), ea.data());
  avx->swap_terms(dc.data(), d1.data(), d2.data(), w.data(), n, cb.data(), eb.data());
  EXPECT_TRUE(same_bits(ca, cb));
  EXPECT_TRUE(same_bits(ea, eb));

  auto acc_a = random_vec(n, true), acc_b = acc_a;
  scalar.min_into(acc_a.data(), dc.data(), n);
  avx->min_into(acc_b.data(), dc.data(), n);
  EXPECT_TRUE(same_bits(acc_a, acc_b));
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence,
                         ::testing::Values(0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 1000, 1027));

TEST(KernelDispatch, SelectByName) {
  const auto& before = ukm::simd::kernels();
  EXPECT_TRUE(ukm::simd::select_kernels("scalar"));
  EXPECT_STREQ(ukm::simd::kernels().name, "scalar");
  EXPECT_FALSE(ukm::simd::select_kernels("nonsense"));
  EXPECT_STREQ(ukm::simd::kernels().name, "scalar");
  if (ukm::simd::avx2_kernels() != nullptr) {
    EXPECT_TRUE(ukm::simd::select_kernels("avx2"));
    EXPECT_STREQ(ukm::simd::kernels().name, "avx2");
  }
  EXPECT_TRUE(ukm::simd::select_kernels(before.name));
}

TEST(KernelReference, SumUsesFourInterleavedPartials) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> v(11);
  for (auto& x : v) x = u(rng);
  double s[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < 8; ++i) s[i % 4] += v[i];
  double expected = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = 8; i < 11; ++i) expected += v[i];
  EXPECT_TRUE(same_bits(ukm::simd::scalar_kernels().sum(v.data(), v.size()), expected));
}

}  // namespace
