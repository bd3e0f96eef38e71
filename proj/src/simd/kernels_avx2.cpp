#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "ukm/simd.hpp"

namespace ukm::simd {

// Defined in dispatch.cpp; this TU is the only one compiled with -mavx2.
const KernelTable& avx2_table_impl() noexcept;

namespace {

void euclid_row(const double* coords, std::size_t n, std::size_t stride,
                std::size_t dim, const double* query, double* out) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dim; ++d) {
      const __m256d x = _mm256_loadu_pd(coords + d * stride + i);
      const __m256d diff = _mm256_sub_pd(x, _mm256_set1_pd(query[d]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
  }
  for (std::size_t i = n4; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = coords[d * stride + i] - query[d];
      acc = acc + diff * diff;
    }
    out[i] = std::sqrt(acc);
  }
}

void nearest_update(const double* row, std::size_t n, std::uint32_t pos,
                    double* d1, std::uint32_t* a1, double* d2,
                    std::uint32_t* a2) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(row + i);
    const __m256d v1 = _mm256_loadu_pd(d1 + i);
    const __m256d v2 = _mm256_loadu_pd(d2 + i);
    const __m256d lt1 = _mm256_cmp_pd(r, v1, _CMP_LT_OQ);
    const __m256d lt2 = _mm256_cmp_pd(r, v2, _CMP_LT_OQ);
    const int m1 = _mm256_movemask_pd(lt1);
    const int m2 = _mm256_movemask_pd(lt2);
    if ((m1 | m2) == 0) continue;
    // d2' = lt1 ? d1 : (lt2 ? r : d2);  d1' = lt1 ? r : d1
    const __m256d second = _mm256_blendv_pd(_mm256_blendv_pd(v2, r, lt2), v1, lt1);
    _mm256_storeu_pd(d2 + i, second);
    _mm256_storeu_pd(d1 + i, _mm256_blendv_pd(v1, r, lt1));
    for (int l = 0; l < 4; ++l) {
      if (m1 & (1 << l)) {
        a2[i + l] = a1[i + l];
        a1[i + l] = pos;
      } else if (m2 & (1 << l)) {
        a2[i + l] = pos;
      }
    }
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double r = row[i];
    if (r < d1[i]) {
      d2[i] = d1[i];
      a2[i] = a1[i];
      d1[i] = r;
      a1[i] = pos;
    } else if (r < d2[i]) {
      d2[i] = r;
      a2[i] = pos;
    }
  }
}

double horizontal(__m256d acc) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double sum(const double* v, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  }
  double total = horizontal(acc);
  for (std::size_t i = n4; i < n; ++i) total = total + v[i];
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = horizontal(acc);
  for (std::size_t i = n4; i < n; ++i) total = total + a[i] * b[i];
  return total;
}

void swap_terms(const double* dc, const double* d1, const double* d2,
                const double* w, std::size_t n, double* common, double* extra) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d c = _mm256_loadu_pd(dc + i);
    const __m256d v1 = _mm256_loadu_pd(d1 + i);
    const __m256d v2 = _mm256_loadu_pd(d2 + i);
    const __m256d wt = _mm256_loadu_pd(w + i);
    // min_pd(a, b) == (a < b ? a : b) == std::min(b, a)
    const __m256d m1 = _mm256_min_pd(c, v1);
    const __m256d m2 = _mm256_min_pd(c, v2);
    _mm256_storeu_pd(common + i, _mm256_mul_pd(wt, _mm256_sub_pd(m1, v1)));
    _mm256_storeu_pd(extra + i, _mm256_mul_pd(wt, _mm256_sub_pd(m2, m1)));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double m1 = std::min(d1[i], dc[i]);
    const double m2 = std::min(d2[i], dc[i]);
    common[i] = w[i] * (m1 - d1[i]);
    extra[i] = w[i] * (m2 - m1);
  }
}

void min_into(double* acc, const double* row, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(acc + i, _mm256_min_pd(_mm256_loadu_pd(row + i),
                                            _mm256_loadu_pd(acc + i)));
  }
  for (std::size_t i = n4; i < n; ++i) acc[i] = std::min(acc[i], row[i]);
}

}  // namespace

const KernelTable& avx2_table_impl() noexcept {
  static const KernelTable table{"avx2", euclid_row, nearest_update, sum,
                                 dot,    swap_terms, min_into};
  return table;
}

}  // namespace ukm::simd
