#include <algorithm>
#include <cmath>

#include "ukm/simd.hpp"

namespace ukm::simd {
namespace {

void euclid_row(const double* coords, std::size_t n, std::size_t stride,
                std::size_t dim, const double* query, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
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

// Reduction order shared with the vector variants.
double sum(const double* v, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    s[0] = s[0] + v[i];
    s[1] = s[1] + v[i + 1];
    s[2] = s[2] + v[i + 2];
    s[3] = s[3] + v[i + 3];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = n4; i < n; ++i) total = total + v[i];
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) s[l] = s[l] + a[i + l] * b[i + l];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (std::size_t i = n4; i < n; ++i) total = total + a[i] * b[i];
  return total;
}

void swap_terms(const double* dc, const double* d1, const double* d2,
                const double* w, std::size_t n, double* common, double* extra) {
  for (std::size_t i = 0; i < n; ++i) {
    const double m1 = std::min(d1[i], dc[i]);
    const double m2 = std::min(d2[i], dc[i]);
    common[i] = w[i] * (m1 - d1[i]);
    extra[i] = w[i] * (m2 - m1);
  }
}

void min_into(double* acc, const double* row, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = std::min(acc[i], row[i]);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", euclid_row, nearest_update, sum,
                                 dot,      swap_terms, min_into};
  return table;
}

}  // namespace ukm::simd
