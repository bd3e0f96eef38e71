#pragma once

// Data-parallel inner loops shared by every distance-heavy routine.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. Variants are required to be bit-identical: per-element arithmetic
// follows the same operation order, and reductions use four interleaved
// partial sums combined as (s0 + s1) + (s2 + s3) followed by the sequential
// tail. The active table is chosen once at startup (CPU detection, overridable
// through the UKM_SIMD environment variable: "scalar", "avx2" or "auto").

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ukm::simd {

struct KernelTable {
  const char* name;

  // out[i] = sqrt(sum_d (coords[d * stride + i] - query[d])^2) for i < n.
  void (*euclid_row)(const double* coords, std::size_t n, std::size_t stride,
                     std::size_t dim, const double* query, double* out);

  // Folds one more center (at position `pos`) into the nearest/second-nearest
  // tables. Strict comparisons keep the lowest position on ties when centers
  // are folded in increasing position order.
  void (*nearest_update)(const double* row, std::size_t n, std::uint32_t pos,
                         double* d1, std::uint32_t* a1, double* d2,
                         std::uint32_t* a2);

  double (*sum)(const double* v, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);

  // Per-point terms of a single-swap evaluation with candidate row `dc`:
  //   common[i] = w[i] * (min(d1, dc) - d1)
  //   extra[i]  = w[i] * (min(d2, dc) - min(d1, dc))
  void (*swap_terms)(const double* dc, const double* d1, const double* d2,
                     const double* w, std::size_t n, double* common,
                     double* extra);

  // acc[i] = min(acc[i], row[i])
  void (*min_into)(double* acc, const double* row, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The table selected for this process.
const KernelTable& kernels() noexcept;

/// Replaces the active table; returns false if `name` is unavailable.
bool select_kernels(std::string_view name) noexcept;

}  // namespace ukm::simd
