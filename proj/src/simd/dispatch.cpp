#include <atomic>
#include <cstdlib>
#include <string_view>

#include "ukm/simd.hpp"

namespace ukm::simd {

#ifdef UKM_HAVE_AVX2
const KernelTable& avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_kernels() noexcept {
#ifdef UKM_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("UKM_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
  if (const KernelTable* avx2 = avx2_kernels()) return avx2;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& kernels() noexcept {
  return *active().load(std::memory_order_acquire);
}

bool select_kernels(std::string_view name) noexcept {
  const KernelTable* table = nullptr;
  if (name == "scalar") {
    table = &scalar_kernels();
  } else if (name == "avx2") {
    table = avx2_kernels();
  } else if (name == "auto") {
    table = avx2_kernels() ? avx2_kernels() : &scalar_kernels();
  }
  if (table == nullptr) return false;
  active().store(table, std::memory_order_release);
  return true;
}

}  // namespace ukm::simd
