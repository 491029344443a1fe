#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_detail.hpp"
#include "toa/kernels.hpp"

namespace toa::kernels {

namespace {

const KernelTable kScalar{"scalar", detail::axpy_scalar, detail::dotc_scalar,
                          detail::gemv_scalar, detail::gemm_scalar};

#if defined(TOA_HAVE_AVX2_KERNELS)
const KernelTable kAvx2{"avx2", detail::axpy_avx2, detail::dotc_avx2,
                        detail::gemv_avx2, detail::gemm_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  const KernelTable* best = &kScalar;
  if (const KernelTable* t = avx2_table()) best = t;
  if (const char* env = std::getenv("TOA_KERNELS")) {
    const std::string_view want{env};
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  return best;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(TOA_HAVE_AVX2_KERNELS)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) {
  const KernelTable* t = nullptr;
  switch (backend) {
    case Backend::scalar:
      t = &kScalar;
      break;
    case Backend::avx2:
      t = avx2_table();
      break;
    case Backend::automatic:
      t = avx2_table() != nullptr ? avx2_table() : &kScalar;
      break;
  }
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace toa::kernels
