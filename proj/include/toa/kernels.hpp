#pragma once

// Dense complex<double> inner loops. Every kernel has a portable scalar
// reference and, on x86-64, an AVX2/FMA variant picked at runtime from CPUID.
// All buffers are row-major and must not alias unless stated otherwise.

#include <complex>
#include <cstddef>
#include <string_view>

namespace toa::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  // y[i] += a * x[i]
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // y = A x, A is rows x cols
  void (*gemv)(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
               std::size_t cols);
  // C = A B, A is n x k, B is k x m. Zero entries of A are skipped, so the
  // cost scales with nnz(A) * m for the structured operators used here.
  void (*gemm)(const cplx* a, const cplx* b, cplx* c, std::size_t n,
               std::size_t k, std::size_t m);
};

enum class Backend { automatic, scalar, avx2 };

const KernelTable& scalar_table();
// nullptr when the build has no AVX2 variant or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Table used by the rest of the library. Initialised from CPUID on first use;
// the TOA_KERNELS environment variable ("scalar" | "avx2") overrides it.
const KernelTable& active();

// Returns false (and leaves the selection unchanged) if the requested backend
// is unavailable on this machine.
bool select(Backend backend);

}  // namespace toa::kernels
