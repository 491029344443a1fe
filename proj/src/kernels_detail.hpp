#pragma once

#include "toa/kernels.hpp"

namespace toa::kernels::detail {

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n);
void gemv_scalar(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                 std::size_t cols);
void gemm_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t n,
                 std::size_t k, std::size_t m);

#if defined(TOA_HAVE_AVX2_KERNELS)
void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n);
void gemv_avx2(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
               std::size_t cols);
void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t n,
               std::size_t k, std::size_t m);
#endif

}  // namespace toa::kernels::detail
