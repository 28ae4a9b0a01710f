#pragma once

#include <vector>

#include "ribbon_klein/complex_matrix.hpp"

// Dense complex kernels backing the block solver. A scalar reference
// implementation always exists; an AVX2/FMA variant is selected at runtime on
// capable x86 hosts. Override with RIBBON_KLEIN_KERNELS=scalar|avx2.
namespace rk::kernels {

enum class Backend { scalar, avx2 };

Backend active();
void force(Backend b);          // throws std::invalid_argument if unsupported
bool avx2_supported();
const char* backend_name(Backend b);

enum class GemmMode { set, set_neg, add, sub };

// C = / = - / += / -= A*B
void gemm(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b);

// y += alpha * x over n complex entries
void caxpy(int n, cx alpha, const cx* x, cx* y);

// In-place LU with partial pivoting; piv[k] is the row swapped into k.
// Throws NumericalFailure on an exactly zero pivot.
void lu_factor(CMatrix& a, std::vector<int>& piv);

// out = inverse reconstructed from lu_factor output.
void lu_inverse(const CMatrix& lu, const std::vector<int>& piv, CMatrix& out);

// out = a^-1 (a is destroyed as scratch)
void invert(CMatrix& a, std::vector<int>& piv_scratch, CMatrix& out);

}  // namespace rk::kernels
