#include "ribbon_klein/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ribbon_klein/errors.hpp"

namespace rk::kernels {

#if RK_X86_AVX2_TU
namespace avx2 {
void gemm(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b);
void caxpy(int n, cx alpha, const cx* x, cx* y);
}  // namespace avx2
#endif

bool avx2_supported() {
#if RK_X86_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend resolve_initial() {
  if (const char* env = std::getenv("RIBBON_KLEIN_KERNELS")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2") {
      if (!avx2_supported())
        throw std::invalid_argument("RIBBON_KLEIN_KERNELS=avx2 requested but host lacks AVX2+FMA");
      return Backend::avx2;
    }
    // anything else (including "auto") falls through to detection
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
  static Backend b = resolve_initial();
  return b;
}

}  // namespace

Backend active() { return backend_slot(); }

void force(Backend b) {
  if (b == Backend::avx2 && !avx2_supported())
    throw std::invalid_argument("kernels: AVX2 backend unsupported on this host");
  backend_slot() = b;
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

namespace scalar {

void caxpy(int n, cx alpha, const cx* x, cx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (int i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] += ar * xr - ai * xi;
    ys[2 * i + 1] += ar * xi + ai * xr;
  }
}

// Row-axpy formulation: C[i,:] accumulates A[i,k] * B[k,:].
void gemm(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b) {
  const int m = a.rows(), kk = a.cols(), n = b.cols();
  const bool negate = (mode == GemmMode::set_neg || mode == GemmMode::sub);
  for (int i = 0; i < m; ++i) {
    cx* crow = c.row(i);
    if (mode == GemmMode::set || mode == GemmMode::set_neg)
      std::fill_n(crow, n, cx(0.0));
    const cx* arow = a.row(i);
    for (int k = 0; k < kk; ++k) {
      const cx alpha = negate ? -arow[k] : arow[k];
      if (alpha == cx(0.0)) continue;
      caxpy(n, alpha, b.row(k), crow);
    }
  }
}

}  // namespace scalar

void caxpy(int n, cx alpha, const cx* x, cx* y) {
#if RK_X86_AVX2_TU
  if (active() == Backend::avx2) {
    avx2::caxpy(n, alpha, x, y);
    return;
  }
#endif
  scalar::caxpy(n, alpha, x, y);
}

void gemm(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
    throw std::invalid_argument("gemm: shape mismatch");
#if RK_X86_AVX2_TU
  if (active() == Backend::avx2) {
    avx2::gemm(mode, c, a, b);
    return;
  }
#endif
  scalar::gemm(mode, c, a, b);
}

namespace {
inline double abs1(cx v) { return std::abs(v.real()) + std::abs(v.imag()); }
}  // namespace

void lu_factor(CMatrix& a, std::vector<int>& piv) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("lu_factor: matrix not square");
  piv.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = abs1(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = abs1(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv[k] = p;
    if (best == 0.0)
      throw NumericalFailure("lu_factor: singular pivot at column " + std::to_string(k));
    if (p != k) {
      cx* rk_ = a.row(k);
      cx* rp = a.row(p);
      for (int j = 0; j < n; ++j) std::swap(rk_[j], rp[j]);
    }
    const cx invp = 1.0 / a(k, k);
    const cx* prow = a.row(k);
    for (int i = k + 1; i < n; ++i) {
      cx* arow = a.row(i);
      const cx mult = arow[k] * invp;
      arow[k] = mult;
      if (mult != cx(0.0)) caxpy(n - k - 1, -mult, prow + k + 1, arow + k + 1);
    }
  }
}

void lu_inverse(const CMatrix& lu, const std::vector<int>& piv, CMatrix& out) {
  const int n = lu.rows();
  out.resize(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = 1.0;
  // X := P * I (replay the row swaps)
  for (int k = 0; k < n; ++k) {
    if (piv[k] != k) {
      cx* rk_ = out.row(k);
      cx* rp = out.row(piv[k]);
      for (int j = 0; j < n; ++j) std::swap(rk_[j], rp[j]);
    }
  }
  // forward substitution with unit lower triangle
  for (int i = 1; i < n; ++i) {
    const cx* lrow = lu.row(i);
    cx* xrow = out.row(i);
    for (int k = 0; k < i; ++k)
      if (lrow[k] != cx(0.0)) caxpy(n, -lrow[k], out.row(k), xrow);
  }
  // back substitution with the upper triangle
  for (int i = n - 1; i >= 0; --i) {
    const cx* urow = lu.row(i);
    cx* xrow = out.row(i);
    for (int k = i + 1; k < n; ++k)
      if (urow[k] != cx(0.0)) caxpy(n, -urow[k], out.row(k), xrow);
    const cx invd = 1.0 / urow[i];
    for (int j = 0; j < n; ++j) xrow[j] *= invd;
  }
}

void invert(CMatrix& a, std::vector<int>& piv_scratch, CMatrix& out) {
  lu_factor(a, piv_scratch);
  lu_inverse(a, piv_scratch, out);
}

}  // namespace rk::kernels
