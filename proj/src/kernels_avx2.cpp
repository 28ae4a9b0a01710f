// AVX2/FMA variants of the complex kernels. This TU is compiled with
// -mavx2 -mfma and must only be entered after the runtime cpuid check.
#include <immintrin.h>

#include <algorithm>

#include "ribbon_klein/kernels.hpp"

namespace rk::kernels::avx2 {

namespace {

// acc += a * v for one broadcast complex scalar a = (var, vai) and one vector
// v of two interleaved complex doubles (vs = v with re/im swapped).
inline __m256d cmadd(__m256d var, __m256d vai, __m256d v, __m256d vs, __m256d acc) {
  const __m256d t = _mm256_mul_pd(vai, vs);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(var, v, t));
}

inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }

void caxpy_impl(int n, cx alpha, const cx* x, cx* y) {
  const __m256d var = _mm256_broadcast_sd(reinterpret_cast<const double*>(&alpha));
  const __m256d vai = _mm256_broadcast_sd(reinterpret_cast<const double*>(&alpha) + 1);
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d vx1 = _mm256_loadu_pd(xp + 2 * i + 4);
    __m256d vy0 = _mm256_loadu_pd(yp + 2 * i);
    __m256d vy1 = _mm256_loadu_pd(yp + 2 * i + 4);
    vy0 = cmadd(var, vai, vx0, swap_ri(vx0), vy0);
    vy1 = cmadd(var, vai, vx1, swap_ri(vx1), vy1);
    _mm256_storeu_pd(yp + 2 * i, vy0);
    _mm256_storeu_pd(yp + 2 * i + 4, vy1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    vy = cmadd(var, vai, vx, swap_ri(vx), vy);
    _mm256_storeu_pd(yp + 2 * i, vy);
  }
  if (i < n) {
    const double ar = alpha.real(), ai = alpha.imag();
    const double xr = xp[2 * i], xi = xp[2 * i + 1];
    yp[2 * i] += ar * xr - ai * xi;
    yp[2 * i + 1] += ar * xi + ai * xr;
  }
}

// 4-row x 4-complex-column tile accumulated over the full k extent.
void micro4x4(int K, const cx* a0, const cx* a1, const cx* a2, const cx* a3, const cx* B,
              int ldb, cx* c0, cx* c1, cx* c2, cx* c3, GemmMode mode) {
  __m256d acc00 = _mm256_setzero_pd(), acc01 = _mm256_setzero_pd();
  __m256d acc10 = _mm256_setzero_pd(), acc11 = _mm256_setzero_pd();
  __m256d acc20 = _mm256_setzero_pd(), acc21 = _mm256_setzero_pd();
  __m256d acc30 = _mm256_setzero_pd(), acc31 = _mm256_setzero_pd();
  const double* bp = reinterpret_cast<const double*>(B);
  for (int k = 0; k < K; ++k) {
    const __m256d vb0 = _mm256_loadu_pd(bp + 2 * std::size_t(k) * ldb);
    const __m256d vb1 = _mm256_loadu_pd(bp + 2 * std::size_t(k) * ldb + 4);
    const __m256d vs0 = swap_ri(vb0);
    const __m256d vs1 = swap_ri(vb1);
    const double* e0 = reinterpret_cast<const double*>(a0 + k);
    const double* e1 = reinterpret_cast<const double*>(a1 + k);
    const double* e2 = reinterpret_cast<const double*>(a2 + k);
    const double* e3 = reinterpret_cast<const double*>(a3 + k);
    __m256d var = _mm256_broadcast_sd(e0);
    __m256d vai = _mm256_broadcast_sd(e0 + 1);
    acc00 = cmadd(var, vai, vb0, vs0, acc00);
    acc01 = cmadd(var, vai, vb1, vs1, acc01);
    var = _mm256_broadcast_sd(e1);
    vai = _mm256_broadcast_sd(e1 + 1);
    acc10 = cmadd(var, vai, vb0, vs0, acc10);
    acc11 = cmadd(var, vai, vb1, vs1, acc11);
    var = _mm256_broadcast_sd(e2);
    vai = _mm256_broadcast_sd(e2 + 1);
    acc20 = cmadd(var, vai, vb0, vs0, acc20);
    acc21 = cmadd(var, vai, vb1, vs1, acc21);
    var = _mm256_broadcast_sd(e3);
    vai = _mm256_broadcast_sd(e3 + 1);
    acc30 = cmadd(var, vai, vb0, vs0, acc30);
    acc31 = cmadd(var, vai, vb1, vs1, acc31);
  }
  const __m256d zero = _mm256_setzero_pd();
  double* cp[4] = {reinterpret_cast<double*>(c0), reinterpret_cast<double*>(c1),
                   reinterpret_cast<double*>(c2), reinterpret_cast<double*>(c3)};
  __m256d lo[4] = {acc00, acc10, acc20, acc30};
  __m256d hi[4] = {acc01, acc11, acc21, acc31};
  for (int r = 0; r < 4; ++r) {
    __m256d v0 = lo[r], v1 = hi[r];
    switch (mode) {
      case GemmMode::set:
        break;
      case GemmMode::set_neg:
        v0 = _mm256_sub_pd(zero, v0);
        v1 = _mm256_sub_pd(zero, v1);
        break;
      case GemmMode::add:
        v0 = _mm256_add_pd(_mm256_loadu_pd(cp[r]), v0);
        v1 = _mm256_add_pd(_mm256_loadu_pd(cp[r] + 4), v1);
        break;
      case GemmMode::sub:
        v0 = _mm256_sub_pd(_mm256_loadu_pd(cp[r]), v0);
        v1 = _mm256_sub_pd(_mm256_loadu_pd(cp[r] + 4), v1);
        break;
    }
    _mm256_storeu_pd(cp[r], v0);
    _mm256_storeu_pd(cp[r] + 4, v1);
  }
}

// caxpy-formulated fallback for tile edges.
void edge_rows(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b, int i_begin,
               int i_end, int j_begin, int j_end) {
  const int kk = a.cols();
  const int n = j_end - j_begin;
  if (n <= 0) return;
  const bool negate = (mode == GemmMode::set_neg || mode == GemmMode::sub);
  for (int i = i_begin; i < i_end; ++i) {
    cx* crow = c.row(i) + j_begin;
    if (mode == GemmMode::set || mode == GemmMode::set_neg)
      std::fill_n(crow, n, cx(0.0));
    const cx* arow = a.row(i);
    for (int k = 0; k < kk; ++k) {
      const cx alpha = negate ? -arow[k] : arow[k];
      if (alpha == cx(0.0)) continue;
      caxpy_impl(n, alpha, b.row(k) + j_begin, crow);
    }
  }
}

}  // namespace

void caxpy(int n, cx alpha, const cx* x, cx* y) { caxpy_impl(n, alpha, x, y); }

void gemm(GemmMode mode, CMatrix& c, const CMatrix& a, const CMatrix& b) {
  const int m = a.rows(), kk = a.cols(), n = b.cols();
  const int mb = m - m % 4;
  const int nb = n - n % 4;
  for (int i = 0; i < mb; i += 4) {
    for (int j = 0; j < nb; j += 4)
      micro4x4(kk, a.row(i), a.row(i + 1), a.row(i + 2), a.row(i + 3), b.data() + j, b.cols(),
               c.row(i) + j, c.row(i + 1) + j, c.row(i + 2) + j, c.row(i + 3) + j, mode);
    edge_rows(mode, c, a, b, i, i + 4, nb, n);
  }
  edge_rows(mode, c, a, b, mb, m, 0, n);
}

}  // namespace rk::kernels::avx2
