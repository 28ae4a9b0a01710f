#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "ribbon_klein/errors.hpp"
#include "ribbon_klein/kernels.hpp"

using namespace rk;
namespace kn = rk::kernels;

namespace {

CMatrix random_matrix(int r, int c, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cx(u(rng), u(rng));
  return m;
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

struct BackendGuard {
  kn::Backend saved = kn::active();
  ~BackendGuard() { kn::force(saved); }
};

}  // namespace

TEST_CASE("gemm modes match Eigen") {
  std::mt19937 rng(7);
  for (auto [m, k, n] : {std::tuple{1, 1, 1}, {3, 5, 2}, {4, 4, 4}, {13, 9, 17}, {32, 32, 32}}) {
    const CMatrix a = random_matrix(m, k, rng);
    const CMatrix b = random_matrix(k, n, rng);
    CMatrix c = random_matrix(m, n, rng);
    const Eigen::MatrixXcd ea = to_eigen(a), eb = to_eigen(b), ec0 = to_eigen(c);

    CMatrix c_set = c;
    kn::gemm(kn::GemmMode::set, c_set, a, b);
    CHECK(max_abs_diff(c_set, [&] {
            CMatrix r(m, n);
            Eigen::MatrixXcd e = ea * eb;
            for (int i = 0; i < m; ++i)
              for (int j = 0; j < n; ++j) r(i, j) = e(i, j);
            return r;
          }()) < 1e-12);

    CMatrix c_add = c;
    kn::gemm(kn::GemmMode::add, c_add, a, b);
    CMatrix c_sub = c;
    kn::gemm(kn::GemmMode::sub, c_sub, a, b);
    CMatrix c_neg = c;
    kn::gemm(kn::GemmMode::set_neg, c_neg, a, b);
    Eigen::MatrixXcd prod = ea * eb;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(std::abs(c_add(i, j) - (ec0(i, j) + prod(i, j))) < 1e-12);
        CHECK(std::abs(c_sub(i, j) - (ec0(i, j) - prod(i, j))) < 1e-12);
        CHECK(std::abs(c_neg(i, j) + prod(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("scalar and avx2 backends agree") {
  if (!kn::avx2_supported()) return;
  BackendGuard guard;
  std::mt19937 rng(21);
  for (auto [m, k, n] : {std::tuple{5, 7, 3}, {8, 8, 8}, {21, 33, 19}, {60, 60, 60}}) {
    const CMatrix a = random_matrix(m, k, rng);
    const CMatrix b = random_matrix(k, n, rng);
    const CMatrix c0 = random_matrix(m, n, rng);
    for (auto mode : {kn::GemmMode::set, kn::GemmMode::set_neg, kn::GemmMode::add, kn::GemmMode::sub}) {
      CMatrix cs = c0, cv = c0;
      kn::force(kn::Backend::scalar);
      kn::gemm(mode, cs, a, b);
      kn::force(kn::Backend::avx2);
      kn::gemm(mode, cv, a, b);
      CHECK(max_abs_diff(cs, cv) < 1e-12);
    }
  }

  // caxpy including the odd-length tail
  for (int len : {1, 2, 3, 7, 64, 129}) {
    const CMatrix x = random_matrix(1, len, rng);
    const CMatrix y0 = random_matrix(1, len, rng);
    const cx alpha(0.37, -1.21);
    CMatrix ys = y0, yv = y0;
    kn::force(kn::Backend::scalar);
    kn::caxpy(len, alpha, x.row(0), ys.row(0));
    kn::force(kn::Backend::avx2);
    kn::caxpy(len, alpha, x.row(0), yv.row(0));
    CHECK(max_abs_diff(ys, yv) < 1e-12);
  }
}

TEST_CASE("lu inverse matches Eigen") {
  std::mt19937 rng(3);
  for (int n : {1, 2, 5, 16, 37, 64}) {
    CMatrix a = random_matrix(n, n, rng);
    for (int i = 0; i < n; ++i) a(i, i) += cx(0.0, 2.0);  // keep well-conditioned
    const Eigen::MatrixXcd inv_ref = to_eigen(a).partialPivLu().inverse();
    CMatrix work = a, out;
    std::vector<int> piv;
    kn::invert(work, piv, out);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) err = std::max(err, std::abs(out(i, j) - inv_ref(i, j)));
    CHECK(err < 1e-11);
  }
}

TEST_CASE("lu inverse: identity times inverse") {
  std::mt19937 rng(11);
  const int n = 50;
  CMatrix a = random_matrix(n, n, rng);
  for (int i = 0; i < n; ++i) a(i, i) += cx(0.0, 1.5);
  CMatrix work = a, inv;
  std::vector<int> piv;
  kn::invert(work, piv, inv);
  CMatrix prod(n, n);
  kn::gemm(kn::GemmMode::set, prod, a, inv);
  for (int i = 0; i < n; ++i) prod(i, i) -= 1.0;
  CHECK(max_abs(prod) < 1e-11);
}

TEST_CASE("singular matrix raises NumericalFailure") {
  CMatrix a(3, 3);  // all zeros
  std::vector<int> piv;
  CHECK_THROWS_AS(kn::lu_factor(a, piv), NumericalFailure);
}

TEST_CASE("backend force rejects unsupported request") {
  if (kn::avx2_supported()) return;
  CHECK_THROWS_AS(kn::force(kn::Backend::avx2), std::invalid_argument);
}
