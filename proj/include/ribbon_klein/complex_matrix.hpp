#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rk {

using cx = std::complex<double>;

// Dense row-major complex matrix, contiguous storage, stride == cols.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), d_(std::size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("CMatrix: negative dimension");
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  cx* row(int i) { return d_.data() + std::size_t(i) * cols_; }
  const cx* row(int i) const { return d_.data() + std::size_t(i) * cols_; }
  cx& operator()(int i, int j) { return d_[std::size_t(i) * cols_ + j]; }
  const cx& operator()(int i, int j) const { return d_[std::size_t(i) * cols_ + j]; }
  cx* data() { return d_.data(); }
  const cx* data() const { return d_.data(); }
  std::size_t size() const { return d_.size(); }

  void set_zero() { std::fill(d_.begin(), d_.end(), cx(0.0)); }
  void resize(int rows, int cols) {
    rows_ = rows;
    cols_ = cols;
    d_.assign(std::size_t(rows) * cols, cx(0.0));
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cx> d_;
};

inline double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline CMatrix transpose(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

inline cx trace(const CMatrix& a) {
  cx t = 0.0;
  for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

}  // namespace rk
