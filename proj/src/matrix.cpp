#include "dop/matrix.hpp"

#include <cassert>

#include "dop/errors.hpp"

namespace dop {

Mat Mat::identity(std::size_t n, Prec p) {
  Mat m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = BigReal(1L, p);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_);
  const Prec p = prec_ > o.prec_ ? prec_ : o.prec_;
  Mat r(rows_, o.cols_, p);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigReal& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r(i, j).add_mul(aik, o(k, j));
      }
    }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(rows_, cols_, prec_ > o.prec_ ? prec_ : o.prec_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(rows_, cols_, prec_ > o.prec_ ? prec_ : o.prec_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_, prec_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::leading(std::size_t k) const {
  assert(k <= rows_ && k <= cols_);
  Mat r(k, k, prec_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r(i, j) = (*this)(i, j);
  return r;
}

Mat Mat::scale_cols(const std::vector<BigReal>& d) const {
  assert(d.size() == cols_);
  Mat r(rows_, cols_, prec_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) * d[j];
  return r;
}

Mat Mat::scale_rows(const std::vector<BigReal>& d) const {
  assert(d.size() == rows_);
  Mat r(rows_, cols_, prec_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = d[i] * (*this)(i, j);
  return r;
}

std::vector<BigReal> Mat::apply(const std::vector<BigReal>& x) const {
  assert(x.size() == cols_);
  std::vector<BigReal> y(rows_, BigReal(prec_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i].add_mul((*this)(i, j), x[j]);
  return y;
}

BigReal Mat::max_abs() const {
  BigReal m(prec_);
  for (const auto& v : a_) {
    BigReal av = abs(v);
    if (av > m) m = av;
  }
  return m;
}

BigReal max_abs_diff(const Mat& x, const Mat& y) {
  assert(x.rows() == y.rows() && x.cols() == y.cols());
  BigReal m(x.prec());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      BigReal d = abs(x(i, j) - y(i, j));
      if (d > m) m = d;
    }
  return m;
}

BigReal rel_residual(const Mat& x, const Mat& y) {
  BigReal scale = max(x.max_abs(), y.max_abs());
  if (scale.is_zero()) return BigReal(x.prec());
  return max_abs_diff(x, y) / scale;
}

BigReal rel_residual_scalar(const BigReal& x, const BigReal& y) {
  BigReal scale = max(abs(x), abs(y));
  if (scale.is_zero()) return BigReal(x.prec());
  return abs(x - y) / scale;
}

LdltResult ldlt(const Mat& g, Prec prec) {
  assert(g.rows() == g.cols());
  const std::size_t n = g.rows();
  LdltResult res{Mat::identity(n, prec), {}};
  res.d.reserve(n);
  const BigReal floor_tol = BigReal::two_pow(-static_cast<long>(prec) + 16, prec) * g.max_abs();
  for (std::size_t j = 0; j < n; ++j) {
    BigReal dj = g(j, j);
    for (std::size_t k = 0; k < j; ++k) {
      dj -= res.L(j, k) * res.L(j, k) * res.d[k];
    }
    if (!(dj > 0) || abs(dj) < floor_tol) {
      throw NumericBreakdown("LDL^T pivot " + std::to_string(j) +
                             " is not positive at working precision");
    }
    res.d.push_back(dj);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= res.L(i, k) * res.L(j, k) * res.d[k];
      res.L(i, j) = s / dj;
    }
  }
  return res;
}

LdltResult ldlt_signed(const Mat& g, Prec prec, const BigReal& pivot_floor) {
  assert(g.rows() == g.cols());
  const std::size_t n = g.rows();
  LdltResult res{Mat::identity(n, prec), {}};
  res.d.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigReal dj = g(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= res.L(j, k) * res.L(j, k) * res.d[k];
    if (!(abs(dj) > pivot_floor)) {
      throw SingularBlock("symmetric elimination pivot below threshold at step " +
                          std::to_string(j));
    }
    res.d.push_back(dj);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= res.L(i, k) * res.L(j, k) * res.d[k];
      res.L(i, j) = s / dj;
    }
  }
  return res;
}

Mat invert_unit_lower(const Mat& l) {
  const std::size_t n = l.rows();
  Mat s = Mat::identity(n, l.prec());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal acc(l.prec());
      for (std::size_t k = j; k < i; ++k) acc.add_mul(l(i, k), s(k, j));
      s(i, j) = -acc;
    }
  }
  return s;
}

Mat lu_solve(const Mat& a, const Mat& b, const BigReal& pivot_tol) {
  assert(a.rows() == a.cols() && a.rows() == b.rows());
  const std::size_t n = a.rows();
  Mat u = a;
  Mat x = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    BigReal best = abs(u(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      BigReal cand = abs(u(i, col));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (!(best > pivot_tol)) {
      throw SingularBlock("singular leading block (pivot below threshold at column " +
                          std::to_string(col) + ")");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(u(col, j), u(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(piv, j));
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      BigReal f = u(i, col) / u(col, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) u(i, j) -= f * u(col, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(col, j);
    }
  }
  // back substitution
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      BigReal s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= u(ii, k) * x(k, j);
      x(ii, j) = s / u(ii, ii);
    }
  }
  return x;
}

std::vector<BigReal> taylor_shift(const std::vector<BigReal>& coeffs, const BigReal& c) {
  // Repeated synthetic division by (z + c) written as Horner updates.
  std::vector<BigReal> out = coeffs;
  const std::size_t n = coeffs.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) {
      out[j - 1] += c * out[j];
    }
  }
  return out;
}

std::pair<std::vector<BigReal>, BigReal> synthetic_division(const std::vector<BigReal>& coeffs,
                                                            const BigReal& root) {
  if (coeffs.size() <= 1) {
    return {{}, coeffs.empty() ? BigReal(root.prec()) : coeffs[0]};
  }
  const std::size_t deg = coeffs.size() - 1;
  std::vector<BigReal> q(deg, BigReal(root.prec()));
  BigReal carry = coeffs[deg];
  for (std::size_t j = deg; j-- > 0;) {
    q[j] = carry;
    carry = coeffs[j] + root * carry;
  }
  return {q, carry};
}

BigReal horner(const std::vector<BigReal>& coeffs, const BigReal& z) {
  BigReal r(z.prec());
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    r = r * z + coeffs[j];
  }
  return r;
}

} // namespace dop
