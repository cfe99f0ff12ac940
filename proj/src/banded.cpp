#include "dop/banded.hpp"

#include <algorithm>
#include <cassert>

namespace dop {

Banded::Banded(std::size_t n, std::size_t lo, std::size_t hi, Prec p)
    : n_(n), lo_(std::min(lo, n ? n - 1 : 0)), hi_(std::min(hi, n ? n - 1 : 0)), prec_(p), zero_(p) {
  diags_.reserve(lo_ + hi_ + 1);
  for (long d = -static_cast<long>(lo_); d <= static_cast<long>(hi_); ++d) {
    diags_.emplace_back(n_ - static_cast<std::size_t>(d < 0 ? -d : d), BigReal(p));
  }
}

Banded Banded::shift_up(std::size_t n, Prec p) {
  Banded b(n, 0, 1, p);
  for (auto& v : b.diagonal(1)) v = BigReal(1L, p);
  return b;
}

Banded Banded::identity(std::size_t n, Prec p) {
  Banded b(n, 0, 0, p);
  for (auto& v : b.diagonal(0)) v = BigReal(1L, p);
  return b;
}

const BigReal& Banded::at(std::size_t i, std::size_t j) const {
  assert(i < n_ && j < n_);
  if (!in_band(i, j)) return zero_;
  const long d = static_cast<long>(j) - static_cast<long>(i);
  return diagonal(d)[std::min(i, j)];
}

void Banded::set(std::size_t i, std::size_t j, const BigReal& v) {
  assert(in_band(i, j));
  const long d = static_cast<long>(j) - static_cast<long>(i);
  diagonal(d)[std::min(i, j)] = v;
}

Banded Banded::operator*(const Banded& o) const {
  assert(n_ == o.n_);
  const Prec p = prec_ > o.prec_ ? prec_ : o.prec_;
  Banded r(n_, lo_ + o.lo_, hi_ + o.hi_, p);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t jlo = i >= r.lo_ ? i - r.lo_ : 0;
    const std::size_t jhi = std::min(n_ - 1, i + r.hi_);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      const std::size_t klo = std::max(i >= lo_ ? i - lo_ : 0, j >= o.hi_ ? j - o.hi_ : 0);
      const std::size_t khi = std::min({n_ - 1, i + hi_, j + o.lo_});
      BigReal acc(p);
      for (std::size_t k = klo; k <= khi; ++k) acc.add_mul(at(i, k), o.at(k, j));
      r.set(i, j, acc);
    }
  }
  return r;
}

Banded Banded::operator+(const Banded& o) const {
  assert(n_ == o.n_);
  const Prec p = prec_ > o.prec_ ? prec_ : o.prec_;
  Banded r(n_, std::max(lo_, o.lo_), std::max(hi_, o.hi_), p);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t jlo = i >= r.lo_ ? i - r.lo_ : 0;
    const std::size_t jhi = std::min(n_ - 1, i + r.hi_);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      BigReal v(p);
      if (in_band(i, j)) v += at(i, j);
      if (o.in_band(i, j)) v += o.at(i, j);
      r.set(i, j, v);
    }
  }
  return r;
}

Banded Banded::plus_scalar_identity(const BigReal& c) const {
  Banded r = *this;
  auto& d0 = r.diagonal(0);
  for (auto& v : d0) v += c;
  return r;
}

Banded Banded::transpose() const {
  Banded r(n_, hi_, lo_, prec_);
  for (long d = -static_cast<long>(lo_); d <= static_cast<long>(hi_); ++d) {
    r.diagonal(-d) = diagonal(d);
  }
  return r;
}

Mat Banded::to_dense() const {
  Mat m(n_, n_, prec_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t jlo = i >= lo_ ? i - lo_ : 0;
    const std::size_t jhi = std::min(n_ - 1, i + hi_);
    for (std::size_t j = jlo; j <= jhi; ++j) m(i, j) = at(i, j);
  }
  return m;
}

Banded Banded::from_dense(const Mat& m, std::size_t lo, std::size_t hi) {
  assert(m.rows() == m.cols());
  Banded b(m.rows(), lo, hi, m.prec());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const std::size_t jlo = i >= b.lo_ ? i - b.lo_ : 0;
    const std::size_t jhi = std::min(m.rows() - 1, i + b.hi_);
    for (std::size_t j = jlo; j <= jhi; ++j) b.set(i, j, m(i, j));
  }
  return b;
}

BigReal Banded::max_abs() const {
  BigReal m(prec_);
  for (const auto& diag : diags_) {
    for (const auto& v : diag) {
      BigReal av = abs(v);
      if (av > m) m = av;
    }
  }
  return m;
}

Banded banded_poly(const std::vector<BigReal>& coeffs, const Banded& x) {
  const Prec p = x.prec();
  if (coeffs.empty()) return Banded(x.size(), 0, 0, p);
  Banded r(x.size(), 0, 0, p);
  for (auto& v : r.diagonal(0)) v = coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
    r = r * x;
    r = r.plus_scalar_identity(coeffs[j]);
  }
  return r;
}

} // namespace dop
