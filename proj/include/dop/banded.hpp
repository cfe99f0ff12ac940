#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"

namespace dop {

/// Square matrix stored by diagonals. Diagonal index d = column - row, so
/// d in [-lo, hi]; entries outside the declared band are identically zero.
/// diagonal(d) is indexed by min(row, col), matching the usual psi^{(d)}_n
/// convention for structure matrices.
class Banded {
public:
  Banded() : n_(0), lo_(0), hi_(0), prec_(kDefaultPrec) {}
  Banded(std::size_t n, std::size_t lo, std::size_t hi, Prec p);

  static Banded shift_up(std::size_t n, Prec p);   // ones on the first superdiagonal
  static Banded identity(std::size_t n, Prec p);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return lo_; }
  std::size_t upper() const { return hi_; }
  Prec prec() const { return prec_; }

  bool in_band(std::size_t i, std::size_t j) const {
    const long d = static_cast<long>(j) - static_cast<long>(i);
    return d >= -static_cast<long>(lo_) && d <= static_cast<long>(hi_);
  }

  const BigReal& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const BigReal& v);

  std::vector<BigReal>& diagonal(long d) {
    assert(d >= -static_cast<long>(lo_) && d <= static_cast<long>(hi_));
    return diags_[static_cast<std::size_t>(d + static_cast<long>(lo_))];
  }
  const std::vector<BigReal>& diagonal(long d) const {
    assert(d >= -static_cast<long>(lo_) && d <= static_cast<long>(hi_));
    return diags_[static_cast<std::size_t>(d + static_cast<long>(lo_))];
  }

  Banded operator*(const Banded& o) const;  // band widths add (clamped to size)
  Banded operator+(const Banded& o) const;  // band union
  Banded plus_scalar_identity(const BigReal& c) const;

  Banded transpose() const;
  Mat to_dense() const;

  /// Builds a banded matrix from the in-band part of a dense one; entries
  /// outside the band are ignored (callers check them beforehand).
  static Banded from_dense(const Mat& m, std::size_t lo, std::size_t hi);

  BigReal max_abs() const;

private:
  std::size_t n_;
  std::size_t lo_, hi_;
  Prec prec_;
  std::vector<std::vector<BigReal>> diags_;  // index d + lo, length n - |d|
  BigReal zero_;
};

/// p(X) for banded X by Horner in the matrix argument; the band grows by
/// (X.lower, X.upper) per multiplication, which keeps truncation windows exact.
Banded banded_poly(const std::vector<BigReal>& coeffs, const Banded& x);

} // namespace dop
