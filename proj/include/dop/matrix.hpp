#pragma once

#include <cstddef>
#include <vector>

#include "dop/bigreal.hpp"

namespace dop {

/// Dense matrix of BigReal. Sizes here are tiny (truncation windows), so all
/// products are plain O(n^3) loops with fused accumulation.
class Mat {
public:
  Mat() : rows_(0), cols_(0), prec_(kDefaultPrec) {}
  Mat(std::size_t r, std::size_t c, Prec p)
      : rows_(r), cols_(c), prec_(p), a_(r * c, BigReal(p)) {}

  static Mat identity(std::size_t n, Prec p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Prec prec() const { return prec_; }

  BigReal& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat transpose() const;

  /// Leading k x k window.
  Mat leading(std::size_t k) const;

  /// Right-multiplication by diag(d) (scales column j by d[j]).
  Mat scale_cols(const std::vector<BigReal>& d) const;
  /// Left-multiplication by diag(d) (scales row i by d[i]).
  Mat scale_rows(const std::vector<BigReal>& d) const;

  std::vector<BigReal> apply(const std::vector<BigReal>& x) const;

  BigReal max_abs() const;

private:
  std::size_t rows_, cols_;
  Prec prec_;
  std::vector<BigReal> a_;
};

BigReal max_abs_diff(const Mat& x, const Mat& y);

/// max |x-y| / max(|x|,|y|,1ulp-floor): the relative residual used by every
/// identity check in the library.
BigReal rel_residual(const Mat& x, const Mat& y);
BigReal rel_residual_scalar(const BigReal& x, const BigReal& y);

struct LdltResult {
  Mat L;                   // unit lower triangular
  std::vector<BigReal> d;  // pivots
};

/// Symmetric LDL^T without pivoting. Throws NumericBreakdown when a pivot is
/// non-positive or has underflowed to noise level relative to the matrix scale.
LdltResult ldlt(const Mat& g, Prec prec);

/// LDL^T for symmetric but possibly indefinite input; only |pivot| is
/// thresholded. Throws SingularBlock.
LdltResult ldlt_signed(const Mat& g, Prec prec, const BigReal& pivot_floor);

/// Inverse of a unit lower triangular matrix (forward substitution).
Mat invert_unit_lower(const Mat& l);

/// Solves A X = B by partial-pivot LU; pivot threshold is relative to |A|_max.
/// Throws SingularBlock below threshold.
Mat lu_solve(const Mat& a, const Mat& b, const BigReal& pivot_tol);

// Polynomial coefficient helpers (coefficients stored low -> high degree).

/// Coefficients of p(z + c) from those of p(z); exact apart from rounding.
std::vector<BigReal> taylor_shift(const std::vector<BigReal>& coeffs, const BigReal& c);

/// Synthetic division of p by (z - root): p(z) = q(z)(z - root) + rem.
std::pair<std::vector<BigReal>, BigReal> synthetic_division(const std::vector<BigReal>& coeffs,
                                                            const BigReal& root);

BigReal horner(const std::vector<BigReal>& coeffs, const BigReal& z);

} // namespace dop
