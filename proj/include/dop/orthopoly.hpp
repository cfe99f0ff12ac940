#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"
#include "dop/moments.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Cholesky data of a Hankel window: S lower unitriangular with
/// S G S^T = diag(H). Row n of S holds the monic polynomial coefficients of
/// P_n (low -> high degree, unit leading coefficient).
struct CholeskyPair {
  Mat S;
  std::vector<BigReal> H;

  std::size_t K() const { return H.size(); }
  /// Coefficients of P_n, low -> high degree, length n+1.
  std::vector<BigReal> poly_coeffs(std::size_t n) const;
};

/// Square-root-free symmetric elimination of the Hankel window.
CholeskyPair cholesky_hankel(const HankelTruncation& g, Prec prec);

/// Three-term recurrence data: beta_0..beta_{K-2} and gamma_1..gamma_{K-1}
/// (gamma is stored with gamma[0] = 0 so gamma[n] = gamma_n).
struct JacobiCoeffs {
  std::vector<BigReal> beta;
  std::vector<BigReal> gamma;

  /// Largest degree evaluable through the recurrence.
  std::size_t max_degree() const { return beta.size(); }
};

/// beta_n = S_{n,n-1} - S_{n+1,n}, gamma_n = H_n/H_{n-1}; the beta extraction
/// is cross-checked against the tridiagonal band of J = S Lambda S^{-1} and a
/// mismatch beyond roundoff is reported as NumericBreakdown (truncation leak).
JacobiCoeffs recurrence_coeffs(const CholeskyPair& cp);

/// P_n(z) by the three-term recurrence (P_{-1} = 0, P_0 = 1).
BigReal eval_poly(const JacobiCoeffs& jc, std::size_t n, const BigReal& z);

/// P_0(z)..P_{n_max}(z) in one recurrence pass.
std::vector<BigReal> eval_poly_all(const JacobiCoeffs& jc, std::size_t n_max, const BigReal& z);

/// P_n(z) by Horner on row n of S.
BigReal eval_poly_horner(const CholeskyPair& cp, std::size_t n, const BigReal& z);

/// Q_n(z) = sum_k P_n(k) w(k) / (z - k), z off the lattice. Throws PoleError
/// when z is within 2^{-prec/2} of a lattice point.
BigReal second_kind(const PearsonWeight& w, const JacobiCoeffs& jc, std::size_t n,
                    const BigReal& z, Prec prec, const TailRule& rule = {});

/// Q_0(z)..Q_{n_max}(z) from a single sweep.
std::vector<BigReal> second_kind_all(const PearsonWeight& w, const JacobiCoeffs& jc,
                                     std::size_t n_max, const BigReal& z, Prec prec,
                                     const TailRule& rule = {});

/// LDL^T of a symmetric tridiagonal (r = diagonal, s = off-diagonal):
/// delta_0 = r_0, l_{n+1} = s_n/delta_n, delta_{n+1} = r_{n+1} - s_n^2/delta_n.
/// Iterating these pivots is the continued-fraction form of the factorization.
std::pair<std::vector<BigReal>, std::vector<BigReal>> tridiag_ldl_cf(
    const std::vector<BigReal>& r, const std::vector<BigReal>& s);

} // namespace dop
