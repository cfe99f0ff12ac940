#pragma once

#include <cstddef>
#include <vector>

#include "dop/banded.hpp"
#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"
#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "dop/structure.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Connection matrices of a forward contiguous shift: omega is upper
/// bidiagonal (unit superdiagonal), Omega lower unit-bidiagonal. The case
/// constant is a_i, b_j - 1, or eta*kappa for the total shift.
struct ConnectionPair {
  std::vector<BigReal> omega_diag;  // c * TH_n / H_n
  std::vector<BigReal> Omega_sub;   // H_{n+1} / (c * TH_n)
  BigReal case_constant;
  ShiftSpec shift;

  std::size_t K() const { return omega_diag.size(); }
  Mat omega_dense() const;
  Mat Omega_dense() const;
};

/// Builds the pair from H of the weight and H of the shifted weight (the
/// latter recomputed from scratch through its own Hankel window).
ConnectionPair connection_matrices(const PearsonWeight& w, const CholeskyPair& cp,
                                   const ShiftSpec& s, Prec prec);

/// Case constant of a forward shift: a_i, b_j - 1, or eta*kappa.
BigReal shift_case_constant(const PearsonWeight& w, const ShiftSpec& s);

/// Christoffel kernel ratio r_n = P_{n+1}(zeta)/P_n(zeta) with zeta = -a_i,
/// -b_j + 1, or 0 for the total shift. Throws HypothesisViolated when the
/// denominator evaluation is below 2^{-prec/2}.
BigReal christoffel_ratio(const PearsonWeight& w, const JacobiCoeffs& jc, const ShiftSpec& s,
                          std::size_t n, Prec prec);

/// Pointwise Christoffel-transformed polynomial (forward shifts):
///   IT(i):  TP_n(z) = [P_{n+1}(z) - r_n P_n(z)] / (z + a_i)
///   TJ(j):  same with z + b_j - 1
///   Total:  TP_n(z) = [P_{n+1}(z+1) - r_n P_n(z+1)] / (z + 1)
/// Throws PointOnDivisor when z sits on the divisor zero.
BigReal christoffel_poly(const PearsonWeight& w, const CholeskyPair& cp, const ShiftSpec& s,
                         std::size_t n, const BigReal& z, Prec prec);

/// Same transform as exact coefficients (synthetic division; the remainder is
/// checked against roundoff and returned through `remainder`).
std::vector<BigReal> christoffel_coeffs(const PearsonWeight& w, const CholeskyPair& cp,
                                        const ShiftSpec& s, std::size_t n, Prec prec,
                                        BigReal* remainder = nullptr);

/// Massless Geronimus transform (inverse shifts), via second kind functions:
///   IT(i)^-1:  P_n(z) - [Q_n(-a_i+1)/Q_{n-1}(-a_i+1)] P_{n-1}(z)
///   TJ(j)^-1:  P_n(z) - [Q_n(-b_j)/Q_{n-1}(-b_j)] P_{n-1}(z)
///   T^-1:      P_n(z-1) - [(Ups Q_n(-1)-P_n(-1))/(Ups Q_{n-1}(-1)-P_{n-1}(-1))] P_{n-1}(z-1)
/// n = 0 returns 1.
BigReal geronimus_poly(const PearsonWeight& w, const CholeskyPair& cp, const ShiftSpec& s,
                       std::size_t n, const BigReal& z, Prec prec);

std::vector<BigReal> geronimus_coeffs(const PearsonWeight& w, const CholeskyPair& cp,
                                      const ShiftSpec& s, std::size_t n, Prec prec);

enum class FactorizeMode { LU, UL };

/// Bidiagonal factors of the Jacobi LU/UL theorems. In LU mode L*U rebuilds
/// J + cI (c = a_i, b_j - 1, or 0 for the total case); in UL mode U*L rebuilds
/// the shifted-weight Jacobi matrix plus cI (total case: TJ + I).
struct JacobiFactors {
  Banded L;  // unit lower bidiagonal
  Banded U;  // upper bidiagonal, unit superdiagonal
  BigReal case_constant;
};

JacobiFactors jacobi_factorize(const PearsonWeight& w, const CholeskyPair& cp,
                               const ShiftSpec& s, FactorizeMode mode, Prec prec);

/// Last quasi-determinant Theta* [A B; C D] = D - C A^{-1} B. A symmetric
/// block goes through signed LDL^T, anything else through partial-pivot LU;
/// pivot threshold 2^{-prec/2} * |A|_max.
BigReal quasidet_theta_star(const Mat& a, const std::vector<BigReal>& b,
                            const std::vector<BigReal>& c, const BigReal& d, Prec prec);

/// Quasi-determinantal shifted polynomial. direction = -1 returns the value
/// theta(z) P_n(z-1) (rows n-M..n+N+1, requires n >= M); direction = +1
/// returns (sigma(z)/eta) P_n(z+1) (rows n-N-1..n+M, requires n >= N+1).
BigReal shifted_poly_determinantal(const PearsonWeight& w, const CholeskyPair& cp, std::size_t n,
                                   const BigReal& z, int direction, Prec prec);

/// Geronimus-Uvarov resolvents on the Psi window.
struct UvarovResolvents {
  Mat omega_plus;   // Psi^T H^{-1}  ( = Pi sigma(J) )
  Mat omega_minus;  // Psi  H^{-1}  ( = Pi^{-1} theta(J) )
};

UvarovResolvents uvarov_resolvents(const CholeskyPair& cp, const Banded& psi);

/// Bezoutian-type coefficient arrays of (p(z)-p(k))/(z-k):
/// (M_theta)_{ij} = theta_{i+j+1} in (N+1)x(N+1), (M_sigma)_{ij} = sigma_{i+j+1} in MxM.
Mat m_theta(const PearsonWeight& w, Prec p);
Mat m_sigma(const PearsonWeight& w, Prec p);

struct UvarovResiduals {
  BigReal banded_theta;      // theta(z) Q_n(z) = sum Psi_{m,n} Q_m(z-1)/H_m, n > N+1
  BigReal banded_sigma;      // sigma(z) Q_n(z) = sum Psi_{n,m} Q_m(z+1)/H_m, n > M
  BigReal correction_theta;  // low rows against H^{[N+1]} S^{[N+1]-T} M_theta chi(z)
  BigReal correction_sigma;  // low rows against H^{[M]} S^{[M]-T} M_sigma chi(z)
  BigReal resolvent_plus;    // Psi^T H^{-1} vs Pi sigma(J)
  BigReal resolvent_minus;   // Psi H^{-1} vs Pi^{-1} theta(J)
};

UvarovResiduals uvarov_second_kind_check(const PearsonWeight& w, const CholeskyPair& cp,
                                         const Banded& psi, const std::vector<BigReal>& z_samples,
                                         std::size_t n_max, Prec prec);

} // namespace dop
