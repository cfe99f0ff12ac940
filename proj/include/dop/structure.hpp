#pragma once

#include <cstddef>
#include <vector>

#include "dop/banded.hpp"
#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"
#include "dop/orthopoly.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Lower Pascal matrix B_{n,m} = C(n,m); implements the argument shift
/// chi(z+1) = B chi(z) on the monomial basis. Entries are exact integers.
Mat pascal_matrix(std::size_t K, Prec p);
/// B^{-1}: entries (-1)^{n-m} C(n,m).
Mat pascal_inverse(std::size_t K, Prec p);

struct DressedPascal {
  Mat pi;      // Pi = S B S^{-1}, connection P(z+1) = Pi P(z)
  Mat pi_inv;  // Pi^{-1} = S B^{-1} S^{-1}
};

DressedPascal dressed_pascal(const CholeskyPair& cp);

/// Banded Jacobi truncation built from the recurrence coefficients. Row
/// size-1 carries a zero placeholder for the untrusted last beta; the window
/// rules below keep it out of every trusted entry.
Banded jacobi_banded(const JacobiCoeffs& jc, std::size_t size, Prec p);

/// Laguerre-Freud structure matrix with its construction diagnostics.
/// psi lives on the leading window of size `window` = K - N - M - 2 with
/// bands (M, N+1); out-of-band entries are checked against tolerance and then
/// hard-zeroed so downstream banded algebra is exact.
struct PsiDetail {
  Banded psi;
  std::size_t window = 0;
  BigReal route_dev;  // max relative deviation among the four construction formulas
  BigReal band_dev;   // largest out-of-band magnitude relative to |Psi|_max
  BigReal diag_dev;   // extreme-diagonal closed forms vs extracted diagonals
  BigReal sym_dev;    // symmetry defect of H theta(J^T) and sigma(J) H
};

PsiDetail laguerre_freud_detail(const PearsonWeight& w, const CholeskyPair& cp, Prec prec);

/// Checked construction: throws NumericBreakdown if any diagnostic exceeds
/// 2^{-prec/2}, WindowTooSmall if K < N + M + 4.
Banded laguerre_freud(const PearsonWeight& w, const CholeskyPair& cp, Prec prec);

struct PShiftResiduals {
  BigReal backward;  // theta(z) P_n(z-1) = sum_m Psi_{n,m} P_m(z)/H_m
  BigReal forward;   // sigma(z) P_n(z+1) = sum_m Psi_{m,n} P_m(z)/H_m
};

PShiftResiduals p_shift_residuals(const PearsonWeight& w, const CholeskyPair& cp,
                                  const Banded& psi, const std::vector<BigReal>& z_samples,
                                  std::size_t n_max);

} // namespace dop
