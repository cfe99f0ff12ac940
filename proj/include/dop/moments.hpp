#pragma once

#include <cstddef>
#include <vector>

#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Series stop rule: terminate once `consecutive` successive terms are each
/// below 2^{-(prec + extra_bits)} * |partial sum| while the term ratio stays
/// below one. Summation runs with `guard_bits` extra precision and the result
/// is rounded back to the requested precision.
struct TailRule {
  int consecutive = 4;
  long extra_bits = 32;
  long guard_bits = 64;
  unsigned long k_max = 1000000;
};

/// rho_n = sum_k k^n w(k).
BigReal moment(const PearsonWeight& w, unsigned long n, Prec prec, const TailRule& rule = {});

/// Moments rho_0..rho_{2K-2} viewed as the K x K Hankel window G_{n,m} = rho_{n+m}.
/// Single backing array, so the Hankel symmetry is structural.
struct HankelTruncation {
  std::size_t K = 0;
  std::vector<BigReal> rho;  // 2K-1 values

  const BigReal& g(std::size_t n, std::size_t m) const { return rho[n + m]; }
  Mat to_mat() const;
  Prec prec() const { return rho.empty() ? kDefaultPrec : rho[0].prec(); }
};

/// All 2K-1 moments from one sweep over the lattice.
HankelTruncation moment_matrix(const PearsonWeight& w, std::size_t K, Prec prec,
                               const TailRule& rule = {});

/// Hankel determinants Delta_1..Delta_K through the LDL^T pivots
/// (Delta_k = prod_{m<k} H_m).
std::vector<BigReal> hankel_dets(const HankelTruncation& g);

} // namespace dop
