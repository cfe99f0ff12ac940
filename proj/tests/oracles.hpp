#pragma once

// Test-only oracles, independent of the library's computation paths:
// Gamma-based weight evaluation, elementary series, Bell numbers, and a
// brute-force Gram-Schmidt orthogonalization over lattice sums.

#include <cstddef>
#include <vector>

#include "dop/bigreal.hpp"
#include "dop/matrix.hpp"
#include "dop/weights.hpp"

namespace dop::test {

/// w(k) = prod (a_i)_k * eta^k / (k! prod (b_j)_k) through Gamma ratios.
inline BigReal gamma_weight(const PearsonWeight& w, unsigned long k, Prec p) {
  const auto& ps = w.params();
  BigReal kk(static_cast<long>(k), p);
  BigReal num(1L, p);
  for (const auto& ai : ps.a) {
    num *= gamma_fn(ai.rounded_to(p) + kk) / gamma_fn(ai.rounded_to(p));
  }
  num *= pow_ui(ps.eta.rounded_to(p), k);
  BigReal den = gamma_fn(kk + 1L);
  for (const auto& bj : ps.b) {
    den *= gamma_fn(bj.rounded_to(p) + kk) / gamma_fn(bj.rounded_to(p));
  }
  return num / den;
}

/// e^x by the Taylor series, summed until terms fall below 2^{-p-32}.
inline BigReal exp_series(const BigReal& x, Prec p) {
  const Prec wp = p + 64;
  BigReal term(1L, wp), sum(1L, wp);
  BigReal thresh = BigReal::two_pow(-(p + 32), wp);
  for (long k = 1;; ++k) {
    term = term * x.rounded_to(wp) / k;
    sum += term;
    if (abs(term) < thresh * abs(sum) && k > 4) break;
  }
  return sum.rounded_to(p);
}

/// Bell numbers B_0..B_n via the binomial recurrence.
inline std::vector<long> bell_numbers(std::size_t n) {
  std::vector<std::vector<long>> tri{{1}};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<long> row{tri.back().back()};
    for (std::size_t j = 0; j < tri.back().size(); ++j) row.push_back(row.back() + tri.back()[j]);
    tri.push_back(row);
  }
  std::vector<long> bell;
  for (const auto& row : tri) bell.push_back(row.front());
  return bell;
}

struct GramSchmidtOracle {
  std::vector<std::vector<BigReal>> coeffs;  // row n = coefficients of P_n
  std::vector<BigReal> H;                    // squared norms
  std::vector<BigReal> beta;
  std::vector<BigReal> gamma;                // gamma[0] = 0
};

/// Modified Gram-Schmidt on the monomial basis with explicit lattice sums and
/// the Gamma-based weight; shares no code with the Hankel/LDL^T route.
inline GramSchmidtOracle gram_schmidt_oracle(const PearsonWeight& w, std::size_t n_max, Prec p,
                                             unsigned long k_cut = 4000) {
  const Prec wp = p + 64;
  // Precompute weights and powers on the lattice until the tail is negligible
  // for every monomial pair we will need.
  std::vector<BigReal> wk;
  BigReal thresh = BigReal::two_pow(-(wp + 64), wp);
  BigReal scale(1L, wp);
  for (unsigned long k = 0; k <= k_cut; ++k) {
    BigReal v = gamma_weight(w, k, wp);
    BigReal kk(static_cast<long>(k), wp);
    BigReal probe = v * pow_ui(kk, 2 * n_max + 2);
    wk.push_back(v);
    scale = max(scale, probe);
    if (k > 8 && probe < thresh * scale) break;
  }

  auto inner = [&](const std::vector<BigReal>& f, const std::vector<BigReal>& g) {
    BigReal acc(wp);
    for (unsigned long k = 0; k < wk.size(); ++k) {
      BigReal kk(static_cast<long>(k), wp);
      acc += horner(f, kk) * horner(g, kk) * wk[k];
    }
    return acc;
  };

  GramSchmidtOracle out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<BigReal> pn(n + 1, BigReal(wp));
    pn[n] = BigReal(1L, wp);  // monomial z^n
    for (std::size_t m = 0; m < n; ++m) {
      BigReal proj = inner(pn, out.coeffs[m]) / out.H[m];
      for (std::size_t t = 0; t < out.coeffs[m].size(); ++t) {
        pn[t] -= proj * out.coeffs[m][t];
      }
    }
    out.H.push_back(inner(pn, pn));
    out.coeffs.push_back(std::move(pn));
  }
  // beta_n = <z P_n, P_n>/H_n, gamma_n = H_n / H_{n-1}
  out.gamma.push_back(BigReal(p));
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<BigReal> zp(out.coeffs[n].size() + 1, BigReal(wp));
    for (std::size_t t = 0; t < out.coeffs[n].size(); ++t) zp[t + 1] = out.coeffs[n][t];
    out.beta.push_back((inner(zp, out.coeffs[n]) / out.H[n]).rounded_to(p));
    if (n > 0) out.gamma.push_back((out.H[n] / out.H[n - 1]).rounded_to(p));
  }
  for (auto& h : out.H) h = h.rounded_to(p);
  return out;
}

inline BigReal horner_local(const std::vector<BigReal>& coeffs, const BigReal& z) {
  return horner(coeffs, z);
}

} // namespace dop::test
