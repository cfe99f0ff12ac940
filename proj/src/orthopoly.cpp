#include "dop/orthopoly.hpp"

#include <cassert>

#include "dop/errors.hpp"

namespace dop {

std::vector<BigReal> CholeskyPair::poly_coeffs(std::size_t n) const {
  assert(n < K());
  std::vector<BigReal> c;
  c.reserve(n + 1);
  for (std::size_t m = 0; m <= n; ++m) c.push_back(S(n, m));
  return c;
}

CholeskyPair cholesky_hankel(const HankelTruncation& g, Prec prec) {
  LdltResult f = ldlt(g.to_mat(), prec);
  return CholeskyPair{invert_unit_lower(f.L), std::move(f.d)};
}

JacobiCoeffs recurrence_coeffs(const CholeskyPair& cp) {
  const std::size_t K = cp.K();
  const Prec p = cp.S.prec();
  if (K < 2) throw DomainError("recurrence extraction needs K >= 2");

  JacobiCoeffs jc;
  jc.beta.reserve(K - 1);
  jc.gamma.assign(1, BigReal(p));  // gamma[0] unused
  for (std::size_t n = 0; n + 1 < K; ++n) {
    BigReal lead = n == 0 ? BigReal(p) : cp.S(n, n - 1);
    jc.beta.push_back(lead - cp.S(n + 1, n));
  }
  for (std::size_t n = 1; n < K; ++n) jc.gamma.push_back(cp.H[n] / cp.H[n - 1]);

  // Cross-check against the band of J = S Lambda S^{-1}: a silent mismatch here
  // means the truncation window leaked into the trusted rows.
  Mat sinv = invert_unit_lower(cp.S);
  Mat slam(K, K, p);  // (S Lambda)_{i,j} = S_{i,j-1}
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 1; j < K; ++j) slam(i, j) = cp.S(i, j - 1);
  Mat j_mat = slam * sinv;

  BigReal scale = j_mat.max_abs();
  BigReal tol = BigReal::two_pow(-(p / 2), p) * max(scale, BigReal(1L, p));
  for (std::size_t n = 0; n + 2 < K; ++n) {
    BigReal db = abs(j_mat(n, n) - jc.beta[n]);
    if (db > tol) {
      throw NumericBreakdown("beta extraction mismatch between S-entry and J-band routes at n = " +
                             std::to_string(n));
    }
    if (n >= 1) {
      BigReal dg = abs(j_mat(n, n - 1) - jc.gamma[n]);
      if (dg > tol) {
        throw NumericBreakdown("gamma extraction mismatch between H-ratio and J-band routes at n = " +
                               std::to_string(n));
      }
    }
  }
  return jc;
}

BigReal eval_poly(const JacobiCoeffs& jc, std::size_t n, const BigReal& z) {
  return eval_poly_all(jc, n, z).back();
}

std::vector<BigReal> eval_poly_all(const JacobiCoeffs& jc, std::size_t n_max, const BigReal& z) {
  if (n_max > jc.max_degree()) {
    throw DomainError("polynomial degree exceeds the trusted recurrence window");
  }
  std::vector<BigReal> p;
  p.reserve(n_max + 1);
  p.emplace_back(1L, z.prec());
  if (n_max == 0) return p;
  p.push_back(z - jc.beta[0]);
  for (std::size_t n = 1; n < n_max; ++n) {
    p.push_back((z - jc.beta[n]) * p[n] - jc.gamma[n] * p[n - 1]);
  }
  return p;
}

BigReal eval_poly_horner(const CholeskyPair& cp, std::size_t n, const BigReal& z) {
  return horner(cp.poly_coeffs(n), z);
}

namespace {

void check_off_lattice(const BigReal& z, Prec prec) {
  BigReal nearest = round_nearest(z);
  if (nearest >= 0 && abs(z - nearest) < BigReal::two_pow(-(prec / 2), prec)) {
    throw PoleError("z is on (or indistinguishable from) a lattice point at this precision");
  }
}

} // namespace

std::vector<BigReal> second_kind_all(const PearsonWeight& w, const JacobiCoeffs& jc,
                                     std::size_t n_max, const BigReal& z, Prec prec,
                                     const TailRule& rule) {
  check_off_lattice(z, prec);
  if (n_max > jc.max_degree()) {
    throw DomainError("second kind degree exceeds the trusted recurrence window");
  }
  const Prec work = prec + rule.guard_bits;
  const BigReal zz = z.rounded_to(work);

  struct State {
    BigReal sum, last_abs;
    int streak = 0;
  };
  const BigReal thresh = BigReal::two_pow(-(prec + rule.extra_bits), work);
  std::vector<State> st(n_max + 1, State{BigReal(work), BigReal(work), 0});

  WeightSweep sweep(w, work);
  for (unsigned long k = 0;; ++k) {
    BigReal kk(static_cast<long>(k), work);
    std::vector<BigReal> pk = eval_poly_all(jc, n_max, kk);
    BigReal base = sweep.value() / (zz - kk);
    bool all_done = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
      BigReal t = pk[n] * base;
      st[n].sum += t;
      BigReal a = abs(t);
      const bool small = a < thresh * abs(st[n].sum);
      const bool descending = st[n].last_abs.is_zero() ? false : a < st[n].last_abs;
      st[n].streak = (small && descending) ? st[n].streak + 1 : 0;
      st[n].last_abs = a;
      all_done = all_done && st[n].streak >= rule.consecutive;
    }
    if (all_done) break;
    if (k >= rule.k_max) {
      throw SlowConvergence("second kind series did not meet the tail rule within k_max");
    }
    sweep.advance();
  }

  std::vector<BigReal> out;
  out.reserve(n_max + 1);
  for (auto& s : st) out.push_back(s.sum.rounded_to(prec));
  return out;
}

BigReal second_kind(const PearsonWeight& w, const JacobiCoeffs& jc, std::size_t n,
                    const BigReal& z, Prec prec, const TailRule& rule) {
  return second_kind_all(w, jc, n, z, prec, rule).back();
}

std::pair<std::vector<BigReal>, std::vector<BigReal>> tridiag_ldl_cf(
    const std::vector<BigReal>& r, const std::vector<BigReal>& s) {
  if (r.empty()) throw DomainError("empty tridiagonal");
  if (s.size() + 1 != r.size()) throw DomainError("off-diagonal length must be size-1");
  std::vector<BigReal> delta;
  std::vector<BigReal> l;
  delta.reserve(r.size());
  l.reserve(s.size());
  delta.push_back(r[0]);
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (delta[n].is_zero()) throw NumericBreakdown("zero pivot in tridiagonal LDL^T");
    l.push_back(s[n] / delta[n]);
    delta.push_back(r[n + 1] - s[n] * s[n] / delta[n]);
  }
  return {l, delta};
}

} // namespace dop
