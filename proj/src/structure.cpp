#include "dop/structure.hpp"

#include <cassert>

#include "dop/errors.hpp"

namespace dop {

Mat pascal_matrix(std::size_t K, Prec p) {
  Mat b(K, K, p);
  for (std::size_t n = 0; n < K; ++n) {
    b(n, 0) = BigReal(1L, p);
    for (std::size_t m = 1; m <= n; ++m) {
      b(n, m) = (m < n ? b(n - 1, m) : BigReal(p)) + b(n - 1, m - 1);
    }
  }
  return b;
}

Mat pascal_inverse(std::size_t K, Prec p) {
  Mat b = pascal_matrix(K, p);
  for (std::size_t n = 0; n < K; ++n)
    for (std::size_t m = 0; m < n; ++m) {
      if ((n - m) % 2 == 1) b(n, m) = -b(n, m);
    }
  return b;
}

DressedPascal dressed_pascal(const CholeskyPair& cp) {
  const std::size_t K = cp.K();
  const Prec p = cp.S.prec();
  Mat sinv = invert_unit_lower(cp.S);
  Mat b = pascal_matrix(K, p);
  Mat binv = pascal_inverse(K, p);
  return DressedPascal{cp.S * b * sinv, cp.S * binv * sinv};
}

Banded jacobi_banded(const JacobiCoeffs& jc, std::size_t size, Prec p) {
  if (size > jc.gamma.size()) throw WindowTooSmall("Jacobi window exceeds coefficient data");
  Banded j(size, 1, 1, p);
  auto& diag = j.diagonal(0);
  for (std::size_t n = 0; n < size; ++n) {
    diag[n] = n < jc.beta.size() ? jc.beta[n] : BigReal(p);
  }
  auto& sup = j.diagonal(1);
  for (auto& v : sup) v = BigReal(1L, p);
  auto& sub = j.diagonal(-1);
  for (std::size_t n = 0; n + 1 < size; ++n) sub[n] = jc.gamma[n + 1];
  return j;
}

PsiDetail laguerre_freud_detail(const PearsonWeight& w, const CholeskyPair& cp, Prec prec) {
  const std::size_t M = w.M(), N = w.N(), K = cp.K();
  // The exact window must still hold the whole (M, N+1) band plus one row.
  if (K < 2 * (N + M) + 4) throw WindowTooSmall("Psi needs K >= 2(N + M) + 4");
  const std::size_t W = K - N - M - 2;
  const Prec p = prec;

  JacobiCoeffs jc = recurrence_coeffs(cp);
  Banded j = jacobi_banded(jc, K, p);
  Banded jt = j.transpose();

  Banded theta_jt = banded_poly(w.theta_coeffs(), jt);
  Banded sigma_j = banded_poly(w.sigma_coeffs(), j);
  Banded theta_j_plus = banded_poly(w.theta_coeffs(), j.plus_scalar_identity(BigReal(1L, p)));
  Banded sigma_jt_minus = banded_poly(w.sigma_coeffs(), jt.plus_scalar_identity(BigReal(-1L, p)));

  DressedPascal dp = dressed_pascal(cp);
  Mat pit = dp.pi.transpose();

  Mat r1 = dp.pi_inv * theta_jt.to_dense().scale_rows(cp.H);
  Mat r2 = sigma_j.to_dense().scale_cols(cp.H) * pit;
  Mat r3 = theta_j_plus.to_dense() * dp.pi_inv.scale_cols(cp.H);
  Mat r4 = pit.scale_rows(cp.H) * sigma_jt_minus.to_dense();

  Mat w1 = r1.leading(W), w2 = r2.leading(W), w3 = r3.leading(W), w4 = r4.leading(W);
  BigReal route_dev = max(max(rel_residual(w1, w2), rel_residual(w1, w3)), rel_residual(w1, w4));

  BigReal scale = max(w1.max_abs(), BigReal(1L, p));
  BigReal band_dev(p);
  for (std::size_t i = 0; i < W; ++i) {
    for (std::size_t jcol = 0; jcol < W; ++jcol) {
      const long d = static_cast<long>(jcol) - static_cast<long>(i);
      if (d >= -static_cast<long>(M) && d <= static_cast<long>(N) + 1) continue;
      BigReal mag = abs(w1(i, jcol)) / scale;
      if (mag > band_dev) band_dev = mag;
    }
  }

  Banded psi = Banded::from_dense(w1, M, N + 1);

  // Extreme diagonals: psi^{(-M)}_n = eta H_n prod_{k=n+1..n+M} gamma_k,
  // psi^{(N+1)}_n = H_n prod_{k=n+1..n+N+1} gamma_k.
  const BigReal& eta = w.params().eta;
  BigReal diag_dev(p);
  {
    const auto& low = psi.diagonal(-static_cast<long>(M));
    for (std::size_t n = 0; n < low.size(); ++n) {
      BigReal expect = cp.H[n] * eta;
      for (std::size_t k = n + 1; k <= n + M; ++k) expect *= jc.gamma[k];
      diag_dev = max(diag_dev, rel_residual_scalar(low[n], expect));
    }
    const auto& high = psi.diagonal(static_cast<long>(N) + 1);
    for (std::size_t n = 0; n < high.size(); ++n) {
      BigReal expect = cp.H[n];
      for (std::size_t k = n + 1; k <= n + N + 1; ++k) expect *= jc.gamma[k];
      diag_dev = max(diag_dev, rel_residual_scalar(high[n], expect));
    }
  }

  Mat h_theta_jt = theta_jt.to_dense().scale_rows(cp.H).leading(W);
  Mat sigma_j_h = sigma_j.to_dense().scale_cols(cp.H).leading(W);
  BigReal sym_dev = max(rel_residual(h_theta_jt, h_theta_jt.transpose()),
                        rel_residual(sigma_j_h, sigma_j_h.transpose()));

  return PsiDetail{std::move(psi), W, route_dev, band_dev, diag_dev, sym_dev};
}

Banded laguerre_freud(const PearsonWeight& w, const CholeskyPair& cp, Prec prec) {
  PsiDetail d = laguerre_freud_detail(w, cp, prec);
  BigReal tol = BigReal::two_pow(-(prec / 2), prec);
  if (d.route_dev > tol || d.band_dev > tol || d.diag_dev > tol || d.sym_dev > tol) {
    throw NumericBreakdown("Laguerre-Freud construction diagnostics exceed tolerance");
  }
  return d.psi;
}

PShiftResiduals p_shift_residuals(const PearsonWeight& w, const CholeskyPair& cp,
                                  const Banded& psi, const std::vector<BigReal>& z_samples,
                                  std::size_t n_max) {
  const std::size_t M = w.M(), N = w.N();
  const std::size_t W = psi.size();
  if (n_max + N + 1 >= W) throw WindowTooSmall("p-shift check needs Psi rows up to n_max+N+1");
  JacobiCoeffs jc = recurrence_coeffs(cp);
  const Prec p = cp.S.prec();

  PShiftResiduals res{BigReal(p), BigReal(p)};
  for (const BigReal& z : z_samples) {
    std::vector<BigReal> pz = eval_poly_all(jc, n_max + N + 1, z);
    std::vector<BigReal> pzm = eval_poly_all(jc, n_max + N + 1, z - 1L);
    std::vector<BigReal> pzp = eval_poly_all(jc, n_max + N + 1, z + 1L);
    BigReal theta_z = w.theta_at(z);
    BigReal sigma_z = w.sigma_at(z);
    for (std::size_t n = 0; n <= n_max; ++n) {
      // Residuals are measured against the largest term entering either side:
      // at lattice-adjacent samples a P_n value can vanish exactly, and a
      // side-normalized ratio would then compare pure roundoff to itself.
      BigReal back(p), back_scale(p);
      for (std::size_t m = (n >= M ? n - M : 0); m <= n + N + 1; ++m) {
        if (!psi.in_band(n, m)) continue;
        BigReal t = psi.at(n, m) * pz[m] / cp.H[m];
        back_scale = max(back_scale, abs(t));
        back += t;
      }
      BigReal lhs_b = theta_z * pzm[n];
      back_scale = max(back_scale, abs(lhs_b));
      if (!back_scale.is_zero()) {
        res.backward = max(res.backward, abs(lhs_b - back) / back_scale);
      }

      BigReal fwd(p), fwd_scale(p);
      for (std::size_t m = (n >= N + 1 ? n - N - 1 : 0); m <= n + M; ++m) {
        if (!psi.in_band(m, n)) continue;
        BigReal t = psi.at(m, n) * pz[m] / cp.H[m];
        fwd_scale = max(fwd_scale, abs(t));
        fwd += t;
      }
      BigReal lhs_f = sigma_z * pzp[n];
      fwd_scale = max(fwd_scale, abs(lhs_f));
      if (!fwd_scale.is_zero()) {
        res.forward = max(res.forward, abs(lhs_f - fwd) / fwd_scale);
      }
    }
  }
  return res;
}

} // namespace dop
