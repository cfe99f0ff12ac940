#include "dop/verify.hpp"

#include <algorithm>
#include <chrono>

#include "dop/errors.hpp"
#include "dop/matrix.hpp"
#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "dop/structure.hpp"
#include "dop/transforms.hpp"

namespace dop {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<BigReal> to_big(const std::vector<double>& xs, Prec p) {
  std::vector<BigReal> out;
  out.reserve(xs.size());
  for (double x : xs) out.emplace_back(x, p);
  return out;
}

/// Forward shifts applicable to this weight.
std::vector<ShiftSpec> forward_shifts(const PearsonWeight& w) {
  std::vector<ShiftSpec> out;
  for (std::size_t i = 1; i <= w.M(); ++i) out.push_back(ShiftSpec::it(i));
  for (std::size_t j = 1; j <= w.N(); ++j) {
    // TJ forward lowers b_j; the shifted weight must stay admissible.
    if (w.params().b[j - 1] > 1L && !(w.params().b[j - 1] == 2L)) out.push_back(ShiftSpec::tj(j));
  }
  out.push_back(ShiftSpec::total());
  return out;
}

/// Inverse shifts with computable Geronimus data.
std::vector<ShiftSpec> inverse_shifts(const PearsonWeight& w) {
  std::vector<ShiftSpec> out;
  for (std::size_t i = 1; i <= w.M(); ++i) {
    if (w.params().a[i - 1] > 1L) out.push_back(ShiftSpec::it(i, false));
  }
  for (std::size_t j = 1; j <= w.N(); ++j) out.push_back(ShiftSpec::tj(j, false));
  bool total_ok = true;
  for (const auto& ai : w.params().a) total_ok = total_ok && ai > 1L;
  for (const auto& bj : w.params().b) total_ok = total_ok && bj > 1L && !(bj == 2L);
  if (total_ok) out.push_back(ShiftSpec::total(false));
  return out;
}

BigReal vec_rel_residual(const std::vector<BigReal>& x, const std::vector<BigReal>& y, Prec p) {
  if (x.size() != y.size()) throw Error("vector length mismatch in residual");
  BigReal scale(p), diff(p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    scale = max(scale, max(abs(x[i]), abs(y[i])));
    diff = max(diff, abs(x[i] - y[i]));
  }
  if (scale.is_zero()) return BigReal(p);
  return diff / scale;
}

/// |lhs - rhs| measured against the size of the terms that formed them; exact
/// cancellations (z = 0 samples) then count as zero residual instead of one.
BigReal term_scaled_residual(const BigReal& lhs, const BigReal& rhs, const BigReal& term_scale) {
  BigReal scale = max(term_scale, max(abs(lhs), abs(rhs)));
  if (scale.is_zero()) return BigReal(lhs.prec());
  return abs(lhs - rhs) / scale;
}

// ---------------------------------------------------------------- pearson

std::vector<VerificationReport> suite_pearson(const PearsonWeight& w, const SuiteOptions& opt) {
  auto t0 = Clock::now();
  const Prec p = opt.prec;
  WeightSweep sweep(w, p);
  BigReal worst(p);
  BigReal prev = sweep.value();
  for (unsigned long k = 0; k <= opt.pearson_kmax; ++k) {
    BigReal kk(static_cast<long>(k), p);
    BigReal rhs = w.sigma_at(kk) * prev;
    sweep.advance();
    prev = sweep.value();
    BigReal lhs = w.theta_at(kk + 1L) * prev;
    if (!rhs.is_zero()) worst = max(worst, abs(lhs - rhs) / abs(rhs));
  }
  return {make_report("pearson", w, opt.K, p, worst, elapsed(t0))};
}

// ---------------------------------------------------------- moments-hyper

std::vector<VerificationReport> suite_moments(const PearsonWeight& w, const SuiteOptions& opt) {
  const Prec p = opt.prec;
  const std::size_t K = std::min<std::size_t>(opt.K, 8);
  const std::size_t M = w.M(), N = w.N();
  const std::size_t Kbig = K + N + M + 2;

  std::vector<VerificationReport> out;
  HankelTruncation g = moment_matrix(w, Kbig, p);

  auto window = [&](const std::vector<BigReal>& rho, std::size_t shift, const BigReal& c,
                    std::size_t size) {
    // (Lambda + cI) G restricted to the leading window, from the flat moments.
    Mat m(size, size, p);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = rho[i + j + shift] + c * rho[i + j];
    return m;
  };

  // (Lambda + a_i I) G = a_i (iT G)
  for (std::size_t i = 1; i <= M; ++i) {
    auto t0 = Clock::now();
    const BigReal& ai = w.params().a[i - 1];
    HankelTruncation gs = moment_matrix(w.shifted(ShiftSpec::it(i)), K, p);
    Mat lhs = window(g.rho, 1, ai, K);
    Mat rhs = gs.to_mat().scale_rows(std::vector<BigReal>(K, ai));
    out.push_back(make_report("gram-hyper-1[a" + std::to_string(i) + "]", w, K, p,
                              rel_residual(lhs, rhs), elapsed(t0)));
  }

  // (Lambda + (b_j-1) I) G = (b_j-1) (Tj G); needs the lowered weight to stay
  // in the admissible family (b_j - 1 positive and off the collision point 1).
  for (std::size_t j = 1; j <= N; ++j) {
    if (!(w.params().b[j - 1] > 1L) || w.params().b[j - 1] == 2L) continue;
    auto t0 = Clock::now();
    BigReal c = w.params().b[j - 1] - 1L;
    HankelTruncation gs = moment_matrix(w.shifted(ShiftSpec::tj(j)), K, p);
    Mat lhs = window(g.rho, 1, c, K);
    Mat rhs = gs.to_mat().scale_rows(std::vector<BigReal>(K, c));
    out.push_back(make_report("gram-hyper-2[b" + std::to_string(j) + "]", w, K, p,
                              rel_residual(lhs, rhs), elapsed(t0)));
  }

  // Lambda G = eta kappa B (T G) B^T
  {
    auto t0 = Clock::now();
    HankelTruncation gs = moment_matrix(w.shifted(ShiftSpec::total()), K, p);
    Mat lhs = window(g.rho, 1, BigReal(p), K);
    Mat bp = pascal_matrix(K, p);
    BigReal c = w.params().eta * w.params().kappa();
    Mat rhs = (bp * gs.to_mat() * bp.transpose()).scale_rows(std::vector<BigReal>(K, c));
    out.push_back(make_report("gram-hyper-3", w, K, p, rel_residual(lhs, rhs), elapsed(t0)));
  }

  // theta(Lambda) G = B sigma(Lambda) G B^T
  {
    auto t0 = Clock::now();
    const auto& th = w.theta_coeffs();
    const auto& sg = w.sigma_coeffs();
    Mat lhs(K, K, p);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) {
        BigReal acc(p);
        for (std::size_t q = 0; q < th.size(); ++q) acc.add_mul(th[q], g.rho[i + j + q]);
        lhs(i, j) = acc;
      }
    Mat x(K, K, p);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) {
        BigReal acc(p);
        for (std::size_t q = 0; q < sg.size(); ++q) acc.add_mul(sg[q], g.rho[i + j + q]);
        x(i, j) = acc;
      }
    Mat bp = pascal_matrix(K, p);
    Mat rhs = bp * x * bp.transpose();
    out.push_back(
        make_report("gram-symmetry", w, K, p, rel_residual(lhs, rhs), elapsed(t0)));
  }
  return out;
}

// -------------------------------------------------------------------- psi

CholeskyPair basis_for(const PearsonWeight& w, std::size_t K, Prec p) {
  return cholesky_hankel(moment_matrix(w, K, p), p);
}

std::vector<VerificationReport> suite_psi(const PearsonWeight& w, const SuiteOptions& opt) {
  auto t0 = Clock::now();
  const Prec p = opt.prec;
  const std::size_t K = std::max(opt.K, 2 * (w.M() + w.N()) + 4);
  CholeskyPair cp = basis_for(w, K, p);
  PsiDetail d = laguerre_freud_detail(w, cp, p);
  double dt = elapsed(t0);
  return {
      make_report("psi-routes", w, K, p, d.route_dev, dt),
      make_report("psi-band", w, K, p, d.band_dev, 0.0),
      make_report("psi-diagonals", w, K, p, d.diag_dev, 0.0),
      make_report("psi-symmetry", w, K, p, d.sym_dev, 0.0),
  };
}

// ---------------------------------------------------------------- p-shift

std::vector<VerificationReport> suite_p_shift(const PearsonWeight& w, const SuiteOptions& opt) {
  auto t0 = Clock::now();
  const Prec p = opt.prec;
  const std::size_t M = w.M(), N = w.N();
  const std::size_t W_needed = opt.n_max + N + 2;
  const std::size_t K = std::max(opt.K, W_needed + N + M + 2);
  CholeskyPair cp = basis_for(w, K, p);
  Banded psi = laguerre_freud(w, cp, p);
  PShiftResiduals r = p_shift_residuals(w, cp, psi, to_big(opt.z_shift, p), opt.n_max);
  double dt = elapsed(t0);
  return {
      make_report("p-shift-backward", w, K, p, r.backward, dt),
      make_report("p-shift-forward", w, K, p, r.forward, 0.0),
  };
}

// ------------------------------------------------------------ christoffel

std::vector<VerificationReport> suite_christoffel(const PearsonWeight& w,
                                                  const SuiteOptions& opt) {
  const Prec p = opt.prec;
  const std::size_t K = std::max(opt.K, opt.n_max_transform + 4);
  CholeskyPair cp = basis_for(w, K, p);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  std::vector<VerificationReport> out;

  for (const ShiftSpec& s : forward_shifts(w)) {
    auto t0 = Clock::now();
    PearsonWeight ws = w.shifted(s);
    CholeskyPair cps = basis_for(ws, K, p);
    JacobiCoeffs jcs = recurrence_coeffs(cps);

    // Closed-form transform vs the shifted weight's own Cholesky rows.
    BigReal coeff_dev(p);
    for (std::size_t n = 0; n <= opt.n_max_transform; ++n) {
      BigReal rem(p);
      std::vector<BigReal> got = christoffel_coeffs(w, cp, s, n, p, &rem);
      std::vector<BigReal> want = cps.poly_coeffs(n);
      coeff_dev = max(coeff_dev, vec_rel_residual(got, want, p));
      BigReal cscale(1L, p);
      for (const auto& cc : want) cscale = max(cscale, abs(cc));
      coeff_dev = max(coeff_dev, abs(rem) / cscale);
    }
    out.push_back(make_report("christoffel-coeffs[" + s.name() + "]", w, K, p, coeff_dev,
                              elapsed(t0)));

    // Connection identities at sample points.
    auto t1 = Clock::now();
    ConnectionPair cm = connection_matrices(w, cp, s, p);
    BigReal conn_dev(p);
    const std::size_t n_hi = opt.n_max_transform;
    for (const BigReal& z : to_big(opt.z_connect, p)) {
      std::vector<BigReal> pz = eval_poly_all(jc, n_hi + 1, z);
      if (s.kind == ShiftSpec::Kind::Total) {
        // omega P(z) = z TP(z-1);  Omega TP(z) = P(z+1)
        std::vector<BigReal> tpm = eval_poly_all(jcs, n_hi + 1, z - 1L);
        std::vector<BigReal> tp = eval_poly_all(jcs, n_hi + 1, z);
        std::vector<BigReal> pzp = eval_poly_all(jc, n_hi + 1, z + 1L);
        for (std::size_t n = 0; n <= n_hi; ++n) {
          BigReal lhs = cm.omega_diag[n] * pz[n] + pz[n + 1];
          BigReal rhs = z * tpm[n];
          BigReal ts = max(abs(cm.omega_diag[n] * pz[n]), abs(pz[n + 1]));
          conn_dev = max(conn_dev, term_scaled_residual(lhs, rhs, ts));
          BigReal lhs2 = tp[n] + (n == 0 ? BigReal(p) : cm.Omega_sub[n - 1] * tp[n - 1]);
          conn_dev = max(conn_dev, rel_residual_scalar(lhs2, pzp[n]));
        }
      } else {
        BigReal c = shift_case_constant(w, s);  // a_i or b_j - 1
        std::vector<BigReal> tp = eval_poly_all(jcs, n_hi + 1, z);
        for (std::size_t n = 0; n <= n_hi; ++n) {
          BigReal lhs = cm.omega_diag[n] * pz[n] + pz[n + 1];
          BigReal rhs = (z + c) * tp[n];
          BigReal ts = max(abs(cm.omega_diag[n] * pz[n]), abs(pz[n + 1]));
          conn_dev = max(conn_dev, term_scaled_residual(lhs, rhs, ts));
          BigReal lhs2 = tp[n] + (n == 0 ? BigReal(p) : cm.Omega_sub[n - 1] * tp[n - 1]);
          conn_dev = max(conn_dev, rel_residual_scalar(lhs2, pz[n]));
        }
      }
    }
    // Kernel-point identity: c * TH_n/H_n = -P_{n+1}(zeta)/P_n(zeta).
    for (std::size_t n = 0; n + 1 <= n_hi; ++n) {
      BigReal ratio = christoffel_ratio(w, jc, s, n, p);
      conn_dev = max(conn_dev, rel_residual_scalar(cm.omega_diag[n], -ratio));
    }
    out.push_back(
        make_report("christoffel-connection[" + s.name() + "]", w, K, p, conn_dev, elapsed(t1)));
  }
  return out;
}

// -------------------------------------------------------------- geronimus

std::vector<VerificationReport> suite_geronimus(const PearsonWeight& w, const SuiteOptions& opt) {
  const Prec p = opt.prec;
  const std::size_t K = std::max(opt.K, opt.n_max_transform + 4);
  CholeskyPair cp = basis_for(w, K, p);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  std::vector<VerificationReport> out;

  for (const ShiftSpec& s : inverse_shifts(w)) {
    auto t0 = Clock::now();
    PearsonWeight wv = w.shifted(s);  // the Geronimus-transformed weight
    CholeskyPair cpv = basis_for(wv, K, p);
    JacobiCoeffs jcv = recurrence_coeffs(cpv);

    // Closed form vs from-scratch Cholesky of the transformed weight.
    BigReal coeff_dev(p);
    std::vector<std::vector<BigReal>> gcoeffs(opt.n_max_transform + 2);
    for (std::size_t n = 0; n <= opt.n_max_transform + 1; ++n) {
      gcoeffs[n] = geronimus_coeffs(w, cp, s, n, p);
      if (n <= opt.n_max_transform) {
        coeff_dev = max(coeff_dev, vec_rel_residual(gcoeffs[n], cpv.poly_coeffs(n), p));
      }
    }
    out.push_back(
        make_report("geronimus-coeffs[" + s.name() + "]", w, K, p, coeff_dev, elapsed(t0)));

    // Round trip: forward Christoffel of the closed-form Geronimus rows
    // reproduces the original polynomials, using only closed-form data.
    auto t1 = Clock::now();
    ShiftSpec fwd = s.inverse();
    BigReal rt_dev(p);
    for (std::size_t n = 0; n <= opt.n_max_transform; ++n) {
      std::vector<BigReal> top = gcoeffs[n + 1];
      std::vector<BigReal> low = gcoeffs[n];
      BigReal zeta(p), root(p);
      switch (s.kind) {
        case ShiftSpec::Kind::IT:
          zeta = -(wv.params().a[s.index - 1]);
          root = zeta;
          break;
        case ShiftSpec::Kind::TJ:
          zeta = -(wv.params().b[s.index - 1] - 1L);
          root = zeta;
          break;
        case ShiftSpec::Kind::Total:
          top = taylor_shift(top, BigReal(1L, p));
          low = taylor_shift(low, BigReal(1L, p));
          root = BigReal(-1L, p);
          break;
      }
      BigReal pn = horner(gcoeffs[n], zeta);
      BigReal pn1 = horner(gcoeffs[n + 1], zeta);
      if (s.kind == ShiftSpec::Kind::Total) {
        pn = horner(gcoeffs[n], BigReal(p));
        pn1 = horner(gcoeffs[n + 1], BigReal(p));
      }
      if (abs(pn) < BigReal::two_pow(-(p / 2), p)) {
        throw HypothesisViolated("round-trip kernel point hits a zero");
      }
      BigReal ratio = pn1 / pn;
      std::vector<BigReal> num = top;
      for (std::size_t i = 0; i < low.size(); ++i) num[i] -= ratio * low[i];
      auto [q, rem] = synthetic_division(num, root);
      std::vector<BigReal> want = cp.poly_coeffs(n);
      rt_dev = max(rt_dev, vec_rel_residual(q, want, p));
      BigReal cscale(1L, p);
      for (const auto& cc : want) cscale = max(cscale, abs(cc));
      rt_dev = max(rt_dev, abs(rem) / cscale);
    }
    out.push_back(
        make_report("geronimus-roundtrip[" + s.name() + "]", w, K, p, rt_dev, elapsed(t1)));

    // Second kind relations for the transformed family.
    auto t2 = Clock::now();
    ConnectionPair cm = connection_matrices(wv, cpv, fwd, p);  // T^{-1}-dressed connection
    BigReal sk_dev(p);
    const std::size_t n_hi = opt.n_max_transform;
    for (const BigReal& z : to_big(opt.z_offlattice, p)) {
      std::vector<BigReal> q = second_kind_all(w, jc, n_hi, z, p);
      std::vector<BigReal> qv = second_kind_all(wv, jcv, n_hi, z, p);
      switch (s.kind) {
        case ShiftSpec::Kind::IT: {
          const BigReal& ai = w.params().a[s.index - 1];
          for (std::size_t n = 0; n <= n_hi; ++n) {
            BigReal lq = q[n] + (n == 0 ? BigReal(p) : cm.Omega_sub[n - 1] * q[n - 1]);
            BigReal lhs = (ai - 1L) * lq;
            BigReal rhs = (z + ai - 1L) * qv[n] - (n == 0 ? cpv.H[0] : BigReal(p));
            sk_dev = max(sk_dev, rel_residual_scalar(lhs, rhs));
          }
          BigReal pt = (BigReal(1L, p) - ai);
          std::vector<BigReal> qpt = second_kind_all(w, jc, n_hi, pt, p);
          for (std::size_t n = 1; n <= n_hi; ++n) {
            sk_dev = max(sk_dev, rel_residual_scalar(cm.Omega_sub[n - 1], -(qpt[n] / qpt[n - 1])));
          }
          sk_dev = max(sk_dev, rel_residual_scalar(cpv.H[0], -(ai - 1L) * qpt[0]));
          break;
        }
        case ShiftSpec::Kind::TJ: {
          const BigReal& bj = w.params().b[s.index - 1];
          for (std::size_t n = 0; n <= n_hi; ++n) {
            BigReal lq = q[n] + (n == 0 ? BigReal(p) : cm.Omega_sub[n - 1] * q[n - 1]);
            BigReal lhs = bj * lq;
            BigReal rhs = (z + bj) * qv[n] - (n == 0 ? cpv.H[0] : BigReal(p));
            sk_dev = max(sk_dev, rel_residual_scalar(lhs, rhs));
          }
          BigReal pt = -bj;
          std::vector<BigReal> qpt = second_kind_all(w, jc, n_hi, pt, p);
          for (std::size_t n = 1; n <= n_hi; ++n) {
            sk_dev = max(sk_dev, rel_residual_scalar(cm.Omega_sub[n - 1], -(qpt[n] / qpt[n - 1])));
          }
          sk_dev = max(sk_dev, rel_residual_scalar(cpv.H[0], -bj * qpt[0]));
          break;
        }
        case ShiftSpec::Kind::Total: {
          BigReal ups = w.params().upsilon();
          std::vector<BigReal> qm = second_kind_all(w, jc, n_hi, z - 1L, p);
          std::vector<BigReal> pm = eval_poly_all(jc, n_hi, z - 1L);
          std::vector<BigReal> pv = eval_poly_all(jcv, n_hi, z);
          for (std::size_t n = 0; n <= n_hi; ++n) {
            BigReal un = ups * qm[n] - pm[n];
            BigReal um = n == 0 ? BigReal(p) : cm.Omega_sub[n - 1] * (ups * qm[n - 1] - pm[n - 1]);
            BigReal lhs = un + um;
            BigReal rhs = z * qv[n] - pv[n] - (n == 0 ? cpv.H[0] : BigReal(p));
            sk_dev = max(sk_dev, rel_residual_scalar(lhs, rhs));
          }
          // z -> 0 limit reading: T^{-1}H_0 = P_0(-1) - Ups Q_0(-1) = 1 - Ups Q_0(-1).
          std::vector<BigReal> qm1 = second_kind_all(w, jc, 0, BigReal(-1L, p), p);
          sk_dev = max(sk_dev, rel_residual_scalar(cpv.H[0], BigReal(1L, p) - ups * qm1[0]));
          break;
        }
      }
    }
    out.push_back(
        make_report("geronimus-second-kind[" + s.name() + "]", w, K, p, sk_dev, elapsed(t2)));
  }
  return out;
}

// ------------------------------------------------------------------ lu/ul

std::vector<VerificationReport> suite_lu(const PearsonWeight& w, const SuiteOptions& opt) {
  const Prec p = opt.prec;
  const std::size_t K = opt.K;
  CholeskyPair cp = basis_for(w, K, p);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  Banded j = jacobi_banded(jc, K, p);
  std::vector<VerificationReport> out;

  for (const ShiftSpec& s : forward_shifts(w)) {
    auto t0 = Clock::now();
    JacobiFactors f = jacobi_factorize(w, cp, s, FactorizeMode::LU, p);
    Banded prod = f.L * f.U;
    BigReal c = s.kind == ShiftSpec::Kind::Total ? BigReal(p) : shift_case_constant(w, s);
    Banded target = j.plus_scalar_identity(c);
    const std::size_t V = K - 1;  // J row K-1 is untrusted
    BigReal dev = rel_residual(prod.to_dense().leading(V), target.to_dense().leading(V));
    out.push_back(make_report("lu[" + s.name() + "]", w, K, p, dev, elapsed(t0)));

    // Continued-fraction pivots of (J + cI)H against the factor data.
    auto t1 = Clock::now();
    std::vector<BigReal> r, sdiag;
    for (std::size_t n = 0; n < V; ++n) r.push_back((jc.beta[n] + c) * cp.H[n]);
    for (std::size_t n = 0; n + 1 < V; ++n) sdiag.push_back(cp.H[n + 1]);
    auto [l, delta] = tridiag_ldl_cf(r, sdiag);
    BigReal cf_dev(p);
    for (std::size_t n = 0; n + 1 < V; ++n) {
      cf_dev = max(cf_dev, rel_residual_scalar(l[n], f.L.diagonal(-1)[n]));
    }
    for (std::size_t n = 0; n < V; ++n) {
      cf_dev = max(cf_dev, rel_residual_scalar(delta[n], f.U.diagonal(0)[n] * cp.H[n]));
    }
    // Dense elimination of the same tridiagonal window.
    Mat tri(V, V, p);
    for (std::size_t n = 0; n < V; ++n) tri(n, n) = r[n];
    for (std::size_t n = 0; n + 1 < V; ++n) {
      tri(n, n + 1) = sdiag[n];
      tri(n + 1, n) = sdiag[n];
    }
    LdltResult dense = ldlt_signed(tri, p, BigReal::two_pow(-(p / 2), p) * tri.max_abs());
    for (std::size_t n = 0; n < V; ++n) {
      cf_dev = max(cf_dev, rel_residual_scalar(delta[n], dense.d[n]));
    }
    out.push_back(make_report("lu-cf[" + s.name() + "]", w, K, p, cf_dev, elapsed(t1)));
  }
  return out;
}

std::vector<VerificationReport> suite_ul(const PearsonWeight& w, const SuiteOptions& opt) {
  const Prec p = opt.prec;
  const std::size_t K = opt.K;
  CholeskyPair cp = basis_for(w, K, p);
  std::vector<VerificationReport> out;

  for (const ShiftSpec& s : forward_shifts(w)) {
    auto t0 = Clock::now();
    JacobiFactors f = jacobi_factorize(w, cp, s, FactorizeMode::UL, p);
    Banded prod = f.U * f.L;
    PearsonWeight ws = w.shifted(s);
    CholeskyPair cps = basis_for(ws, K, p);
    JacobiCoeffs jcs = recurrence_coeffs(cps);
    Banded js = jacobi_banded(jcs, K, p);
    Banded target = js.plus_scalar_identity(f.case_constant);
    const std::size_t V = std::min<std::size_t>(8, K - 1);
    BigReal dev = rel_residual(prod.to_dense().leading(V), target.to_dense().leading(V));
    out.push_back(make_report("ul[" + s.name() + "]", w, K, p, dev, elapsed(t0)));
  }
  return out;
}

// ----------------------------------------------------------------- uvarov

std::vector<VerificationReport> suite_uvarov(const PearsonWeight& w, const SuiteOptions& opt) {
  auto t0 = Clock::now();
  const Prec p = opt.prec;
  const std::size_t M = w.M(), N = w.N();
  const std::size_t n_hi = opt.n_max_transform;
  const std::size_t W_needed = n_hi + std::max(M, N + 1) + 1;
  const std::size_t K = std::max(opt.K, W_needed + N + M + 2);
  CholeskyPair cp = basis_for(w, K, p);
  Banded psi = laguerre_freud(w, cp, p);
  UvarovResiduals r =
      uvarov_second_kind_check(w, cp, psi, to_big(opt.z_offlattice, p), n_hi, p);
  double dt = elapsed(t0);
  return {
      make_report("uvarov-banded-theta", w, K, p, r.banded_theta, dt),
      make_report("uvarov-banded-sigma", w, K, p, r.banded_sigma, 0.0),
      make_report("uvarov-correction-theta", w, K, p, r.correction_theta, 0.0),
      make_report("uvarov-correction-sigma", w, K, p, r.correction_sigma, 0.0),
      make_report("uvarov-resolvent-plus", w, K, p, r.resolvent_plus, 0.0),
      make_report("uvarov-resolvent-minus", w, K, p, r.resolvent_minus, 0.0),
  };
}

// --------------------------------------------------------------- quasidet

std::vector<VerificationReport> suite_quasidet(const PearsonWeight& w, const SuiteOptions& opt) {
  auto t0 = Clock::now();
  const Prec p = opt.prec;
  const std::size_t M = w.M(), N = w.N();
  const std::size_t n_hi = opt.n_max_transform;
  const std::size_t W_needed = n_hi + N + 2;
  const std::size_t K = std::max(opt.K, W_needed + N + M + 2);
  CholeskyPair cp = basis_for(w, K, p);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  Banded psi = laguerre_freud(w, cp, p);

  BigReal back_dev(p), fwd_dev(p);
  for (const BigReal& z : to_big(opt.z_quasidet, p)) {
    std::vector<BigReal> pz = eval_poly_all(jc, n_hi + N + 1, z);
    std::vector<BigReal> pzm = eval_poly_all(jc, n_hi + N + 1, z - 1L);
    std::vector<BigReal> pzp = eval_poly_all(jc, n_hi + N + 1, z + 1L);
    for (std::size_t n = std::max(M, N + 1); n <= n_hi; ++n) {
      // backward: Theta* = theta(z) P_n(z-1) = Psi row sum
      BigReal qd = shifted_poly_determinantal(w, cp, n, z, -1, p);
      BigReal direct = w.theta_at(z) * pzm[n];
      BigReal via_psi(p);
      for (std::size_t m = (n >= M ? n - M : 0); m <= n + N + 1; ++m) {
        if (!psi.in_band(n, m)) continue;
        via_psi += psi.at(n, m) * pz[m] / cp.H[m];
      }
      back_dev = max(back_dev, rel_residual_scalar(qd, direct));
      back_dev = max(back_dev, rel_residual_scalar(qd, via_psi));

      // forward: Theta* = (sigma(z)/eta) P_n(z+1)
      BigReal qdf = shifted_poly_determinantal(w, cp, n, z, +1, p);
      BigReal directf = w.sigma_at(z) * pzp[n] / w.params().eta;
      BigReal via_psif(p);
      for (std::size_t m = (n >= N + 1 ? n - N - 1 : 0); m <= n + M; ++m) {
        if (!psi.in_band(m, n)) continue;
        via_psif += psi.at(m, n) * pz[m] / cp.H[m];
      }
      via_psif /= w.params().eta;
      fwd_dev = max(fwd_dev, rel_residual_scalar(qdf, directf));
      fwd_dev = max(fwd_dev, rel_residual_scalar(qdf, via_psif));
    }
  }
  double dt = elapsed(t0);
  return {
      make_report("quasidet-backward", w, K, p, back_dev, dt),
      make_report("quasidet-forward", w, K, p, fwd_dev, 0.0),
  };
}

} // namespace

std::vector<VerificationReport> verify_identity(const PearsonWeight& w, const std::string& name,
                                                const SuiteOptions& opt) {
  if (name == "pearson") return suite_pearson(w, opt);
  if (name == "moments-hyper") return suite_moments(w, opt);
  if (name == "psi") return suite_psi(w, opt);
  if (name == "p-shift") return suite_p_shift(w, opt);
  if (name == "christoffel") return suite_christoffel(w, opt);
  if (name == "geronimus") return suite_geronimus(w, opt);
  if (name == "lu") return suite_lu(w, opt);
  if (name == "ul") return suite_ul(w, opt);
  if (name == "uvarov") return suite_uvarov(w, opt);
  if (name == "quasidet") return suite_quasidet(w, opt);
  throw ConfigError("unknown identity suite: '" + name + "'");
}

std::vector<VerificationReport> verify_selected(const PearsonWeight& w,
                                                const std::vector<std::string>& names,
                                                const SuiteOptions& opt) {
  const std::vector<std::string>& all = identity_names();
  const std::vector<std::string>& sel = names.empty() ? all : names;
  std::vector<VerificationReport> out;
  for (const std::string& n : sel) {
    std::vector<VerificationReport> part = verify_identity(w, n, opt);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

} // namespace dop
