#include "dop/transforms.hpp"

#include <cassert>

#include "dop/errors.hpp"

namespace dop {

namespace {

BigReal hypothesis_floor(Prec prec) { return BigReal::two_pow(-(prec / 2), prec); }

void require_forward(const ShiftSpec& s, const char* who) {
  if (!s.forward) throw DomainError(std::string(who) + " expects a forward shift");
}

void require_inverse(const ShiftSpec& s, const char* who) {
  if (s.forward) throw DomainError(std::string(who) + " expects an inverse shift");
}

std::vector<BigReal> chi_vector(const BigReal& z, std::size_t len) {
  std::vector<BigReal> v;
  v.reserve(len);
  BigReal cur(1L, z.prec());
  for (std::size_t i = 0; i < len; ++i) {
    v.push_back(cur);
    cur *= z;
  }
  return v;
}

/// Solves S^T x = y for the leading block (S unit lower triangular, so S^T is
/// unit upper triangular; plain back substitution).
std::vector<BigReal> solve_unit_upper_t(const Mat& s, const std::vector<BigReal>& y) {
  const std::size_t n = y.size();
  std::vector<BigReal> x = y;
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= s(k, ii) * x[k];
  }
  return x;
}

} // namespace

Mat ConnectionPair::omega_dense() const {
  const std::size_t n = K();
  const Prec p = omega_diag.empty() ? kDefaultPrec : omega_diag[0].prec();
  Mat m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = omega_diag[i];
    if (i + 1 < n) m(i, i + 1) = BigReal(1L, p);
  }
  return m;
}

Mat ConnectionPair::Omega_dense() const {
  const std::size_t n = K();
  const Prec p = omega_diag.empty() ? kDefaultPrec : omega_diag[0].prec();
  Mat m = Mat::identity(n, p);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = Omega_sub[i];
  return m;
}

BigReal shift_case_constant(const PearsonWeight& w, const ShiftSpec& s) {
  const auto& ps = w.params();
  switch (s.kind) {
    case ShiftSpec::Kind::IT:
      if (s.index < 1 || s.index > ps.M()) throw DomainError("IT index out of range");
      return ps.a[s.index - 1];
    case ShiftSpec::Kind::TJ:
      if (s.index < 1 || s.index > ps.N()) throw DomainError("TJ index out of range");
      return ps.b[s.index - 1] - 1L;
    case ShiftSpec::Kind::Total:
      return ps.eta * ps.kappa();
  }
  throw DomainError("bad shift kind");
}

ConnectionPair connection_matrices(const PearsonWeight& w, const CholeskyPair& cp,
                                   const ShiftSpec& s, Prec prec) {
  require_forward(s, "connection_matrices");
  const std::size_t K = cp.K();
  PearsonWeight ws = w.shifted(s);
  CholeskyPair cps = cholesky_hankel(moment_matrix(ws, K, prec), prec);

  BigReal c = shift_case_constant(w, s);
  ConnectionPair out{{}, {}, c, s};
  out.omega_diag.reserve(K);
  out.Omega_sub.reserve(K - 1);
  for (std::size_t n = 0; n < K; ++n) {
    if (cp.H[n].is_zero() || cps.H[n].is_zero()) {
      throw ZeroDenominator("vanishing H entry in connection matrices");
    }
    out.omega_diag.push_back(c * cps.H[n] / cp.H[n]);
  }
  for (std::size_t n = 0; n + 1 < K; ++n) {
    out.Omega_sub.push_back(cp.H[n + 1] / (c * cps.H[n]));
  }
  return out;
}

BigReal christoffel_ratio(const PearsonWeight& w, const JacobiCoeffs& jc, const ShiftSpec& s,
                          std::size_t n, Prec prec) {
  require_forward(s, "christoffel_ratio");
  const auto& ps = w.params();
  BigReal zeta(prec);
  switch (s.kind) {
    case ShiftSpec::Kind::IT: zeta = -ps.a[s.index - 1]; break;
    case ShiftSpec::Kind::TJ: zeta = -(ps.b[s.index - 1] - 1L); break;
    case ShiftSpec::Kind::Total: break;  // zeta = 0
  }
  std::vector<BigReal> pz = eval_poly_all(jc, n + 1, zeta.rounded_to(prec));
  if (abs(pz[n]) < hypothesis_floor(prec)) {
    throw HypothesisViolated("P_n vanishes at the Christoffel kernel point");
  }
  return pz[n + 1] / pz[n];
}

BigReal christoffel_poly(const PearsonWeight& w, const CholeskyPair& cp, const ShiftSpec& s,
                         std::size_t n, const BigReal& z, Prec prec) {
  JacobiCoeffs jc = recurrence_coeffs(cp);
  BigReal r = christoffel_ratio(w, jc, s, n, prec);
  const auto& ps = w.params();
  BigReal arg = z.rounded_to(prec);
  BigReal divisor(prec);
  switch (s.kind) {
    case ShiftSpec::Kind::IT: divisor = z + ps.a[s.index - 1]; break;
    case ShiftSpec::Kind::TJ: divisor = z + ps.b[s.index - 1] - 1L; break;
    case ShiftSpec::Kind::Total:
      divisor = z + 1L;
      arg = arg + 1L;
      break;
  }
  if (abs(divisor) < hypothesis_floor(prec)) {
    throw PointOnDivisor("evaluation point sits on the divisor zero");
  }
  std::vector<BigReal> pz = eval_poly_all(jc, n + 1, arg);
  return (pz[n + 1] - r * pz[n]) / divisor;
}

std::vector<BigReal> christoffel_coeffs(const PearsonWeight& w, const CholeskyPair& cp,
                                        const ShiftSpec& s, std::size_t n, Prec prec,
                                        BigReal* remainder) {
  JacobiCoeffs jc = recurrence_coeffs(cp);
  BigReal r = christoffel_ratio(w, jc, s, n, prec);
  const auto& ps = w.params();

  std::vector<BigReal> top = cp.poly_coeffs(n + 1);
  std::vector<BigReal> low = cp.poly_coeffs(n);
  BigReal root(prec);
  switch (s.kind) {
    case ShiftSpec::Kind::IT: root = -ps.a[s.index - 1]; break;
    case ShiftSpec::Kind::TJ: root = -(ps.b[s.index - 1] - 1L); break;
    case ShiftSpec::Kind::Total: {
      BigReal one(1L, prec);
      top = taylor_shift(top, one);
      low = taylor_shift(low, one);
      root = BigReal(-1L, prec);
      break;
    }
  }
  std::vector<BigReal> num = top;
  for (std::size_t i = 0; i < low.size(); ++i) num[i] -= r * low[i];
  auto [q, rem] = synthetic_division(num, root);
  if (remainder) *remainder = rem;
  return q;
}

BigReal geronimus_poly(const PearsonWeight& w, const CholeskyPair& cp, const ShiftSpec& s,
                       std::size_t n, const BigReal& z, Prec prec) {
  require_inverse(s, "geronimus_poly");
  if (n == 0) return BigReal(1L, prec);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  const auto& ps = w.params();

  BigReal num(prec), den(prec);
  bool shift_arg = false;
  switch (s.kind) {
    case ShiftSpec::Kind::IT: {
      const BigReal& ai = ps.a[s.index - 1];
      if (!(ai > 1L)) throw DomainError("IT inverse needs a_i > 1");
      BigReal pt = (BigReal(1L, prec) - ai).rounded_to(prec);
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      num = q[n];
      den = q[n - 1];
      break;
    }
    case ShiftSpec::Kind::TJ: {
      BigReal pt = (-ps.b[s.index - 1]).rounded_to(prec);
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      num = q[n];
      den = q[n - 1];
      break;
    }
    case ShiftSpec::Kind::Total: {
      BigReal pt(-1L, prec);
      BigReal ups = ps.upsilon();
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      std::vector<BigReal> p = eval_poly_all(jc, n, pt);
      num = ups * q[n] - p[n];
      den = ups * q[n - 1] - p[n - 1];
      shift_arg = true;
      break;
    }
  }
  if (abs(den) < hypothesis_floor(prec)) {
    throw HypothesisViolated("vanishing Geronimus denominator");
  }
  BigReal ratio = num / den;
  BigReal arg = shift_arg ? z - 1L : z.rounded_to(prec);
  std::vector<BigReal> pz = eval_poly_all(jc, n, arg);
  return pz[n] - ratio * pz[n - 1];
}

std::vector<BigReal> geronimus_coeffs(const PearsonWeight& w, const CholeskyPair& cp,
                                      const ShiftSpec& s, std::size_t n, Prec prec) {
  require_inverse(s, "geronimus_coeffs");
  if (n == 0) return {BigReal(1L, prec)};
  JacobiCoeffs jc = recurrence_coeffs(cp);
  const auto& ps = w.params();

  BigReal num(prec), den(prec);
  bool shift_arg = false;
  switch (s.kind) {
    case ShiftSpec::Kind::IT: {
      const BigReal& ai = ps.a[s.index - 1];
      if (!(ai > 1L)) throw DomainError("IT inverse needs a_i > 1");
      BigReal pt = (BigReal(1L, prec) - ai).rounded_to(prec);
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      num = q[n];
      den = q[n - 1];
      break;
    }
    case ShiftSpec::Kind::TJ: {
      BigReal pt = (-ps.b[s.index - 1]).rounded_to(prec);
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      num = q[n];
      den = q[n - 1];
      break;
    }
    case ShiftSpec::Kind::Total: {
      BigReal pt(-1L, prec);
      BigReal ups = ps.upsilon();
      std::vector<BigReal> q = second_kind_all(w, jc, n, pt, prec);
      std::vector<BigReal> p = eval_poly_all(jc, n, pt);
      num = ups * q[n] - p[n];
      den = ups * q[n - 1] - p[n - 1];
      shift_arg = true;
      break;
    }
  }
  if (abs(den) < hypothesis_floor(prec)) {
    throw HypothesisViolated("vanishing Geronimus denominator");
  }
  BigReal ratio = num / den;
  std::vector<BigReal> top = cp.poly_coeffs(n);
  std::vector<BigReal> low = cp.poly_coeffs(n - 1);
  std::vector<BigReal> out = top;
  for (std::size_t i = 0; i < low.size(); ++i) out[i] -= ratio * low[i];
  if (shift_arg) out = taylor_shift(out, BigReal(-1L, prec));
  return out;
}

JacobiFactors jacobi_factorize(const PearsonWeight& w, const CholeskyPair& cp,
                               const ShiftSpec& s, FactorizeMode mode, Prec prec) {
  if (cp.K() < 4) throw WindowTooSmall("Jacobi factorization needs K >= 4");
  ShiftSpec fwd = s.forward ? s : s.inverse();
  ConnectionPair cm = connection_matrices(w, cp, fwd, prec);
  const std::size_t K = cm.K();

  Banded l(K, 1, 0, prec);
  for (auto& v : l.diagonal(0)) v = BigReal(1L, prec);
  for (std::size_t i = 0; i + 1 < K; ++i) l.diagonal(-1)[i] = cm.Omega_sub[i];

  Banded u(K, 0, 1, prec);
  for (std::size_t i = 0; i < K; ++i) u.diagonal(0)[i] = cm.omega_diag[i];
  for (auto& v : u.diagonal(1)) v = BigReal(1L, prec);

  // Shift constant added to the Jacobi matrix in the reconstruction:
  // LU mode rebuilds J + cI (Total: c = 0); UL mode rebuilds TJ + cI
  // (Total: TJ + I, the unit shift coming from B^{-1} Lambda B = Lambda + I).
  BigReal c(prec);
  switch (fwd.kind) {
    case ShiftSpec::Kind::IT: c = shift_case_constant(w, fwd); break;
    case ShiftSpec::Kind::TJ: c = shift_case_constant(w, fwd); break;
    case ShiftSpec::Kind::Total:
      c = mode == FactorizeMode::UL ? BigReal(1L, prec) : BigReal(prec);
      break;
  }
  return JacobiFactors{std::move(l), std::move(u), std::move(c)};
}

BigReal quasidet_theta_star(const Mat& a, const std::vector<BigReal>& b,
                            const std::vector<BigReal>& c, const BigReal& d, Prec prec) {
  assert(a.rows() == a.cols() && a.rows() == b.size() && a.rows() == c.size());
  const std::size_t k = a.rows();
  if (k == 0) return d;

  BigReal floor_tol = hypothesis_floor(prec) * max(a.max_abs(), BigReal(1L, prec));
  bool symmetric = true;
  for (std::size_t i = 0; i < k && symmetric; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (a(i, j) != a(j, i)) {
        symmetric = false;
        break;
      }
    }

  std::vector<BigReal> x;
  if (symmetric) {
    LdltResult f = ldlt_signed(a, prec, floor_tol);
    x = b;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= f.L(i, j) * x[j];
    for (std::size_t i = 0; i < k; ++i) x[i] /= f.d[i];
    for (std::size_t ii = k; ii-- > 0;)
      for (std::size_t j = ii + 1; j < k; ++j) x[ii] -= f.L(j, ii) * x[j];
  } else {
    Mat bm(k, 1, prec);
    for (std::size_t i = 0; i < k; ++i) bm(i, 0) = b[i];
    Mat xm = lu_solve(a, bm, floor_tol);
    x.reserve(k);
    for (std::size_t i = 0; i < k; ++i) x.push_back(xm(i, 0));
  }

  BigReal out = d;
  for (std::size_t i = 0; i < k; ++i) out -= c[i] * x[i];
  return out;
}

BigReal shifted_poly_determinantal(const PearsonWeight& w, const CholeskyPair& cp, std::size_t n,
                                   const BigReal& z, int direction, Prec prec) {
  const auto& ps = w.params();
  const std::size_t M = ps.M(), N = ps.N();
  const std::size_t dim = N + M + 2;

  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i + 1; j < M; ++j) {
      if (ps.a[i] == ps.a[j]) throw HypothesisViolated("coincident a-roots");
    }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      if (ps.b[i] == ps.b[j]) throw HypothesisViolated("coincident b-roots");
    }

  JacobiCoeffs jc = recurrence_coeffs(cp);
  std::size_t row_lo = 0, row_hi = 0;
  if (direction < 0) {
    if (n < M) throw HypothesisViolated("backward formula needs n >= M");
    row_lo = n - M;
    row_hi = n + N + 1;
  } else {
    if (n < N + 1) throw HypothesisViolated("forward formula needs n >= N+1");
    row_lo = n - N - 1;
    row_hi = n + M;
  }
  if (row_hi > jc.max_degree()) throw WindowTooSmall("determinantal rows exceed the trusted window");

  const std::size_t rows = row_hi - row_lo + 1;
  assert(rows == dim);

  // Column evaluations shared across rows.
  std::vector<std::vector<BigReal>> cols;  // each length rows
  cols.reserve(dim);
  auto p_col = [&](const BigReal& pt) {
    std::vector<BigReal> all = eval_poly_all(jc, row_hi, pt);
    return std::vector<BigReal>(all.begin() + static_cast<long>(row_lo), all.end());
  };
  auto q_col = [&](const BigReal& pt) {
    std::vector<BigReal> all = second_kind_all(w, jc, row_hi, pt, prec);
    return std::vector<BigReal>(all.begin() + static_cast<long>(row_lo), all.end());
  };

  if (direction < 0) {
    cols.push_back(p_col(BigReal(prec)));  // P_r(0)
    for (std::size_t j = 0; j < N; ++j) cols.push_back(p_col(BigReal(1L, prec) - ps.b[j]));
    for (std::size_t i = 0; i < M; ++i) {
      if (ps.a[i] == 1L) throw HypothesisViolated("-a_i + 1 lands on the lattice");
      cols.push_back(q_col(BigReal(1L, prec) - ps.a[i]));
    }
  } else {
    for (std::size_t i = 0; i < M; ++i) cols.push_back(p_col(-ps.a[i]));
    {
      BigReal pt(-1L, prec);
      std::vector<BigReal> q = q_col(pt);
      std::vector<BigReal> p = p_col(pt);
      BigReal ups = ps.upsilon();
      std::vector<BigReal> mass;
      mass.reserve(rows);
      for (std::size_t r = 0; r < rows; ++r) mass.push_back(ups * q[r] - p[r]);
      cols.push_back(std::move(mass));
    }
    for (std::size_t j = 0; j < N; ++j) cols.push_back(q_col(-ps.b[j]));
  }
  cols.push_back(p_col(z.rounded_to(prec)));

  Mat a(dim - 1, dim - 1, prec);
  std::vector<BigReal> bvec, cvec;
  bvec.reserve(dim - 1);
  cvec.reserve(dim - 1);
  for (std::size_t r = 0; r + 1 < dim; ++r) {
    for (std::size_t ccol = 0; ccol + 1 < dim; ++ccol) a(r, ccol) = cols[ccol][r];
    bvec.push_back(cols[dim - 1][r]);
  }
  for (std::size_t ccol = 0; ccol + 1 < dim; ++ccol) cvec.push_back(cols[ccol][dim - 1]);
  return quasidet_theta_star(a, bvec, cvec, cols[dim - 1][dim - 1], prec);
}

UvarovResolvents uvarov_resolvents(const CholeskyPair& cp, const Banded& psi) {
  const std::size_t W = psi.size();
  const Prec p = cp.S.prec();
  std::vector<BigReal> hinv;
  hinv.reserve(W);
  for (std::size_t i = 0; i < W; ++i) hinv.push_back(BigReal(1L, p) / cp.H[i]);
  Mat psid = psi.to_dense();
  return UvarovResolvents{psid.transpose().scale_cols(hinv), psid.scale_cols(hinv)};
}

Mat m_theta(const PearsonWeight& w, Prec p) {
  const auto& th = w.theta_coeffs();  // degree N+1
  const std::size_t n1 = th.size() - 1;  // N+1
  Mat m(n1, n1, p);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      if (i + j + 1 <= n1) m(i, j) = th[i + j + 1];
    }
  return m;
}

Mat m_sigma(const PearsonWeight& w, Prec p) {
  const auto& sg = w.sigma_coeffs();  // degree M
  const std::size_t mm = sg.size() - 1;  // M
  Mat m(mm, mm, p);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j < mm; ++j) {
      if (i + j + 1 <= mm) m(i, j) = sg[i + j + 1];
    }
  return m;
}

UvarovResiduals uvarov_second_kind_check(const PearsonWeight& w, const CholeskyPair& cp,
                                         const Banded& psi, const std::vector<BigReal>& z_samples,
                                         std::size_t n_max, Prec prec) {
  const std::size_t M = w.M(), N = w.N();
  const std::size_t W = psi.size();
  const std::size_t top = n_max + std::max(M, N + 1);
  if (top >= W) throw WindowTooSmall("uvarov check needs Psi rows up to n_max + max(M, N+1)");

  JacobiCoeffs jc = recurrence_coeffs(cp);
  UvarovResiduals res{BigReal(prec), BigReal(prec), BigReal(prec),
                      BigReal(prec), BigReal(prec), BigReal(prec)};

  Mat mth = m_theta(w, prec);
  Mat msg = m_sigma(w, prec);

  for (const BigReal& z : z_samples) {
    std::vector<BigReal> qz = second_kind_all(w, jc, top, z, prec);
    std::vector<BigReal> qzm = second_kind_all(w, jc, top, z - 1L, prec);
    std::vector<BigReal> qzp = second_kind_all(w, jc, top, z + 1L, prec);
    BigReal theta_z = w.theta_at(z);
    BigReal sigma_z = w.sigma_at(z);

    // Correction targets.
    std::vector<BigReal> corr_th;
    {
      std::vector<BigReal> y = mth.apply(chi_vector(z, N + 1));
      std::vector<BigReal> x = solve_unit_upper_t(cp.S, y);
      corr_th.reserve(N + 1);
      for (std::size_t i = 0; i <= N; ++i) corr_th.push_back(cp.H[i] * x[i]);
    }
    std::vector<BigReal> corr_sg;
    if (M > 0) {
      std::vector<BigReal> y = msg.apply(chi_vector(z, M));
      std::vector<BigReal> x = solve_unit_upper_t(cp.S, y);
      corr_sg.reserve(M);
      for (std::size_t i = 0; i < M; ++i) corr_sg.push_back(cp.H[i] * x[i]);
    }

    for (std::size_t n = 0; n <= n_max; ++n) {
      // theta side: theta(z) Q_n(z) - sum_m Psi_{m,n} Q_m(z-1)/H_m
      BigReal acc(prec);
      for (std::size_t m = (n >= N + 1 ? n - N - 1 : 0); m <= n + M; ++m) {
        if (!psi.in_band(m, n)) continue;
        acc += psi.at(m, n) * qzm[m] / cp.H[m];
      }
      BigReal lhs = theta_z * qz[n];
      BigReal expected = n <= N ? corr_th[n] : BigReal(prec);
      BigReal scale = max(max(abs(lhs), abs(acc)), abs(expected));
      if (!scale.is_zero()) {
        res.correction_theta = max(res.correction_theta, abs(lhs - acc - expected) / scale);
        if (n > N + 1) res.banded_theta = max(res.banded_theta, abs(lhs - acc) / scale);
      }

      // sigma side: sigma(z) Q_n(z) - sum_m Psi_{n,m} Q_m(z+1)/H_m
      BigReal acc2(prec);
      for (std::size_t m = (n >= M ? n - M : 0); m <= n + N + 1; ++m) {
        if (!psi.in_band(n, m)) continue;
        acc2 += psi.at(n, m) * qzp[m] / cp.H[m];
      }
      BigReal lhs2 = sigma_z * qz[n];
      BigReal expected2 = n < M ? corr_sg[n] : BigReal(prec);
      BigReal scale2 = max(max(abs(lhs2), abs(acc2)), abs(expected2));
      if (!scale2.is_zero()) {
        res.correction_sigma = max(res.correction_sigma, abs(lhs2 - acc2 - expected2) / scale2);
        if (n > M) res.banded_sigma = max(res.banded_sigma, abs(lhs2 - acc2) / scale2);
      }
    }
  }

  // Resolvent identities on the Psi window.
  {
    UvarovResolvents rv = uvarov_resolvents(cp, psi);
    DressedPascal dp = dressed_pascal(cp);
    Banded j = jacobi_banded(jc, cp.K(), prec);
    Mat sigma_j = banded_poly(w.sigma_coeffs(), j).to_dense();
    Mat theta_j = banded_poly(w.theta_coeffs(), j).to_dense();
    Mat plus = (dp.pi * sigma_j).leading(W);
    Mat minus = (dp.pi_inv * theta_j).leading(W);
    res.resolvent_plus = rel_residual(rv.omega_plus, plus);
    res.resolvent_minus = rel_residual(rv.omega_minus, minus);
  }
  return res;
}

} // namespace dop
