#include <doctest.h>

#include "dop/errors.hpp"
#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "oracles.hpp"

using dop::BigReal;
using dop::CholeskyPair;
using dop::JacobiCoeffs;
using dop::PearsonWeight;
using dop::Prec;

namespace {
constexpr Prec P = 256;
BigReal tol_bits(long bits) { return BigReal::two_pow(bits, P); }

CholeskyPair basis(const PearsonWeight& w, std::size_t K) {
  return cholesky_hankel(dop::moment_matrix(w, K, P), P);
}
} // namespace

TEST_CASE("cholesky of a 2x2 hand example") {
  dop::HankelTruncation g;
  g.K = 2;
  g.rho = {BigReal(1L, P), BigReal(1L, P), BigReal(2L, P)};
  CholeskyPair cp = cholesky_hankel(g, P);
  CHECK(cp.S(0, 0) == 1L);
  CHECK(cp.S(1, 0) == -1L);
  CHECK(cp.S(1, 1) == 1L);
  CHECK(cp.H[0] == 1L);
  CHECK(cp.H[1] == 1L);
}

TEST_CASE("charlier eta=1 norms H0 = H1 = e") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  CholeskyPair cp = basis(w, 2);
  BigReal e = dop::test::exp_series(BigReal(1L, P), P);
  CHECK(abs(cp.H[0] - e) < tol_bits(-248) * e);
  CHECK(abs(cp.H[1] - e) < tol_bits(-246) * e);
}

TEST_CASE("K=1 degenerate window") {
  PearsonWeight w = PearsonWeight::make({}, {}, 0.5, P);
  CholeskyPair cp = basis(w, 1);
  CHECK(cp.S(0, 0) == 1L);
  CHECK(abs(cp.H[0] - dop::moment(w, 0, P)) < tol_bits(-250) * cp.H[0]);
}

TEST_CASE("cholesky reconstruction residual") {
  PearsonWeight w = PearsonWeight::make({1.7}, {2.3}, 0.4, P);
  dop::HankelTruncation g = dop::moment_matrix(w, 12, P);
  CholeskyPair cp = cholesky_hankel(g, P);
  dop::Mat gm = g.to_mat();
  dop::Mat rebuilt = cp.S * gm * cp.S.transpose();
  BigReal scale = gm.max_abs();
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      BigReal expect = i == j ? cp.H[i] : BigReal(P);
      CHECK(abs(rebuilt(i, j) - expect) <= tol_bits(-(P - 32)) * scale);
    }
}

TEST_CASE("non positive-definite input breaks down") {
  dop::HankelTruncation g;
  g.K = 2;
  g.rho = {BigReal(1L, P), BigReal(2L, P), BigReal(1L, P)};  // det = -3
  CHECK_THROWS_AS(cholesky_hankel(g, P), dop::NumericBreakdown);
}

TEST_CASE("recurrence coefficients: closed forms and oracle") {
  // beta_0 = rho_1 / rho_0 always
  PearsonWeight gen = PearsonWeight::make({}, {1.5}, 0.7, P);
  CholeskyPair cpg = basis(gen, 6);
  JacobiCoeffs jcg = recurrence_coeffs(cpg);
  BigReal r0 = dop::moment(gen, 0, P), r1 = dop::moment(gen, 1, P);
  CHECK(abs(jcg.beta[0] - r1 / r0) < tol_bits(-240) * abs(jcg.beta[0]));

  // Charlier: beta_n = n + eta, gamma_n = n eta (eta = 0.7), n <= 12
  PearsonWeight ch = PearsonWeight::make({}, {}, 0.7, P);
  CholeskyPair cp = basis(ch, 15);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  for (std::size_t n = 0; n <= 12; ++n) {
    BigReal expect_b = BigReal(0.7, P) + static_cast<long>(n);
    CHECK(abs(jc.beta[n] - expect_b) < tol_bits(-200) * abs(expect_b));
    if (n >= 1) {
      BigReal expect_g = BigReal(0.7, P) * static_cast<long>(n);
      CHECK(abs(jc.gamma[n] - expect_g) < tol_bits(-200) * abs(expect_g));
    }
  }

  // Meixner-type: gamma_n = eta n (n + a - 1) / (1 - eta)^2, n <= 8
  PearsonWeight mx = PearsonWeight::make({2.0}, {}, 0.4, P);
  CholeskyPair cpm = basis(mx, 11);
  JacobiCoeffs jcm = recurrence_coeffs(cpm);
  BigReal eta(0.4, P), a(2.0, P);
  for (std::size_t n = 1; n <= 8; ++n) {
    BigReal nn(static_cast<long>(n), P);
    BigReal expect = eta * nn * (nn + a - 1L) / ((1L - eta) * (1L - eta));
    CHECK(abs(jcm.gamma[n] - expect) < tol_bits(-200) * abs(expect));
  }
}

TEST_CASE("gram-schmidt oracle confirms the cholesky route") {
  PearsonWeight w = PearsonWeight::make({1.7}, {2.3}, 0.4, P);
  CholeskyPair cp = basis(w, 10);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  auto oracle = dop::test::gram_schmidt_oracle(w, 8, P);
  for (std::size_t n = 0; n + 2 <= 8; ++n) {
    CHECK(abs(jc.beta[n] - oracle.beta[n]) < tol_bits(-180) * abs(oracle.beta[n]));
    if (n >= 1) {
      CHECK(abs(jc.gamma[n] - oracle.gamma[n]) < tol_bits(-180) * abs(oracle.gamma[n]));
    }
    CHECK(abs(cp.H[n] - oracle.H[n]) < tol_bits(-180) * abs(oracle.H[n]));
  }
}

TEST_CASE("orthogonality by direct lattice sums") {
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 0.7, P);
  CholeskyPair cp = basis(w, 9);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  const std::size_t n_hi = 6;
  // sum_k P_n(k) P_m(k) w(k) over the lattice until the tail is negligible
  dop::Mat gram(n_hi + 1, n_hi + 1, P);
  dop::WeightSweep sweep(w, P + 64);
  BigReal hmax(P);
  for (const auto& h : cp.H) hmax = max(hmax, h);
  for (unsigned long k = 0; k < 400; ++k) {
    BigReal kk(static_cast<long>(k), P + 64);
    auto pk = eval_poly_all(jc, n_hi, kk);
    for (std::size_t n = 0; n <= n_hi; ++n)
      for (std::size_t m = 0; m <= n_hi; ++m) gram(n, m) += pk[n] * pk[m] * sweep.value();
    sweep.advance();
  }
  for (std::size_t n = 0; n <= n_hi; ++n)
    for (std::size_t m = 0; m <= n_hi; ++m) {
      BigReal expect = n == m ? cp.H[n] : BigReal(P);
      CHECK(abs(gram(n, m) - expect) < tol_bits(-(P / 2)) * hmax);
    }
}

TEST_CASE("eval_poly recurrence, horner, and explicit P2") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  CholeskyPair cp = basis(w, 8);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  BigReal z(2.25, P);
  CHECK(eval_poly(jc, 0, z) == 1L);
  CHECK(abs(eval_poly(jc, 1, z) - (z - jc.beta[0])) < tol_bits(-240));
  // P2(z) = z^2 - 3z + 1 for eta = 1
  BigReal expect = z * z - 3L * z + 1L;
  CHECK(abs(eval_poly(jc, 2, z) - expect) < tol_bits(-240) * abs(expect));
  for (std::size_t n = 0; n <= 6; ++n) {
    BigReal a = eval_poly(jc, n, z);
    BigReal b = eval_poly_horner(cp, n, z);
    CHECK(abs(a - b) <= tol_bits(-(P / 2)) * max(abs(a), BigReal(1L, P)));
  }
}

TEST_CASE("three-term recurrence residual at sample points") {
  PearsonWeight w = PearsonWeight::make({1.7}, {2.3}, 0.4, P);
  CholeskyPair cp = basis(w, 10);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  for (double zd : {0.3, 1.6, 3.2, 5.9, 8.1}) {
    BigReal z(zd, P);
    auto pz = eval_poly_all(jc, 8, z);
    for (std::size_t n = 1; n + 1 <= 8; ++n) {
      BigReal res = z * pz[n] - pz[n + 1] - jc.beta[n] * pz[n] - jc.gamma[n] * pz[n - 1];
      CHECK(abs(res) < tol_bits(-(P / 2)) * max(abs(pz[n + 1]), BigReal(1L, P)));
    }
  }
}

TEST_CASE("second kind values and poles") {
  PearsonWeight w = PearsonWeight::make({}, {}, 0.5, P);
  CholeskyPair cp = basis(w, 8);
  JacobiCoeffs jc = recurrence_coeffs(cp);

  // Q_0(-1) = -(e^eta - 1)/eta
  BigReal eta(0.5, P);
  BigReal expect = -(dop::test::exp_series(eta, P) - 1L) / eta;
  BigReal got = second_kind(w, jc, 0, BigReal(-1L, P), P);
  CHECK(abs(got - expect) < tol_bits(-240) * abs(expect));

  CHECK_THROWS_AS(second_kind(w, jc, 1, BigReal(3L, P), P), dop::PoleError);

  // z Q_0(z) -> rho_0 as z -> infinity (charlier eta = 1). A plain 1e6 is a
  // lattice point and correctly raises PoleError, so sample just off it.
  PearsonWeight w1 = PearsonWeight::make({}, {}, 1.0, P);
  CholeskyPair cp1 = basis(w1, 4);
  JacobiCoeffs jc1 = recurrence_coeffs(cp1);
  CHECK_THROWS_AS(second_kind(w1, jc1, 0, BigReal(1e6, P), P), dop::PoleError);
  BigReal z = BigReal(1e6, P) + BigReal(0.5, P);
  BigReal q0 = second_kind(w1, jc1, 0, z, P);
  BigReal rho0 = dop::moment(w1, 0, P);
  CHECK(abs(q0 * z - rho0) < BigReal(1e-5, P) * rho0);
}

TEST_CASE("second kind precision-doubling and residue property") {
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 0.7, P);
  CholeskyPair cp = basis(w, 8);
  JacobiCoeffs jc = recurrence_coeffs(cp);
  BigReal z(-2.3, P);
  BigReal lo = second_kind(w, jc, 3, z, P);
  {
    CholeskyPair cph = cholesky_hankel(dop::moment_matrix(w, 8, 2 * P), 2 * P);
    JacobiCoeffs jch = recurrence_coeffs(cph);
    BigReal hi = second_kind(w, jch, 3, BigReal(-2.3, 2 * P), 2 * P);
    CHECK(abs(lo - hi.rounded_to(P)) < tol_bits(-(P - 16)) * abs(lo));
  }

  // (z - k) Q_n(z) -> P_n(k) w(k) as z -> k
  const unsigned long kpt = 4;
  BigReal dz = BigReal::two_pow(-(P / 4), P);
  BigReal znear = BigReal(static_cast<long>(kpt), P) + dz;
  for (std::size_t n : {0ul, 2ul, 4ul}) {
    BigReal q = second_kind(w, jc, n, znear, P);
    BigReal expect = eval_poly(jc, n, BigReal(static_cast<long>(kpt), P)) * w.weight_at(kpt, P);
    CHECK(abs(q * dz - expect) < tol_bits(-(P / 4) + 16) * max(abs(expect), BigReal(1L, P)));
  }
}

TEST_CASE("tridiagonal continued-fraction LDL^T") {
  // delta_0 = r_0; one explicit step
  std::vector<BigReal> r{BigReal(2L, P), BigReal(2L, P)};
  std::vector<BigReal> s{BigReal(1L, P)};
  auto [l, d] = dop::tridiag_ldl_cf(r, s);
  CHECK(d[0] == 2L);
  CHECK(l[0] == BigReal(0.5, P));
  CHECK(d[1] == BigReal(1.5, P));

  // agreement with dense LDL^T on a positive-definite K=12 instance
  const std::size_t K = 12;
  std::vector<BigReal> rr, ss;
  for (std::size_t i = 0; i < K; ++i) rr.push_back(BigReal(3L, P) + BigReal(0.25 * (i % 5), P));
  for (std::size_t i = 0; i + 1 < K; ++i) ss.push_back(BigReal(0.5, P) + BigReal(0.125 * (i % 3), P));
  auto [ll, dd] = dop::tridiag_ldl_cf(rr, ss);
  dop::Mat tri(K, K, P);
  for (std::size_t i = 0; i < K; ++i) tri(i, i) = rr[i];
  for (std::size_t i = 0; i + 1 < K; ++i) {
    tri(i, i + 1) = ss[i];
    tri(i + 1, i) = ss[i];
  }
  dop::LdltResult dense = dop::ldlt(tri, P);
  for (std::size_t i = 0; i < K; ++i) {
    CHECK(abs(dd[i] - dense.d[i]) < tol_bits(-(P - 16)) * abs(dense.d[i]));
    if (i + 1 < K) CHECK(abs(ll[i] - dense.L(i + 1, i)) < tol_bits(-(P - 16)));
  }
}

TEST_CASE("H_n consistency between hankel_dets and cholesky") {
  PearsonWeight w = PearsonWeight::make({2.0}, {}, 0.4, P);
  dop::HankelTruncation g = dop::moment_matrix(w, 10, P);
  auto dets = dop::hankel_dets(g);
  CholeskyPair cp = cholesky_hankel(g, P);
  for (std::size_t n = 1; n < 10; ++n) {
    BigReal ratio = dets[n] / dets[n - 1];
    CHECK(abs(ratio - cp.H[n]) < tol_bits(-(P - 32)) * abs(cp.H[n]));
  }
}
