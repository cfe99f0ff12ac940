#include <doctest.h>

#include "dop/errors.hpp"
#include "dop/moments.hpp"
#include "dop/verify.hpp"
#include "dop/weights.hpp"
#include "oracles.hpp"

using dop::BigReal;
using dop::PearsonWeight;
using dop::Prec;

namespace {
constexpr Prec P = 256;
BigReal tol_bits(long bits) { return BigReal::two_pow(bits, P); }
} // namespace

TEST_CASE("charlier moments against the exponential series") {
  PearsonWeight w1 = PearsonWeight::make({}, {}, 1.0, P);
  BigReal e = dop::test::exp_series(BigReal(1L, P), P);
  CHECK(abs(dop::moment(w1, 0, P) - e) < tol_bits(-248) * e);

  PearsonWeight wh = PearsonWeight::make({}, {}, 0.5, P);
  // rho_1 = eta e^eta
  BigReal eh = dop::test::exp_series(BigReal(0.5, P), P);
  BigReal expect = BigReal(0.5, P) * eh;
  CHECK(abs(dop::moment(wh, 1, P) - expect) < tol_bits(-248) * expect);
  // spot value from the oracle formula
  CHECK(abs(expect - BigReal::from_string("0.8243606353500640734243253939071", 128)) <
        BigReal::two_pow(-96, P));
}

TEST_CASE("tiny eta is dominated by the k=0 term") {
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 1e-30, P);
  BigReal rho0 = dop::moment(w, 0, P);
  CHECK(abs(rho0 - 1L) < BigReal(1e-29, P));
}

TEST_CASE("bell number identity for charlier eta=1") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  BigReal e = dop::test::exp_series(BigReal(1L, P), P);
  auto bell = dop::test::bell_numbers(6);
  dop::HankelTruncation h = dop::moment_matrix(w, 4, P);  // rho_0..rho_6
  for (std::size_t n = 0; n < h.rho.size(); ++n) {
    BigReal expect = e * bell[n];
    CHECK(abs(h.rho[n] - expect) < tol_bits(-246) * expect);
  }
  // K=2 window [[e, e], [e, 2e]]
  CHECK(abs(h.g(0, 1) - e) < tol_bits(-248) * e);
  CHECK(abs(h.g(1, 1) - 2L * e) < tol_bits(-246) * e);
}

TEST_CASE("hankel structure is shared storage") {
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 0.7, P);
  dop::HankelTruncation h = dop::moment_matrix(w, 3, P);
  CHECK(h.g(1, 0) == h.g(0, 1));
  CHECK(h.g(2, 1) == h.g(1, 2));
}

TEST_CASE("hankel determinants positive; charlier delta2 = e^2") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  dop::HankelTruncation h = dop::moment_matrix(w, 2, P);
  auto dets = dop::hankel_dets(h);
  BigReal e = dop::test::exp_series(BigReal(1L, P), P);
  CHECK(abs(dets[0] - e) < tol_bits(-248) * e);
  CHECK(abs(dets[1] - e * e) < tol_bits(-246) * e * e);

  PearsonWeight gen = PearsonWeight::make({}, {1.5}, 0.7, P);
  auto dets16 = dop::hankel_dets(dop::moment_matrix(gen, 16, P));
  for (const auto& d : dets16) CHECK(d > 0L);
}

TEST_CASE("precision doubling self-validation") {
  PearsonWeight w = PearsonWeight::make({1.7}, {2.3}, 0.4, P);
  for (unsigned long n : {0ul, 3ul, 9ul}) {
    BigReal lo = dop::moment(w, n, P);
    BigReal hi = dop::moment(w, n, 2 * P).rounded_to(P);
    CHECK(abs(lo - hi) < tol_bits(-(P - 16)) * abs(hi));
  }
}

TEST_CASE("rho_1 equals the eta-derivative of rho_0 (central difference)") {
  const Prec hp = 3 * P;  // headroom so the quotient error is O(h^2)
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 0.7, hp);
  BigReal h = BigReal::two_pow(-(P / 3), hp);
  BigReal eta(0.7, hp);
  auto at_eta = [&](const BigReal& e) {
    return dop::moment(PearsonWeight::make({}, {BigReal(1.5, hp)}, e), 0, hp);
  };
  BigReal diff = (at_eta(eta + h) - at_eta(eta - h)) / (h * 2L);
  BigReal rho1 = dop::moment(w, 1, hp);
  BigReal theta_eta = eta * diff;  // vartheta_eta = eta d/deta
  // central difference error O(h^2)
  CHECK(abs(theta_eta - rho1) < h * h * BigReal(16L, hp) * abs(rho1));
}

TEST_CASE("slow convergence guard trips on absurd k_max") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  dop::TailRule rule;
  rule.k_max = 3;
  CHECK_THROWS_AS(dop::moment(w, 0, P, rule), dop::SlowConvergence);
}

TEST_CASE("moment symmetry suite passes and detects perturbations") {
  PearsonWeight w = PearsonWeight::make({}, {1.5}, 0.7, P);
  dop::SuiteOptions opt;
  opt.K = 8;
  opt.prec = P;
  auto reports = dop::verify_identity(w, "moments-hyper", opt);
  REQUIRE(reports.size() == 3);  // gram-hyper-2[b1], gram-hyper-3, gram-symmetry
  for (const auto& r : reports) {
    CAPTURE(r.identity);
    CHECK(r.pass);
    CHECK(r.residual < BigReal::two_pow(-192, P));
  }

  // Perturbing rho_1 by 1e-6 must surface in the symmetry residual at that size.
  dop::HankelTruncation g = dop::moment_matrix(w, 4, P);
  dop::Mat gm = g.to_mat();
  dop::Mat gp = gm;
  gp(0, 1) += BigReal(1e-6, P);
  gp(1, 0) += BigReal(1e-6, P);
  BigReal res = dop::rel_residual(gm, gp);
  CHECK(res > BigReal(1e-8, P));
  CHECK(res < BigReal(1e-4, P));
}

TEST_CASE("charlier eta=1 empty-product case of the total-shift identity") {
  PearsonWeight w = PearsonWeight::make({}, {}, 1.0, P);
  dop::SuiteOptions opt;
  opt.K = 2;
  opt.prec = P;
  auto reports = dop::verify_identity(w, "moments-hyper", opt);
  for (const auto& r : reports) {
    CAPTURE(r.identity);
    CHECK(r.pass);
  }
}
