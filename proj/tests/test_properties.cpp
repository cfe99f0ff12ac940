// Property-style checks over generated admissible parameter sets. The
// generator is a fixed-seed LCG so failures reproduce exactly.

#include <doctest.h>

#include <cstdint>
#include <vector>

#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "dop/structure.hpp"
#include "dop/transforms.hpp"
#include "dop/weights.hpp"

using dop::Banded;
using dop::BigReal;
using dop::CholeskyPair;
using dop::JacobiCoeffs;
using dop::PearsonWeight;
using dop::Prec;
using dop::ShiftSpec;

namespace {

constexpr Prec P = 192;

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  double uniform() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  }
  double in(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Draws an admissible (a, b, eta): sizes M <= N+1, parameters positive and
/// away from the collision point b_j = 1, eta < 1 whenever M = N+1.
PearsonWeight draw_weight(Lcg& rng) {
  const std::size_t N = static_cast<std::size_t>(rng.in(0.0, 2.0));
  const std::size_t M = static_cast<std::size_t>(rng.in(0.0, static_cast<double>(N) + 2.0));
  std::vector<double> a, b;
  for (std::size_t i = 0; i < M; ++i) a.push_back(rng.in(1.25, 4.0));
  for (std::size_t j = 0; j < N; ++j) b.push_back(rng.in(2.1, 5.0));
  double eta = M == N + 1 ? rng.in(0.1, 0.9) : rng.in(0.2, 1.5);
  return PearsonWeight::make(a, b, eta, P);
}

BigReal tol_bits(long bits) { return BigReal::two_pow(bits, P); }

} // namespace

TEST_CASE("generated weights satisfy the pearson identity along the lattice") {
  Lcg rng(0x5eed0001);
  for (int trial = 0; trial < 8; ++trial) {
    PearsonWeight w = draw_weight(rng);
    CAPTURE(w.describe());
    dop::WeightSweep sweep(w, P);
    BigReal prev = sweep.value();
    for (unsigned long k = 0; k <= 60; ++k) {
      BigReal kk(static_cast<long>(k), P);
      BigReal rhs = w.sigma_at(kk) * prev;
      sweep.advance();
      prev = sweep.value();
      BigReal lhs = w.theta_at(kk + 1L) * prev;
      CHECK(abs(lhs - rhs) <= tol_bits(-(P - 8)) * abs(rhs));
    }
  }
}

TEST_CASE("generated weights give positive-definite windows and consistent norms") {
  Lcg rng(0x5eed0002);
  for (int trial = 0; trial < 5; ++trial) {
    PearsonWeight w = draw_weight(rng);
    CAPTURE(w.describe());
    dop::HankelTruncation g = dop::moment_matrix(w, 8, P);
    auto dets = dop::hankel_dets(g);
    for (const auto& d : dets) CHECK(d > 0L);
    CholeskyPair cp = cholesky_hankel(g, P);
    for (std::size_t n = 1; n < 8; ++n) {
      BigReal ratio = dets[n] / dets[n - 1];
      CHECK(abs(ratio - cp.H[n]) < tol_bits(-(P - 40)) * cp.H[n]);
    }
  }
}

TEST_CASE("three-term recurrence and dual evaluation paths agree on generated weights") {
  Lcg rng(0x5eed0003);
  for (int trial = 0; trial < 5; ++trial) {
    PearsonWeight w = draw_weight(rng);
    CAPTURE(w.describe());
    CholeskyPair cp = cholesky_hankel(dop::moment_matrix(w, 9, P), P);
    JacobiCoeffs jc = recurrence_coeffs(cp);
    BigReal z(rng.in(-3.0, 8.0), P);
    auto pz = eval_poly_all(jc, 7, z);
    for (std::size_t n = 0; n <= 7; ++n) {
      BigReal h = eval_poly_horner(cp, n, z);
      CHECK(abs(pz[n] - h) < tol_bits(-(P / 2)) * max(abs(h), BigReal(1L, P)));
    }
  }
}

TEST_CASE("psi keeps its band and closed diagonals on generated weights") {
  Lcg rng(0x5eed0004);
  for (int trial = 0; trial < 4; ++trial) {
    PearsonWeight w = draw_weight(rng);
    CAPTURE(w.describe());
    const std::size_t K = w.M() + w.N() + 8;
    CholeskyPair cp = cholesky_hankel(dop::moment_matrix(w, K, P), P);
    dop::PsiDetail d = laguerre_freud_detail(w, cp, P);
    CHECK(d.route_dev < tol_bits(-(P / 2)));
    CHECK(d.band_dev < tol_bits(-(P / 2)));
    CHECK(d.diag_dev < tol_bits(-(P / 2)));
    CHECK(d.psi.lower() == w.M());
    CHECK(d.psi.upper() == w.N() + 1);
  }
}

TEST_CASE("christoffel-geronimus round trip on generated weights with a-shifts") {
  Lcg rng(0x5eed0005);
  int done = 0;
  while (done < 4) {
    PearsonWeight w = draw_weight(rng);
    if (w.M() == 0) continue;
    CAPTURE(w.describe());
    ++done;
    CholeskyPair cp = cholesky_hankel(dop::moment_matrix(w, 10, P), P);
    // closed-form geronimus rows, then the forward kernel back to P_n
    PearsonWeight wv = w.shifted(ShiftSpec::it(1, false));
    BigReal zeta = -wv.params().a[0];
    std::vector<std::vector<BigReal>> rows;
    for (std::size_t n = 0; n <= 6; ++n) {
      rows.push_back(geronimus_coeffs(w, cp, ShiftSpec::it(1, false), n, P));
    }
    for (std::size_t n = 0; n + 1 <= 6; ++n) {
      BigReal ratio = horner(rows[n + 1], zeta) / horner(rows[n], zeta);
      std::vector<BigReal> num = rows[n + 1];
      for (std::size_t i = 0; i < rows[n].size(); ++i) num[i] -= ratio * rows[n][i];
      auto [q, rem] = dop::synthetic_division(num, zeta);
      auto want = cp.poly_coeffs(n);
      BigReal scale(1L, P);
      for (const auto& c : want) scale = max(scale, abs(c));
      for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(abs(q[i] - want[i]) < tol_bits(-(P / 2)) * scale);
      }
      CHECK(abs(rem) < tol_bits(-(P / 2)) * scale);
    }
  }
}
