#include <doctest.h>

#include "dop/bigreal.hpp"

using dop::BigReal;

TEST_CASE("precision promotion on mixed arithmetic") {
  BigReal a(1.0, 128);
  BigReal b(3L, 512);
  CHECK((a + b).prec() == 512);
  CHECK((a * b).prec() == 512);
  CHECK((b / a).prec() == 512);
  CHECK((a - b).prec() == 512);
}

TEST_CASE("exact comparisons on stored representations") {
  BigReal x(0.5, 64);
  BigReal y(0.5, 256);
  CHECK(x == y);  // 0.5 is exact at both precisions
  BigReal third = BigReal(1L, 256) / 3L;
  BigReal third_low = third.rounded_to(64);
  CHECK(third != third_low);
}

TEST_CASE("string round trip is the identity") {
  BigReal x = BigReal(1L, 256) / 7L;
  BigReal y = BigReal::from_string(x.str(), 256);
  CHECK(x == y);
  CHECK(BigReal(0L, 64).str() == "0");
}

TEST_CASE("two_pow and ldexp2") {
  BigReal t = BigReal::two_pow(-100, 128);
  CHECK(ldexp2(t, 100) == 1L);
  CHECK(t > 0L);
}

TEST_CASE("fused accumulate keeps accumulator precision") {
  BigReal acc(0L, 320);
  acc.add_mul(BigReal(3L, 64), BigReal(5L, 64));
  CHECK(acc == 15L);
  CHECK(acc.prec() == 320);
}
