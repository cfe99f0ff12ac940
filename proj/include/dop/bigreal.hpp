#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace dop {

using Prec = mpfr_prec_t;

inline constexpr Prec kDefaultPrec = 256;
inline constexpr Prec kMinPrec = 16;

/// Arbitrary-precision real with value semantics. Every value carries its own
/// working precision in bits; binary operations round to the larger operand
/// precision (MPFR round-to-nearest). Comparisons are exact on the stored
/// representations.
class BigReal {
public:
  BigReal() { mpfr_init2(v_, kMinPrec); mpfr_set_zero(v_, 1); }
  explicit BigReal(Prec p) { mpfr_init2(v_, clamp(p)); mpfr_set_zero(v_, 1); }
  BigReal(long x, Prec p) { mpfr_init2(v_, clamp(p)); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigReal(int x, Prec p) : BigReal(static_cast<long>(x), p) {}
  BigReal(double x, Prec p) { mpfr_init2(v_, clamp(p)); mpfr_set_d(v_, x, MPFR_RNDN); }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  static BigReal from_string(const std::string& s, Prec p);

  Prec prec() const { return mpfr_get_prec(v_); }

  /// Re-rounds to precision p (a copy; the canonical "round result to prec" step).
  BigReal rounded_to(Prec p) const {
    BigReal r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Deterministic decimal-scientific rendering, enough digits for the stored precision.
  std::string str() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigReal operator-() const {
    BigReal r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }
  BigReal& operator+=(long o) { return *this = *this + o; }
  BigReal& operator-=(long o) { return *this = *this - o; }
  BigReal& operator*=(long o) { return *this = *this * o; }
  BigReal& operator/=(long o) { return *this = *this / o; }

  friend BigReal operator+(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  /// *this += a*b, fused, at this value's precision (accumulator pattern).
  void add_mul(const BigReal& a, const BigReal& b) {
    mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
  }
  void sub_mul(const BigReal& a, const BigReal& b) {
    mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
    mpfr_neg(v_, v_, MPFR_RNDN);
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

  friend BigReal abs(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal sqrt(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  /// a * 2^e, exact.
  friend BigReal ldexp2(const BigReal& a, long e) {
    BigReal r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigReal floor(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_floor(r.v_, a.v_);
    return r;
  }
  friend BigReal round_nearest(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_round(r.v_, a.v_);
    return r;
  }
  friend BigReal pow_ui(const BigReal& a, unsigned long n) {
    BigReal r(a.prec());
    mpfr_pow_ui(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }
  friend BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }

  /// 2^e at precision p.
  static BigReal two_pow(long e, Prec p) {
    BigReal r(p);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  /// Gamma(x); used by test oracles only, the library proper never evaluates Gamma.
  friend BigReal gamma_fn(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_gamma(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal exp_fn(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

private:
  static Prec clamp(Prec p) { return p < kMinPrec ? kMinPrec : p; }
  static Prec pmax(const BigReal& a, const BigReal& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
  }

  mpfr_t v_;
};

} // namespace dop
