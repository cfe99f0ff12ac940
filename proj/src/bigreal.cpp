#include "dop/bigreal.hpp"

#include <cmath>
#include <cstdlib>

#include "dop/errors.hpp"

namespace dop {

BigReal BigReal::from_string(const std::string& s, Prec p) {
  BigReal r(p);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw ConfigError("not a valid decimal number: '" + s + "'");
  }
  return r;
}

std::string BigReal::str() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return "0";

  // Enough decimal digits to make text -> binary -> text the identity.
  const std::size_t digits = static_cast<std::size_t>(std::ceil(prec() * 0.3010299956639812)) + 2;
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);

  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  // Trim trailing zeros of the mantissa but keep at least one digit.
  std::size_t last = m.find_last_not_of('0');
  m.erase(last + 1);

  // mpfr convention: value = 0.m * 10^e. Render as d.ddd e(e-1).
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

} // namespace dop
