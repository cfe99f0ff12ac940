#include "dop/weights.hpp"

#include <sstream>

#include "dop/errors.hpp"

namespace dop {

namespace {

Prec params_prec(const std::vector<BigReal>& a, const std::vector<BigReal>& b,
                 const BigReal& eta) {
  Prec p = eta.prec();
  for (const auto& v : a) p = std::max(p, v.prec());
  for (const auto& v : b) p = std::max(p, v.prec());
  return p;
}

/// Expands prod (z - roots[i]) on top of `base` coefficients (low -> high).
std::vector<BigReal> expand_roots(std::vector<BigReal> base, const std::vector<BigReal>& roots,
                                  Prec p) {
  for (const auto& r : roots) {
    std::vector<BigReal> next(base.size() + 1, BigReal(p));
    for (std::size_t i = 0; i < base.size(); ++i) {
      next[i + 1] += base[i];
      next[i] -= r * base[i];
    }
    base = std::move(next);
  }
  return base;
}

} // namespace

BigReal ParameterSet::kappa() const {
  Prec p = eta.prec();
  BigReal k(1L, p);
  for (const auto& ai : a) k *= ai;
  for (const auto& bj : b) k /= bj;
  return k;
}

BigReal ParameterSet::upsilon() const {
  BigReal u = eta;
  for (const auto& ai : a) u *= (ai - 1L);
  for (const auto& bj : b) u /= (bj - 1L);
  return u;
}

std::string ShiftSpec::name() const {
  std::string base;
  switch (kind) {
    case Kind::IT: base = "IT(" + std::to_string(index) + ")"; break;
    case Kind::TJ: base = "TJ(" + std::to_string(index) + ")"; break;
    case Kind::Total: base = "T"; break;
  }
  return forward ? base : base + "^-1";
}

PearsonWeight PearsonWeight::make(std::vector<BigReal> a, std::vector<BigReal> b, BigReal eta) {
  const Prec p = params_prec(a, b, eta);
  if (!(eta > 0)) throw DomainError("eta must be positive");
  for (const auto& ai : a) {
    if (!(ai > 0)) throw DomainError("every a_i must be positive");
  }
  for (const auto& bj : b) {
    if (!(bj > 0)) throw DomainError("every b_j must be positive");
    if (bj == 1L) throw DomainError("b_j = 1 makes the theta root -b_j+1 collide with the lattice point 0");
  }
  const std::size_t M = a.size(), N = b.size();
  if (M > N + 1) throw DivergentWeight("moment series diverges: deg sigma > deg theta");
  if (M == N + 1 && !(eta < 1)) {
    throw DivergentWeight("moment series diverges: M = N+1 requires 0 < eta < 1");
  }

  // theta(z) = z * prod (z + b_j - 1): roots 0 and -(b_j - 1).
  std::vector<BigReal> theta_roots;
  theta_roots.reserve(N + 1);
  theta_roots.emplace_back(p);  // 0
  for (const auto& bj : b) theta_roots.push_back(-(bj - 1L));
  std::vector<BigReal> theta = expand_roots({BigReal(1L, p)}, theta_roots, p);

  // sigma(z) = eta * prod (z + a_i): roots -a_i, leading coefficient eta.
  std::vector<BigReal> sigma_roots;
  sigma_roots.reserve(M);
  for (const auto& ai : a) sigma_roots.push_back(-ai);
  std::vector<BigReal> sigma = expand_roots({BigReal(1L, p)}, sigma_roots, p);
  for (auto& c : sigma) c *= eta;

  ParameterSet ps{std::move(a), std::move(b), std::move(eta)};
  return PearsonWeight(std::move(ps), std::move(theta), std::move(sigma));
}

PearsonWeight PearsonWeight::make(const std::vector<double>& a, const std::vector<double>& b,
                                  double eta, Prec prec) {
  std::vector<BigReal> aa, bb;
  aa.reserve(a.size());
  bb.reserve(b.size());
  for (double v : a) aa.emplace_back(v, prec);
  for (double v : b) bb.emplace_back(v, prec);
  return make(std::move(aa), std::move(bb), BigReal(eta, prec));
}

BigReal PearsonWeight::theta_at(const BigReal& z) const {
  BigReal r = z;
  for (const auto& bj : params_.b) r *= (z + bj - 1L);
  return r;
}

BigReal PearsonWeight::sigma_at(const BigReal& z) const {
  BigReal r = params_.eta.rounded_to(z.prec() > params_.eta.prec() ? z.prec() : params_.eta.prec());
  for (const auto& ai : params_.a) r *= (z + ai);
  return r;
}

BigReal PearsonWeight::weight_at(unsigned long k, Prec prec) const {
  WeightSweep sweep(*this, prec);
  while (sweep.k() < k) sweep.advance();
  return sweep.value();
}

BigReal PearsonWeight::pearson_residual(unsigned long k, Prec prec) const {
  WeightSweep sweep(*this, prec);
  while (sweep.k() < k) sweep.advance();
  BigReal wk = sweep.value();
  sweep.advance();
  BigReal wk1 = sweep.value();
  BigReal kk(static_cast<long>(k), prec);
  return theta_at(kk + 1L) * wk1 - sigma_at(kk) * wk;
}

PearsonWeight PearsonWeight::shifted(const ShiftSpec& s) const {
  std::vector<BigReal> a = params_.a;
  std::vector<BigReal> b = params_.b;
  const long step = s.forward ? 1 : -1;
  switch (s.kind) {
    case ShiftSpec::Kind::IT:
      if (s.index < 1 || s.index > a.size()) throw DomainError("IT index out of range");
      a[s.index - 1] += step;
      break;
    case ShiftSpec::Kind::TJ:
      // TJ forward lowers b_j by one (contiguous direction of the b-shift).
      if (s.index < 1 || s.index > b.size()) throw DomainError("TJ index out of range");
      b[s.index - 1] -= step;
      break;
    case ShiftSpec::Kind::Total:
      for (auto& ai : a) ai += step;
      for (auto& bj : b) bj += step;
      break;
  }
  return make(std::move(a), std::move(b), params_.eta);
}

std::string PearsonWeight::describe() const {
  std::ostringstream os;
  os << "w(a=[";
  for (std::size_t i = 0; i < params_.a.size(); ++i) {
    if (i) os << ",";
    os << params_.a[i].to_double();
  }
  os << "], b=[";
  for (std::size_t j = 0; j < params_.b.size(); ++j) {
    if (j) os << ",";
    os << params_.b[j].to_double();
  }
  os << "], eta=" << params_.eta.to_double() << ")";
  return os.str();
}

WeightSweep::WeightSweep(const PearsonWeight& w, Prec p)
    : w_(w), p_(p), k_(0), wk_(1L, p) {}

void WeightSweep::advance() {
  // w(k+1) = sigma(k) w(k) / theta(k+1)
  BigReal kk(static_cast<long>(k_), p_);
  wk_ = w_.sigma_at(kk) * wk_ / w_.theta_at(kk + 1L);
  ++k_;
}

} // namespace dop
