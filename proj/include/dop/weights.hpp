#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dop/bigreal.hpp"

namespace dop {

/// Pearson data (a_1..a_M; b_1..b_N; eta) plus derived constants.
/// Positivity and moment-series convergence are enforced at construction.
struct ParameterSet {
  std::vector<BigReal> a;
  std::vector<BigReal> b;
  BigReal eta;

  std::size_t M() const { return a.size(); }
  std::size_t N() const { return b.size(); }

  /// kappa = prod a_i / prod b_j (empty products are 1).
  BigReal kappa() const;
  /// Upsilon = eta * prod(a_i - 1) / prod(b_j - 1).
  BigReal upsilon() const;
};

/// Parameter shift: IT(i) bumps a_i, TJ(j) lowers b_j, Total bumps everything.
/// `forward` selects the transformation direction; `inverse()` flips it.
struct ShiftSpec {
  enum class Kind { IT, TJ, Total };
  Kind kind = Kind::Total;
  std::size_t index = 1;  // 1-based, ignored for Total
  bool forward = true;

  static ShiftSpec it(std::size_t i, bool fwd = true) { return {Kind::IT, i, fwd}; }
  static ShiftSpec tj(std::size_t j, bool fwd = true) { return {Kind::TJ, j, fwd}; }
  static ShiftSpec total(bool fwd = true) { return {Kind::Total, 1, fwd}; }

  ShiftSpec inverse() const { return {kind, index, !forward}; }
  std::string name() const;
};

/// Semiclassical discrete weight on N_0 defined by theta(k+1) w(k+1) = sigma(k) w(k),
/// w(0) = 1, with theta(z) = z * prod(z + b_j - 1) monic and
/// sigma(z) = eta * prod(z + a_i).
class PearsonWeight {
public:
  static PearsonWeight make(std::vector<BigReal> a, std::vector<BigReal> b, BigReal eta);
  static PearsonWeight make(const std::vector<double>& a, const std::vector<double>& b,
                            double eta, Prec prec);

  const ParameterSet& params() const { return params_; }
  std::size_t M() const { return params_.M(); }
  std::size_t N() const { return params_.N(); }

  /// Expanded coefficients, low -> high degree. theta has degree N+1 (monic,
  /// constant term exactly zero); sigma has degree M with leading coefficient eta.
  const std::vector<BigReal>& theta_coeffs() const { return theta_; }
  const std::vector<BigReal>& sigma_coeffs() const { return sigma_; }

  /// theta, sigma evaluated through the root-product forms.
  BigReal theta_at(const BigReal& z) const;
  BigReal sigma_at(const BigReal& z) const;

  /// w(k) by the Pearson ratio iteration from w(0) = 1 (running products, no Gamma).
  BigReal weight_at(unsigned long k, Prec prec) const;

  /// theta(k+1) w(k+1) - sigma(k) w(k); vanishes to roundoff for every valid weight.
  BigReal pearson_residual(unsigned long k, Prec prec) const;

  /// Weight with one parameter (or all, for Total) shifted by +-1.
  PearsonWeight shifted(const ShiftSpec& s) const;

  std::string describe() const;

private:
  PearsonWeight(ParameterSet p, std::vector<BigReal> theta, std::vector<BigReal> sigma)
      : params_(std::move(p)), theta_(std::move(theta)), sigma_(std::move(sigma)) {}

  ParameterSet params_;
  std::vector<BigReal> theta_;
  std::vector<BigReal> sigma_;
};

/// Incremental sweep over w(0), w(1), ... at fixed precision; shared by the
/// series summations so the weight is advanced once per lattice point.
class WeightSweep {
public:
  WeightSweep(const PearsonWeight& w, Prec p);

  unsigned long k() const { return k_; }
  const BigReal& value() const { return wk_; }
  void advance();

private:
  const PearsonWeight& w_;
  Prec p_;
  unsigned long k_;
  BigReal wk_;
};

} // namespace dop
