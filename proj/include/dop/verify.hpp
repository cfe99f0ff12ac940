#pragma once

#include <string>
#include <vector>

#include "dop/report.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Knobs shared by the identity suites. K is the nominal Hankel window;
/// suites that need more rows for their stated degree range enlarge the
/// internal window themselves (operands are always computed large enough
/// that every checked entry is exact up to roundoff).
struct SuiteOptions {
  std::size_t K = 16;
  Prec prec = kDefaultPrec;
  std::size_t n_max = 10;
  std::size_t n_max_transform = 8;
  unsigned long pearson_kmax = 200;
  std::vector<double> z_shift = {2.0, 5.0, 11.0};     // p-shift samples
  std::vector<double> z_connect = {0.0, 0.5, 2.5, 4.25, 7.0};  // connection samples
  std::vector<double> z_offlattice = {4.3, 9.7};      // second-kind samples
  std::vector<double> z_quasidet = {2.5, 6.5, 11.25};
  bool timing = false;
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "pearson",    "moments-hyper", "psi", "p-shift", "christoffel",
      "geronimus",  "lu",            "ul",  "uvarov",  "quasidet"};
  return names;
}

/// Runs one named identity suite on a weight.
std::vector<VerificationReport> verify_identity(const PearsonWeight& w, const std::string& name,
                                                const SuiteOptions& opt);

/// Runs a selection of suites (empty selection = all).
std::vector<VerificationReport> verify_selected(const PearsonWeight& w,
                                                const std::vector<std::string>& names,
                                                const SuiteOptions& opt);

} // namespace dop
