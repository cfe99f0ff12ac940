#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dop/bigreal.hpp"
#include "dop/weights.hpp"

namespace dop {

/// Outcome of one identity check. Numeric fields are kept as BigReal for
/// precision-comparison runs and rendered as decimal strings on output.
struct VerificationReport {
  std::string identity;
  std::vector<std::string> a, b;
  std::string eta;
  std::size_t K = 0;
  Prec prec = kDefaultPrec;
  BigReal residual;
  BigReal tolerance;
  bool pass = false;
  double seconds = 0.0;
};

VerificationReport make_report(std::string identity, const PearsonWeight& w, std::size_t K,
                               Prec prec, BigReal residual, double seconds);

enum class ReportFormat { Text, Json, Csv };

/// Deterministic rendering: sorted JSON keys, numbers as decimal strings. The
/// seconds column is zeroed unless `timing` is set, keeping byte-identical
/// output for identical configurations.
std::string render_report(const std::vector<VerificationReport>& reports, ReportFormat fmt,
                          bool timing = false);

bool all_pass(const std::vector<VerificationReport>& reports);

} // namespace dop
