#include "dop/report.hpp"

#include <sstream>

#include <json.hpp>

namespace dop {

VerificationReport make_report(std::string identity, const PearsonWeight& w, std::size_t K,
                               Prec prec, BigReal residual, double seconds) {
  VerificationReport r;
  r.identity = std::move(identity);
  for (const auto& ai : w.params().a) r.a.push_back(ai.str());
  for (const auto& bj : w.params().b) r.b.push_back(bj.str());
  r.eta = w.params().eta.str();
  r.K = K;
  r.prec = prec;
  r.tolerance = BigReal::two_pow(-(prec / 2), prec);
  r.pass = residual <= r.tolerance;
  r.residual = std::move(residual);
  r.seconds = seconds;
  return r;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

namespace {

std::string seconds_str(double s, bool timing) {
  if (!timing) return "0";
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s;
  return os.str();
}

} // namespace

std::string render_report(const std::vector<VerificationReport>& reports, ReportFormat fmt,
                          bool timing) {
  if (fmt == ReportFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
      nlohmann::json item;
      item["identity"] = r.identity;
      item["params"]["a"] = r.a;
      item["params"]["b"] = r.b;
      item["params"]["eta"] = r.eta;
      item["K"] = r.K;
      item["prec"] = static_cast<long>(r.prec);
      item["residual"] = r.residual.str();
      item["tolerance"] = r.tolerance.str();
      item["pass"] = r.pass;
      item["seconds"] = seconds_str(r.seconds, timing);
      arr.push_back(item);
    }
    return arr.dump(2) + "\n";
  }

  std::ostringstream os;
  if (fmt == ReportFormat::Csv) {
    os << "identity,K,prec,residual,tolerance,pass,seconds\n";
    for (const auto& r : reports) {
      os << r.identity << "," << r.K << "," << r.prec << "," << r.residual.str() << ","
         << r.tolerance.str() << "," << (r.pass ? "true" : "false") << ","
         << seconds_str(r.seconds, timing) << "\n";
    }
    return os.str();
  }

  for (const auto& r : reports) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.identity << "  residual=" << r.residual.str()
       << "  tol=" << r.tolerance.str();
    if (timing) os << "  t=" << seconds_str(r.seconds, true) << "s";
    os << "\n";
  }
  return os.str();
}

} // namespace dop
