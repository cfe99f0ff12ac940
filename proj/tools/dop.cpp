#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dop/errors.hpp"
#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "dop/report.hpp"
#include "dop/verify.hpp"
#include "dop/weights.hpp"

namespace {

using dop::BigReal;
using dop::Prec;

struct CommonArgs {
  std::string a_list;
  std::string b_list;
  std::string eta;
  long prec = 0;  // 0 = default / env
};

Prec resolve_prec(long cli_prec) {
  if (cli_prec > 0) return static_cast<Prec>(cli_prec);
  if (const char* env = std::getenv("DOP_PREC")) {
    long v = std::atol(env);
    if (v < 16) throw dop::ConfigError("DOP_PREC must be an integer >= 16");
    return static_cast<Prec>(v);
  }
  return dop::kDefaultPrec;
}

std::vector<BigReal> parse_list(const std::string& csv, Prec p) {
  std::vector<BigReal> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // allow blanks from trailing commas / empty string
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(BigReal::from_string(item, p));
  }
  return out;
}

dop::PearsonWeight make_weight(const CommonArgs& c, Prec p) {
  if (c.eta.empty()) throw dop::ConfigError("--eta is required");
  return dop::PearsonWeight::make(parse_list(c.a_list, p), parse_list(c.b_list, p),
                                  BigReal::from_string(c.eta, p));
}

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--a", c.a_list, "comma-separated a parameters (empty = none)");
  cmd->add_option("--b", c.b_list, "comma-separated b parameters (empty = none)");
  cmd->add_option("--eta", c.eta, "eta parameter (decimal)")->required();
  cmd->add_option("--prec", c.prec, "working precision in bits (default: DOP_PREC or 256)");
}

int run_compute(const CommonArgs& c, std::size_t nmax, const std::string& format) {
  Prec p = resolve_prec(c.prec);
  dop::PearsonWeight w = make_weight(c, p);
  dop::CholeskyPair cp = cholesky_hankel(moment_matrix(w, nmax + 2, p), p);
  dop::JacobiCoeffs jc = recurrence_coeffs(cp);

  if (format == "csv" || format == "text") {
    std::cout << "n,beta,gamma,H\n";
    for (std::size_t n = 0; n <= nmax; ++n) {
      std::cout << n << "," << jc.beta[n].str() << ","
                << (n == 0 ? "0" : jc.gamma[n].str()) << "," << cp.H[n].str() << "\n";
    }
    return 0;
  }
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 0; n <= nmax; ++n) {
      nlohmann::json row;
      row["n"] = n;
      row["beta"] = jc.beta[n].str();
      row["gamma"] = n == 0 ? "0" : jc.gamma[n].str();
      row["H"] = cp.H[n].str();
      rows.push_back(row);
    }
    nlohmann::json out;
    out["prec"] = static_cast<long>(p);
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  throw dop::ConfigError("unknown format '" + format + "'");
}

int run_table(const CommonArgs& c, const std::string& kind, std::size_t nmax, std::size_t kmax,
              const std::string& format) {
  Prec p = resolve_prec(c.prec);
  dop::PearsonWeight w = make_weight(c, p);
  const bool json = format == "json";
  nlohmann::json rows = nlohmann::json::array();

  if (kind == "recurrence") {
    return run_compute(c, nmax, json ? "json" : "csv");
  }
  if (kind == "coeffs") {
    dop::CholeskyPair cp = cholesky_hankel(moment_matrix(w, nmax + 2, p), p);
    if (!json) {
      std::cout << "n";
      for (std::size_t m = 0; m <= nmax; ++m) std::cout << ",c" << m;
      std::cout << "\n";
    }
    for (std::size_t n = 0; n <= nmax; ++n) {
      std::vector<BigReal> coeff = cp.poly_coeffs(n);
      if (json) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : coeff) row.push_back(v.str());
        rows.push_back(row);
      } else {
        std::cout << n;
        for (std::size_t m = 0; m <= nmax; ++m) {
          std::cout << "," << (m < coeff.size() ? coeff[m].str() : "0");
        }
        std::cout << "\n";
      }
    }
  } else if (kind == "moments") {
    dop::HankelTruncation h = dop::moment_matrix(w, nmax / 2 + 2, p);
    if (!json) std::cout << "n,rho\n";
    for (std::size_t n = 0; n <= nmax && n < h.rho.size(); ++n) {
      if (json) {
        rows.push_back(h.rho[n].str());
      } else {
        std::cout << n << "," << h.rho[n].str() << "\n";
      }
    }
  } else if (kind == "weight") {
    if (!json) std::cout << "k,w\n";
    dop::WeightSweep sweep(w, p);
    for (std::size_t k = 0; k <= kmax; ++k) {
      if (json) {
        rows.push_back(sweep.value().rounded_to(p).str());
      } else {
        std::cout << k << "," << sweep.value().str() << "\n";
      }
      sweep.advance();
    }
  } else {
    throw dop::ConfigError("unknown table kind '" + kind + "'");
  }

  if (json) {
    nlohmann::json out;
    out["kind"] = kind;
    out["prec"] = static_cast<long>(p);
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int run_weight(const CommonArgs& c, const std::string& action, unsigned long k,
               const std::string& format) {
  Prec p = resolve_prec(c.prec);
  dop::PearsonWeight w = make_weight(c, p);
  if (action != "eval" && action != "pearson") {
    throw dop::ConfigError("weight action must be 'eval' or 'pearson'");
  }
  BigReal kk(static_cast<long>(k), p);
  BigReal wk = w.weight_at(k, p);
  BigReal res = w.pearson_residual(k, p);
  if (format == "json") {
    nlohmann::json out;
    out["k"] = k;
    out["prec"] = static_cast<long>(p);
    out["w"] = wk.str();
    out["theta"] = w.theta_at(kk).str();
    out["sigma"] = w.sigma_at(kk).str();
    out["pearson_residual"] = res.str();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "k = " << k << "\n"
              << "w(k) = " << wk.str() << "\n"
              << "theta(k) = " << w.theta_at(kk).str() << "\n"
              << "sigma(k) = " << w.sigma_at(kk).str() << "\n"
              << "pearson_residual(k) = " << res.str() << "\n";
  }
  if (action == "pearson") {
    BigReal scale = abs(w.sigma_at(kk) * wk);
    BigReal tol = BigReal::two_pow(-(p - 8), p) * scale;
    return abs(res) <= tol ? 0 : 1;
  }
  return 0;
}

int run_verify(const CommonArgs& c, std::vector<std::string> identities, std::size_t K,
               std::size_t nmax, const std::string& zcsv, const std::string& format,
               bool timing) {
  Prec p = resolve_prec(c.prec);
  dop::PearsonWeight w = make_weight(c, p);
  dop::SuiteOptions opt;
  opt.K = K;
  opt.prec = p;
  opt.n_max = nmax;
  opt.timing = timing;
  if (!zcsv.empty()) {
    opt.z_shift.clear();
    for (const BigReal& z : parse_list(zcsv, p)) opt.z_shift.push_back(z.to_double());
    if (opt.z_shift.empty()) throw dop::ConfigError("--z needs at least one sample");
  }
  std::vector<dop::VerificationReport> reports = dop::verify_selected(w, identities, opt);
  dop::ReportFormat fmt = format == "text" ? dop::ReportFormat::Text
                          : format == "csv" ? dop::ReportFormat::Csv
                                            : dop::ReportFormat::Json;
  std::cout << dop::render_report(reports, fmt, timing);
  return dop::all_pass(reports) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical discrete orthogonal polynomials toolkit"};
  app.require_subcommand(1);

  CommonArgs cc, cv, ct, cw;

  auto* compute = app.add_subcommand("compute", "recurrence coefficient tables");
  std::size_t nmax = 10;
  std::string cformat = "text";
  add_common(compute, cc);
  compute->add_option("--nmax", nmax, "largest degree");
  compute->add_option("--format", cformat, "text|csv|json");

  auto* verify = app.add_subcommand("verify", "run identity verification suites");
  std::string identities, zsamples;
  std::size_t K = 16, vnmax = 10;
  std::string vformat = "json";
  bool timing = false;
  add_common(verify, cv);
  verify->add_option("--identities", identities,
                     "comma list of: pearson,moments-hyper,psi,p-shift,christoffel,geronimus,"
                     "lu,ul,uvarov,quasidet (default: all)");
  verify->add_option("--K", K, "Hankel window size");
  verify->add_option("--nmax", vnmax, "degree range for the structure checks");
  verify->add_option("--z", zsamples, "comma list of z samples for the structure equations");
  verify->add_option("--format", vformat, "json|text|csv");
  verify->add_flag("--timing", timing, "include wall time (breaks byte determinism)");

  auto* table = app.add_subcommand("table", "emit tables (CSV/JSON)");
  std::string kind = "recurrence", tformat = "csv";
  std::size_t tnmax = 10, tkmax = 20;
  add_common(table, ct);
  table->add_option("--kind", kind, "recurrence|coeffs|moments|weight");
  table->add_option("--nmax", tnmax, "largest degree / moment index");
  table->add_option("--kmax", tkmax, "largest lattice point (weight tables)");
  table->add_option("--format", tformat, "csv|json");

  auto* weight = app.add_subcommand("weight", "pointwise weight diagnostics");
  std::string action = "eval";
  unsigned long kpoint = 0;
  std::string wformat = "text";
  add_common(weight, cw);
  weight->add_option("action", action, "eval|pearson")->required();
  weight->add_option("--k", kpoint, "lattice point");
  weight->add_option("--format", wformat, "text|json");

  try {
    app.parse(argc, argv);
    if (compute->parsed()) return run_compute(cc, nmax, cformat);
    if (verify->parsed()) {
      std::vector<std::string> ids;
      std::stringstream ss(identities);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) ids.push_back(item);
      }
      return run_verify(cv, ids, K, vnmax, zsamples, vformat, timing);
    }
    if (table->parsed()) return run_table(ct, kind, tnmax, tkmax, tformat);
    if (weight->parsed()) return run_weight(cw, action, kpoint, wformat);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::DivergentWeight& e) {
    std::cerr << "config error (DivergentWeight): " << e.what() << "\n";
    return 2;
  } catch (const dop::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}
