#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dop/errors.hpp"
#include "dop/moments.hpp"
#include "dop/orthopoly.hpp"
#include "dop/report.hpp"
#include "dop/transforms.hpp"
#include "dop/verify.hpp"
#include "dop/weights.hpp"

namespace py = pybind11;

namespace {

using dop::BigReal;
using dop::Prec;

dop::ShiftSpec parse_shift(const std::string& kind, std::size_t index, bool forward) {
  if (kind == "it") return {dop::ShiftSpec::Kind::IT, index, forward};
  if (kind == "tj") return {dop::ShiftSpec::Kind::TJ, index, forward};
  if (kind == "total") return {dop::ShiftSpec::Kind::Total, index, forward};
  throw dop::ConfigError("shift kind must be 'it', 'tj' or 'total'");
}

/// Python-facing handle bundling a weight with its orthogonalization data.
class Basis {
public:
  Basis(std::vector<std::string> a, std::vector<std::string> b, std::string eta, std::size_t K,
        long prec)
      : prec_(static_cast<Prec>(prec)),
        w_(make_weight(std::move(a), std::move(b), std::move(eta), prec_)),
        K_(K),
        cp_(cholesky_hankel(moment_matrix(w_, K, prec_), prec_)),
        jc_(recurrence_coeffs(cp_)) {}

  std::size_t K() const { return K_; }
  long prec() const { return prec_; }

  std::string weight_at(unsigned long k) const { return w_.weight_at(k, prec_).str(); }
  double weight_at_f(unsigned long k) const { return w_.weight_at(k, prec_).to_double(); }
  std::string pearson_residual(unsigned long k) const {
    return w_.pearson_residual(k, prec_).str();
  }

  std::string moment(unsigned long n) const { return dop::moment(w_, n, prec_).str(); }

  std::vector<double> beta_f() const { return to_f(jc_.beta); }
  std::vector<double> gamma_f() const {
    std::vector<BigReal> g(jc_.gamma.begin() + 1, jc_.gamma.end());
    return to_f(g);
  }
  std::vector<double> norms_f() const { return to_f(cp_.H); }
  std::vector<std::string> beta() const { return to_s(jc_.beta); }
  std::vector<std::string> gamma() const {
    std::vector<BigReal> g(jc_.gamma.begin() + 1, jc_.gamma.end());
    return to_s(g);
  }
  std::vector<std::string> norms() const { return to_s(cp_.H); }

  std::vector<std::string> poly_coeffs(std::size_t n) const { return to_s(cp_.poly_coeffs(n)); }

  double eval_poly(std::size_t n, double z) const {
    return dop::eval_poly(jc_, n, BigReal(z, prec_)).to_double();
  }
  double second_kind(std::size_t n, double z) const {
    return dop::second_kind(w_, jc_, n, BigReal(z, prec_), prec_).to_double();
  }

  double christoffel(const std::string& kind, std::size_t index, std::size_t n, double z) const {
    return dop::christoffel_poly(w_, cp_, parse_shift(kind, index, true), n, BigReal(z, prec_),
                                 prec_)
        .to_double();
  }
  double geronimus(const std::string& kind, std::size_t index, std::size_t n, double z) const {
    return dop::geronimus_poly(w_, cp_, parse_shift(kind, index, false), n, BigReal(z, prec_),
                               prec_)
        .to_double();
  }
  /// Quasi-determinantal shifted polynomial: theta(z) P_n(z-1) for
  /// direction -1, (sigma(z)/eta) P_n(z+1) for +1.
  double determinantal(std::size_t n, double z, int direction) const {
    return dop::shifted_poly_determinantal(w_, cp_, n, BigReal(z, prec_), direction, prec_)
        .to_double();
  }

  py::list verify(const std::vector<std::string>& identities) const {
    dop::SuiteOptions opt;
    opt.K = K_;
    opt.prec = prec_;
    py::list out;
    for (const auto& r : dop::verify_selected(w_, identities, opt)) {
      py::dict d;
      d["identity"] = r.identity;
      d["K"] = r.K;
      d["prec"] = static_cast<long>(r.prec);
      d["residual"] = r.residual.str();
      d["residual_f"] = r.residual.to_double();
      d["tolerance"] = r.tolerance.str();
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  }

private:
  static dop::PearsonWeight make_weight(std::vector<std::string> a, std::vector<std::string> b,
                                        std::string eta, Prec p) {
    std::vector<BigReal> aa, bb;
    aa.reserve(a.size());
    bb.reserve(b.size());
    for (const auto& s : a) aa.push_back(BigReal::from_string(s, p));
    for (const auto& s : b) bb.push_back(BigReal::from_string(s, p));
    return dop::PearsonWeight::make(std::move(aa), std::move(bb),
                                    BigReal::from_string(eta, p));
  }

  static std::vector<double> to_f(const std::vector<BigReal>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.to_double());
    return out;
  }
  static std::vector<std::string> to_s(const std::vector<BigReal>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.str());
    return out;
  }

  Prec prec_;
  dop::PearsonWeight w_;
  std::size_t K_;
  dop::CholeskyPair cp_;
  dop::JacobiCoeffs jc_;
};

} // namespace

PYBIND11_MODULE(pydop, m) {
  m.doc() = "semiclassical discrete orthogonal polynomials (high-precision core)";

  // Base registered first: translators run newest-first, so the specific
  // exceptions must come after the catch-all.
  py::register_exception<dop::Error>(m, "DopError");
  py::register_exception<dop::DomainError>(m, "DomainError");
  py::register_exception<dop::DivergentWeight>(m, "DivergentWeight");
  py::register_exception<dop::PoleError>(m, "PoleError");
  py::register_exception<dop::HypothesisViolated>(m, "HypothesisViolated");

  py::class_<Basis>(m, "Basis")
      .def(py::init<std::vector<std::string>, std::vector<std::string>, std::string, std::size_t,
                    long>(),
           py::arg("a"), py::arg("b"), py::arg("eta"), py::arg("K") = 16, py::arg("prec") = 256)
      .def_property_readonly("K", &Basis::K)
      .def_property_readonly("prec", &Basis::prec)
      .def("weight_at", &Basis::weight_at, py::arg("k"))
      .def("weight_at_f", &Basis::weight_at_f, py::arg("k"))
      .def("pearson_residual", &Basis::pearson_residual, py::arg("k"))
      .def("moment", &Basis::moment, py::arg("n"))
      .def("beta", &Basis::beta)
      .def("gamma", &Basis::gamma)
      .def("norms", &Basis::norms)
      .def("beta_f", &Basis::beta_f)
      .def("gamma_f", &Basis::gamma_f)
      .def("norms_f", &Basis::norms_f)
      .def("poly_coeffs", &Basis::poly_coeffs, py::arg("n"))
      .def("eval_poly", &Basis::eval_poly, py::arg("n"), py::arg("z"))
      .def("second_kind", &Basis::second_kind, py::arg("n"), py::arg("z"))
      .def("christoffel", &Basis::christoffel, py::arg("kind"), py::arg("index"), py::arg("n"),
           py::arg("z"))
      .def("geronimus", &Basis::geronimus, py::arg("kind"), py::arg("index"), py::arg("n"),
           py::arg("z"))
      .def("determinantal", &Basis::determinantal, py::arg("n"), py::arg("z"),
           py::arg("direction"))
      .def("verify", &Basis::verify, py::arg("identities") = std::vector<std::string>{});

  m.attr("__version__") = "0.1.0";
  m.attr("identities") = dop::identity_names();
}
