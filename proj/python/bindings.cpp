// Python bindings. Matrices cross as complex numpy arrays with a trace weight
// w, step functions as dicts {"breakpoints", "values", "tail"}, and reports
// as dicts in the same layout the command-line tool writes.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "kinterp/delta_norm.hpp"
#include "kinterp/error.hpp"
#include "kinterp/json_io.hpp"
#include "kinterp/k_functional.hpp"
#include "kinterp/orbits.hpp"
#include "kinterp/pair_hom.hpp"
#include "kinterp/suite.hpp"
#include "kinterp/transfer.hpp"

namespace py = pybind11;
using namespace kinterp;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_python(const py::handle& obj) {
  return parse_json(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

// A dict is a step function; anything else is a square matrix.
SingularFunction singular_of(const py::object& obj, double w) {
  if (py::isinstance<py::dict>(obj)) return rearrange(step_from_json(from_python(obj)));
  return mu_of(TraceMatrix(obj.cast<Matrix>(), w));
}

TraceMatrix matrix(const Matrix& m, double w) { return TraceMatrix(m, w); }

PairHom hom_of(const std::vector<std::pair<Matrix, Matrix>>& terms, double w, bool orthogonal) {
  std::vector<HomTerm> out;
  out.reserve(terms.size());
  for (const auto& [a, b] : terms) out.push_back({TraceMatrix(a, w), TraceMatrix(b, w)});
  return PairHom(std::move(out), orthogonal);
}

py::list terms_of(const PairHom& t) {
  py::list out;
  for (const HomTerm& term : t.terms()) out.append(py::make_tuple(term.left.entries(), term.right.entries()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_kinterp, m) {
  m.doc() = "K-functional, K-orbit and transfer computations for trace matrix models";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_RuntimeError);

  m.def(
      "mu", [](const py::object& x, double w) { return to_python(to_json(singular_of(x, w))); },
      py::arg("x"), py::arg("w") = 1.0, "Singular value function as a step function dict.");

  m.def(
      "k_at", [](const py::object& x, double u, double w) { return k_at(singular_of(x, w), u); }, py::arg("x"),
      py::arg("u"), py::arg("w") = 1.0, "K(u; x) for the couple (L0, Linf).");

  m.def(
      "k_curve",
      [](const py::object& x, const std::vector<double>& us, double w) {
        const KCurve k(singular_of(x, w));
        std::vector<double> out;
        out.reserve(us.size());
        for (double u : us) out.push_back(k(u));
        return out;
      },
      py::arg("x"), py::arg("u"), py::arg("w") = 1.0, "K(u; x) on a list of u.");

  m.def(
      "m_at", [](const py::object& x, double t, double w) { return m_at(singular_of(x, w), t); }, py::arg("x"),
      py::arg("t"), py::arg("w") = 1.0, "M(t; x) = t mu(t; x).");

  m.def(
      "decompose",
      [](const Matrix& x, double u, double w) {
        const KWitness k = optimal_decomposition(matrix(x, w), u);
        py::dict out;
        out["value"] = k.value;
        out["cut"] = k.cut;
        out["G"] = k.g.entries();
        out["H"] = k.h.entries();
        return out;
      },
      py::arg("x"), py::arg("u"), py::arg("w") = 1.0, "Optimal X = G + H attaining K(u; X).");

  m.def(
      "korbit_norm",
      [](const py::object& x, const py::object& a, double w) { return korbit_norm(singular_of(x, w), singular_of(a, w)); },
      py::arg("x"), py::arg("a"), py::arg("w") = 1.0, "sup_u K(u; x) / K(u; a).");

  m.def(
      "pointwise_constant",
      [](const py::object& x, const py::object& a, double w) {
        return pointwise_constant(singular_of(x, w), singular_of(a, w));
      },
      py::arg("x"), py::arg("a"), py::arg("w") = 1.0,
      "Least C >= 1 with mu(t; x) <= C mu(t / C; a), or None when none exists.");

  m.def(
      "orbit_check",
      [](const py::object& y, const py::object& x, double c, double w) {
        return to_python(to_json(orbit_necessary_check(singular_of(y, w), singular_of(x, w), c)));
      },
      py::arg("y"), py::arg("x"), py::arg("c") = 1.0, py::arg("w") = 1.0,
      "Check mu(t; y) <= c mu(t / c; x) for all t.");

  m.def(
      "counterexample",
      [](double tau1, double tau2, double k1, double k2, std::optional<double> weight) {
        const Counterexample cx = counterexample({tau1, tau2, k1, k2, weight});
        py::dict out;
        out["A"] = cx.a.entries();
        out["X"] = cx.x.entries();
        out["w"] = cx.a.weight();
        out["report"] = to_python(to_json(cx.report));
        out["certificate"] = certificate_text(cx.report);
        return out;
      },
      py::arg("tau1"), py::arg("tau2"), py::arg("k1"), py::arg("k2"), py::arg("w") = py::none(),
      "Pair with equal K-curves where X is not in the pointwise orbit of A.");

  m.def(
      "apply",
      [](const std::vector<std::pair<Matrix, Matrix>>& terms, const Matrix& z, double w) {
        return apply(hom_of(terms, w, false), matrix(z, w)).entries();
      },
      py::arg("terms"), py::arg("z"), py::arg("w") = 1.0, "sum_i A_i Z B_i.");

  m.def(
      "check_interp",
      [](const std::vector<std::pair<Matrix, Matrix>>& terms, const Matrix& x, bool orthogonal, double w,
         std::optional<std::vector<std::string>> norms) {
        const PairHom t = hom_of(terms, w, orthogonal);
        const TraceMatrix xm = matrix(x, w);
        const InterpolationReport ir = interpolation_check(t, xm);
        bool pass = ir.pass;
        Json bounds = Json::array();
        for (const std::string& key : norms.value_or(builtin_norm_keys())) {
          const ENormBoundReport r = enorm_bound_check(t, xm, norm_by_key(key));
          pass = pass && r.pass;
          bounds.push_back({{"norm", r.norm}, {"k", r.k}, {"factor", number(r.factor)}, {"lhs", number(r.lhs)},
                            {"rhs", number(r.rhs)}, {"pass", r.pass}});
        }
        Json j;
        j["interpolation"] = to_json(ir);
        j["enorm_bounds"] = std::move(bounds);
        j["pass"] = pass;
        return to_python(j);
      },
      py::arg("terms"), py::arg("x"), py::arg("orthogonal") = false, py::arg("w") = 1.0,
      py::arg("norms") = py::none(), "Interpolation inequality and E-norm bounds for T = sum A_i . B_i.");

  m.def(
      "transfer",
      [](const Matrix& a, const Matrix& x, double w, std::uint64_t seed, std::size_t samples) {
        const TraceMatrix am = matrix(a, w), xm = matrix(x, w);
        const TransferPlan p = plan(am, xm);
        const PairHom t = build(p, am, xm);
        const TransferReport r = verify(t, am, xm, p, seed, samples);
        py::dict out;
        out["plan"] = to_python(to_json(p));
        out["terms"] = terms_of(t);
        out["orthogonal"] = t.orthogonal();
        out["report"] = to_python(to_json(r));
        return out;
      },
      py::arg("a"), py::arg("x"), py::arg("w") = 1.0, py::arg("seed") = 0, py::arg("samples") = 100,
      "Build and verify T with TA = X from the pointwise constant of (X, A).");

  m.def(
      "run_suite",
      [](std::uint64_t seed, std::optional<double> tolerance) {
        return to_python(to_json(run_suite({seed, tolerance})));
      },
      py::arg("seed") = 42, py::arg("tolerance") = py::none(), "Seeded property suite over every module.");

  m.def("norm_keys", &builtin_norm_keys, "Keys of the built-in symmetric norms.");
}
