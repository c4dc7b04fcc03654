#include "kinterp/json_io.hpp"

#include <cmath>

#include "kinterp/error.hpp"

namespace kinterp {
namespace {

double read_number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw FormatError(what + ": expected a number");
}

std::vector<double> read_numbers(const Json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(read_number(v, what));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json numbers(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json index_pairs(const std::vector<IndexPair>& map) {
  Json out = Json::array();
  for (const IndexPair& p : map) out.push_back({p.x_index, p.a_index});
  return out;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const StepFunction& f) {
  Json j;
  j["breakpoints"] = numbers(f.breakpoints());
  j["values"] = numbers(f.values());
  j["tail"] = number(f.tail());
  return j;
}

Json to_json(const SingularFunction& mu) { return to_json(mu.function()); }

Json to_json(const TraceMatrix& x) {
  const Eigen::Index n = x.dim();
  Json re = Json::array();
  Json im = Json::array();
  bool complex = false;
  for (Eigen::Index r = 0; r < n; ++r) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex z = x.entries()(r, c);
      row_re.push_back(number(z.real()));
      row_im.push_back(number(z.imag()));
      complex = complex || z.imag() != 0.0;
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  Json j;
  j["n"] = n;
  j["w"] = number(x.weight());
  j["re"] = std::move(re);
  if (complex) j["im"] = std::move(im);
  return j;
}

Json to_json(const PairHom& t) {
  Json terms = Json::array();
  for (const HomTerm& term : t.terms()) terms.push_back({{"A", to_json(term.left)}, {"B", to_json(term.right)}});
  Json j;
  j["terms"] = std::move(terms);
  j["orthogonal"] = t.orthogonal();
  return j;
}

Json to_json(const CertifiedBounds& b) { return {{"m0", number(b.m0)}, {"m1", number(b.m1)}}; }

Json to_json(const TransferPlan& p) {
  Json levels = Json::array();
  for (const LevelBlock& b : p.levels) levels.push_back({{"level", b.level}, {"first", b.first}, {"last", b.last}});
  Json shifted = Json::array();
  for (const ShiftedBlock& b : p.shifted) {
    shifted.push_back(
        {{"level", b.level}, {"copy", b.copy}, {"first", b.first}, {"last", b.last}, {"kept", b.kept}});
  }
  Json maps = Json::array();
  for (const auto& m : p.index_maps) maps.push_back(index_pairs(m));

  Json j;
  j["C"] = p.c;
  j["pointwise_constant"] = number(p.pointwise_constant);
  j["delta"] = number(p.delta);
  j["margin_floor"] = number(p.margin_floor);
  j["epsilon"] = number(p.epsilon);
  j["n"] = p.dim;
  j["w"] = number(p.weight);
  j["rank_A"] = p.rank_a;
  j["rank_X"] = p.rank_x;
  j["sigma_A"] = numbers(p.sigma_a);
  j["sigma_X"] = numbers(p.sigma_x);
  j["levels"] = std::move(levels);
  j["shifted"] = std::move(shifted);
  j["index_maps"] = std::move(maps);
  j["U_A"] = to_json(p.polar_a);
  j["U_X"] = to_json(p.polar_x);
  j["A_delta"] = to_json(p.a_delta);
  j["B_delta"] = to_json(p.b_delta);
  j["B1"] = to_json(p.b1);
  j["B2"] = to_json(p.b2);
  return j;
}

Json to_json(const TransferReport& r) {
  Json j;
  j["C"] = r.c;
  j["pointwise_constant"] = number(r.pointwise_constant);
  j["reconstruction_error"] = number(r.reconstruction_error);
  j["bounds"] = to_json(r.bounds);
  j["empirical_l0_ratio"] = number(r.empirical_l0_ratio);
  j["empirical_linf_ratio"] = number(r.empirical_linf_ratio);
  j["factor_a_delta"] = number(r.factor_a_delta);
  j["factor_b2"] = number(r.factor_b2);
  j["factor_b_delta"] = number(r.factor_b_delta);
  j["factor_polar_x"] = number(r.factor_polar_x);
  j["isometry_defect"] = number(r.isometry_defect);
  j["dilation_defect"] = number(r.dilation_defect);
  j["rounding_loss"] = number(r.rounding_loss);
  j["A_delta_norm"] = number(r.a_delta_norm);
  j["B_delta_norm"] = number(r.b_delta_norm);
  j["reconstruction_ok"] = r.reconstruction_ok;
  j["bounds_ok"] = r.bounds_ok;
  j["empirical_ok"] = r.empirical_ok;
  j["factorizations_ok"] = r.factorizations_ok;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const InterpolationReport& r) {
  Json j;
  j["bounds"] = to_json(r.bounds);
  j["worst_margin"] = number(r.worst_margin);
  j["worst_t"] = number(r.worst_t);
  j["points_checked"] = r.points_checked;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const OrbitCheckReport& r) {
  Json violations = Json::array();
  for (const auto& [a, b] : r.violations) violations.push_back({number(a), number(b)});
  Json j;
  j["c"] = number(r.c);
  j["pass"] = r.pass;
  j["worst_margin"] = number(r.worst_margin);
  j["worst_t"] = number(r.worst_t);
  j["violations"] = std::move(violations);
  return j;
}

Json to_json(const CounterexampleReport& r) {
  Json j;
  j["tau1"] = number(r.spec.tau1);
  j["tau2"] = number(r.spec.tau2);
  j["k1"] = number(r.spec.k1);
  j["k2"] = number(r.spec.k2);
  j["w"] = number(r.weight);
  j["rank1"] = r.rank1;
  j["rank2"] = r.rank2;
  j["korbit_X_over_A"] = number(r.korbit_x_over_a);
  j["korbit_A_over_X"] = number(r.korbit_a_over_x);
  j["closed_form_error"] = number(r.closed_form_error);
  j["curves_identical"] = r.curves_identical;
  j["mu_A_on_gap"] = number(r.mu_a_on_gap);
  j["mu_X_on_gap"] = number(r.mu_x_on_gap);
  j["strict_gap"] = r.strict_gap;
  j["orbit_check"] = to_json(r.orbit);
  j["certified"] = r.certified();
  return j;
}

StepFunction step_from_json(const Json& j) {
  std::vector<double> breakpoints = read_numbers(field(j, "breakpoints"), "breakpoints");
  std::vector<double> values = read_numbers(field(j, "values"), "values");
  const double tail = j.contains("tail") ? read_number(j.at("tail"), "tail") : 0.0;
  if (breakpoints.size() != values.size()) throw FormatError("breakpoints and values differ in length");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) throw FormatError("breakpoints are not strictly increasing");
  }
  try {
    return StepFunction(std::move(breakpoints), std::move(values), tail);
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid step function: ") + e.what());
  }
}

TraceMatrix matrix_from_json(const Json& j) {
  const Json& jn = field(j, "n");
  if (!jn.is_number_integer() || jn.get<long long>() < 0) throw FormatError("n: expected a nonnegative integer");
  const auto n = static_cast<Eigen::Index>(jn.get<long long>());
  const double w = j.contains("w") ? read_number(j.at("w"), "w") : 1.0;
  auto read_block = [&](const char* key, Matrix& m, bool real) {
    const Json& rows = field(j, key);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw FormatError(std::string(key) + ": expected " + std::to_string(n) + " rows");
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::vector<double> row = read_numbers(rows[static_cast<std::size_t>(r)], key);
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw FormatError(std::string(key) + ": row " + std::to_string(r) + " has the wrong length");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        if (real) m(r, c).real(row[static_cast<std::size_t>(c)]);
        else m(r, c).imag(row[static_cast<std::size_t>(c)]);
      }
    }
  };
  Matrix m = Matrix::Zero(n, n);
  read_block("re", m, true);
  if (j.contains("im")) read_block("im", m, false);
  try {
    return TraceMatrix(std::move(m), w);
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid matrix: ") + e.what());
  }
}

PairHom hom_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw FormatError("terms: expected an array");
  std::vector<HomTerm> out;
  for (const Json& t : terms) out.push_back({matrix_from_json(field(t, "A")), matrix_from_json(field(t, "B"))});
  const bool orthogonal = j.contains("orthogonal") && j.at("orthogonal").get<bool>();
  try {
    return PairHom(std::move(out), orthogonal);
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid hom: ") + e.what());
  }
}

}  // namespace kinterp
