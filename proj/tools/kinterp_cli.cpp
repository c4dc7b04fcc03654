// kinterp: command-line front end.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage, I/O or
// format error, 3 domain error (inputs outside an operation's preconditions).
// KINTERP_TOL, when set, replaces the relative tolerance of check-interp and
// verify-suite.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "kinterp/delta_norm.hpp"
#include "kinterp/error.hpp"
#include "kinterp/json_io.hpp"
#include "kinterp/k_functional.hpp"
#include "kinterp/orbits.hpp"
#include "kinterp/suite.hpp"
#include "kinterp/transfer.hpp"

namespace fs = std::filesystem;
using namespace kinterp;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kIoError = 2, kDomainError = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary and renames it over the target.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

using Input = std::variant<StepFunction, TraceMatrix>;

Input read_input(const std::string& path) {
  const Json j = parse_json(read_file(path));
  if (j.is_object() && j.contains("n")) return matrix_from_json(j);
  return step_from_json(j);
}

SingularFunction singular_of(const Input& in) {
  if (const auto* m = std::get_if<TraceMatrix>(&in)) return mu_of(*m);
  return rearrange(std::get<StepFunction>(in));
}

TraceMatrix read_matrix(const std::string& path) { return matrix_from_json(parse_json(read_file(path))); }

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("KINTERP_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) throw IoError(std::string("KINTERP_TOL is not a positive number: ") + raw);
  return v;
}

struct GridArgs {
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t points = 100;
};

void add_grid(CLI::App* cmd, GridArgs& g) {
  cmd->add_option("--u-min", g.lo, "Smallest grid point")->check(CLI::PositiveNumber);
  cmd->add_option("--u-max", g.hi, "Largest grid point")->check(CLI::PositiveNumber);
  cmd->add_option("--points", g.points, "Number of log-spaced grid points (>= 2)")->check(CLI::Range(2, 1000000));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculus of the couple (L0, Linf): singular value functions, K-functionals, orbits and transfer"};
  app.require_subcommand(1);

  std::string in_path, out_path, m_out_path, a_path, x_path, hom_path, out_dir;
  GridArgs grid;
  double u = 1.0;
  std::vector<std::string> norm_keys;
  CounterexampleSpec spec;
  double weight = 0.0;
  std::uint64_t seed = 42;
  std::size_t samples = 100;

  auto* mu_cmd = app.add_subcommand("mu", "Decreasing rearrangement or singular value function of an input");
  mu_cmd->add_option("--in", in_path, "Step function or matrix JSON")->required();
  mu_cmd->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* kcurve_cmd = app.add_subcommand("kcurve", "CSV of K_u and M_t on a log grid");
  kcurve_cmd->add_option("--in", in_path, "Step function or matrix JSON")->required();
  kcurve_cmd->add_option("--out", out_path, "K-curve CSV (default stdout)");
  kcurve_cmd->add_option("--m-out", m_out_path, "M-curve CSV");
  add_grid(kcurve_cmd, grid);

  auto* dec_cmd = app.add_subcommand("decompose", "Optimal (L0, Linf) decomposition at parameter u");
  dec_cmd->add_option("--in", in_path, "Step function or matrix JSON")->required();
  dec_cmd->add_option("--u", u, "Parameter u > 0")->required();
  dec_cmd->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* interp_cmd = app.add_subcommand("check-interp", "Interpolation inequality and E-norm bounds of a hom");
  interp_cmd->add_option("--hom", hom_path, "Hom JSON")->required();
  interp_cmd->add_option("--X", x_path, "Matrix JSON")->required();
  interp_cmd->add_option("--norm", norm_keys, "Norm keys (default: all built-in)");
  interp_cmd->add_option("--out", out_path, "Report JSON (default stdout)");

  auto* korbit_cmd = app.add_subcommand("korbit", "K-orbit norm of X relative to A and the pointwise constant");
  korbit_cmd->add_option("--X", x_path, "Step function or matrix JSON")->required();
  korbit_cmd->add_option("--A", a_path, "Step function or matrix JSON")->required();
  korbit_cmd->add_option("--out", out_path, "Report JSON (default stdout)");

  auto* cx_cmd = app.add_subcommand("counterexample", "Pair in the K-orbit ball but not in the orbit ball");
  cx_cmd->add_option("--tau1", spec.tau1, "Trace of P1")->required();
  cx_cmd->add_option("--tau2", spec.tau2, "Trace of P2")->required();
  cx_cmd->add_option("--k1", spec.k1, "Level of A on P1")->required();
  cx_cmd->add_option("--k2", spec.k2, "Level of A on P2")->required();
  cx_cmd->add_option("--w", weight, "Trace weight (default: derived from tau1 : tau2)");
  cx_cmd->add_option("--out-dir", out_dir, "Directory for A.json, X.json, certificate.txt, kcurve_A.csv, kcurve_X.csv");
  add_grid(cx_cmd, grid);

  auto* tr_cmd = app.add_subcommand("transfer", "Build T with TA = X and bounds <= 2C, and verify it");
  tr_cmd->add_option("--A", a_path, "Matrix JSON")->required();
  tr_cmd->add_option("--X", x_path, "Matrix JSON")->required();
  tr_cmd->add_option("--out", out_path, "Plan, hom and report JSON (default stdout)");
  tr_cmd->add_option("--seed", seed, "Seed of the empirical bound check");
  tr_cmd->add_option("--samples", samples, "Random Z for the empirical bound check");

  auto* suite_cmd = app.add_subcommand("verify-suite", "Full property battery, JSON pass/fail summary");
  suite_cmd->add_option("--seed", seed, "Seed");
  suite_cmd->add_option("--out", out_path, "Report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    const std::optional<double> tol = env_tolerance();

    if (*mu_cmd) {
      write_output(out_path, dump(to_json(singular_of(read_input(in_path)))));
      return kOk;
    }

    if (*kcurve_cmd) {
      const SingularFunction mu = singular_of(read_input(in_path));
      const std::vector<double> g = log_grid(grid.lo, grid.hi, grid.points);
      write_output(out_path, k_curve_csv(mu, g));
      if (!m_out_path.empty()) write_output(m_out_path, m_curve_csv(mu, g));
      return kOk;
    }

    if (*dec_cmd) {
      const Input in = read_input(in_path);
      Json j;
      if (const auto* m = std::get_if<TraceMatrix>(&in)) {
        const KWitness w = optimal_decomposition(*m, u);
        j["u"] = number(u);
        j["cut"] = number(w.cut);
        j["value"] = number(w.value);
        j["G"] = to_json(w.g);
        j["H"] = to_json(w.h);
      } else {
        const Decomposition d = optimal_decomposition(std::get<StepFunction>(in), u);
        j["u"] = number(u);
        j["level"] = number(d.level);
        j["value"] = number(d.value);
        j["g"] = to_json(d.g);
        j["h"] = to_json(d.h);
      }
      write_output(out_path, dump(j));
      return kOk;
    }

    if (*interp_cmd) {
      const PairHom t = hom_from_json(parse_json(read_file(hom_path)));
      const TraceMatrix x = read_matrix(x_path);
      const double rel = tol.value_or(1e-9);
      if (norm_keys.empty()) norm_keys = builtin_norm_keys();
      const InterpolationReport ir = interpolation_check(t, x, rel);
      bool pass = ir.pass;
      Json norms = Json::array();
      for (const std::string& key : norm_keys) {
        const ENormBoundReport r = enorm_bound_check(t, x, norm_by_key(key), rel);
        pass = pass && r.pass;
        norms.push_back({{"norm", r.norm}, {"k", r.k}, {"factor", number(r.factor)}, {"lhs", number(r.lhs)},
                         {"rhs", number(r.rhs)}, {"pass", r.pass}});
      }
      Json j;
      j["interpolation"] = to_json(ir);
      j["enorm_bounds"] = std::move(norms);
      j["pass"] = pass;
      write_output(out_path, dump(j));
      return pass ? kOk : kCheckFailed;
    }

    if (*korbit_cmd) {
      const SingularFunction mu_x = singular_of(read_input(x_path));
      const SingularFunction mu_a = singular_of(read_input(a_path));
      const double ko = korbit_norm(mu_x, mu_a);
      const std::optional<double> pc = pointwise_constant(mu_x, mu_a);
      Json j;
      j["korbit_norm"] = number(ko);
      j["pointwise_constant"] = pc ? number(*pc) : Json(nullptr);
      j["ratio"] = pc && ko > 0.0 ? number(*pc / ko) : Json(nullptr);
      write_output(out_path, dump(j));
      return kOk;
    }

    if (*cx_cmd) {
      if (weight > 0.0) spec.weight = weight;
      const Counterexample cx = counterexample(spec);
      const std::string cert = certificate_text(cx.report);
      if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
        const fs::path dir(out_dir);
        const std::vector<double> g = log_grid(grid.lo, grid.hi, grid.points);
        write_output((dir / "A.json").string(), dump(to_json(cx.a)));
        write_output((dir / "X.json").string(), dump(to_json(cx.x)));
        write_output((dir / "report.json").string(), dump(to_json(cx.report)));
        write_output((dir / "certificate.txt").string(), cert);
        write_output((dir / "kcurve_A.csv").string(), k_curve_csv(mu_of(cx.a), g));
        write_output((dir / "kcurve_X.csv").string(), k_curve_csv(mu_of(cx.x), g));
      }
      std::cout << cert;
      return cx.report.certified() ? kOk : kCheckFailed;
    }

    if (*tr_cmd) {
      const TraceMatrix a = read_matrix(a_path);
      const TraceMatrix x = read_matrix(x_path);
      const TransferPlan p = plan(a, x);
      const PairHom t = build(p, a, x);
      const TransferReport r = verify(t, a, x, p, seed, samples);
      Json j;
      j["plan"] = to_json(p);
      j["hom"] = to_json(t);
      j["report"] = to_json(r);
      write_output(out_path, dump(j));
      return r.pass() ? kOk : kCheckFailed;
    }

    if (*suite_cmd) {
      const SuiteReport r = run_suite({seed, tol});
      write_output(out_path, dump(to_json(r)));
      return r.pass() ? kOk : kCheckFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
