// Acceptance criteria 1-9, one PASS/FAIL line each. Exit status 0 iff all
// pass. argv[1] is the path of the command-line tool (criterion 9).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "kinterp/k_functional.hpp"
#include "kinterp/orbits.hpp"
#include "kinterp/random.hpp"
#include "kinterp/transfer.hpp"
#include "oracles.hpp"

using namespace kinterp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<double> random_u(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::vector<double> out(n);
  for (double& u : out) u = std::pow(10.0, e(rng));
  return out;
}

Eigen::Index draw(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

Outcome counterexample_reproduction() {
  const Counterexample cx = counterexample({1, 1, 1, 0.6, std::nullopt});
  const SingularFunction mu_a = mu_of(cx.a);
  const SingularFunction mu_x = mu_of(cx.x);
  const KCurve ka(mu_a), kx(mu_x);
  double curve_err = 0.0;
  for (double u : log_grid(1e-3, 1e3, 100)) {
    const double closed = std::min(u, 2.0);
    curve_err = std::max({curve_err, std::abs(ka(u) - closed), std::abs(kx(u) - closed),
                          std::abs(k_at(mu_a, u) - closed), std::abs(k_at(mu_x, u) - closed)});
  }
  bool gap = mu_a.left_limit(2.0) == 0.6 && mu_x.left_limit(2.0) == 1.0;
  for (double t : {1.0, 1.25, 1.5, 1.999}) gap = gap && mu_a(t) == 0.6 && mu_x(t) == 1.0;
  const OrbitCheckReport orbit = orbit_necessary_check(mu_x, mu_a, 1.0);
  const double ko = korbit_norm(mu_x, mu_a);
  const bool pass = curve_err <= 1e-12 && gap && !orbit.pass && std::abs(ko - 1.0) <= 1e-12;
  return {pass, "K-curve error " + fmt(curve_err) + ", gap " + (gap ? "0.6 < 1 on [1,2)" : "missing") +
                    ", orbit check " + (orbit.pass ? "passes" : "fails") + ", KO norm " + fmt(ko)};
}

Outcome k_direct_equality() {
  Rng rng(101);
  double worst = 0.0, worst_oracle = 0.0;
  for (int c = 0; c < 200; ++c) {
    const Eigen::Index n = draw(rng, 1, 12);
    const double w = c % 2 == 0 ? 1.0 : 0.5;
    const TraceMatrix x = random_matrix(rng, n, w, draw(rng, 1, n));
    const SingularFunction mu = mu_of(x);
    for (double u : random_u(rng, 20)) {
      const double direct = k_direct(x, u).value;
      worst = std::max(worst, rel(direct, k_at(mu, u)));
      worst_oracle = std::max(worst_oracle, rel(direct, oracle::k_by_cuts(x.entries(), w, u)));
    }
  }
  return {worst <= 1e-9 && worst_oracle <= 1e-9,
          "max relative gap " + fmt(worst) + ", against the cut-enumeration oracle " + fmt(worst_oracle)};
}

Outcome k_formula_agreement() {
  Rng rng(102);
  double worst = 0.0, worst_oracle = 0.0;
  for (int c = 0; c < 500; ++c) {
    const StepFunction f = random_step(rng);
    const SingularFunction mu = rearrange(f);
    for (double u : random_u(rng, 20)) {
      const double a = k_at(mu, u);
      worst = std::max(worst, rel(a, k_at_distribution(mu, u)));
      worst_oracle = std::max(worst_oracle, rel(a, oracle::k_by_levels(f, u)));
    }
  }
  return {worst <= 1e-12 && worst_oracle <= 1e-12,
          "max relative gap " + fmt(worst) + ", against the level-cut oracle " + fmt(worst_oracle)};
}

Outcome m_k_sandwich() {
  Rng rng(103);
  bool ok = true;
  double worst_ratio = 0.0;
  for (int c = 0; c < 500; ++c) {
    const SingularFunction mu = rearrange(random_step(rng));
    for (double t : random_u(rng, 20)) {
      const double m = m_at(mu, t);
      const double k = k_at(mu, t);
      ok = ok && m <= k * (1 + 1e-12) && k <= 2 * m * (1 + 1e-12);
      if (m > 0) worst_ratio = std::max(worst_ratio, k / m);
    }
  }
  const SingularFunction tight = SingularFunction::from_widths(std::vector<double>{1, 1}, std::vector<double>{2, 1});
  const bool exact = k_at(tight, 1.0) == 2.0 * m_at(tight, 1.0);
  return {ok && exact, "max K/M " + fmt(worst_ratio) + ", witness K_1 = " + fmt(k_at(tight, 1.0)) +
                           ", M_1 = " + fmt(m_at(tight, 1.0))};
}

Outcome orbit_round_trip() {
  Rng rng(104);
  std::uniform_real_distribution<double> constant(1.0, 5.0);
  bool ok = true;
  double worst_ko = 0.0, worst_three = 0.0;
  for (int c = 0; c < 100; ++c) {
    const SingularFunction mu_a = random_singular(rng);
    const double planted = constant(rng);
    const SingularFunction mu_x = planted_singular(rng, mu_a, planted);
    const double ko = korbit_norm(mu_x, mu_a);
    const std::optional<double> pc = pointwise_constant(mu_x, mu_a);
    // The pointwise constant ranges over C >= 1, hence max{1, 3C'}.
    const double bound = std::max(1.0, 3.0 * ko);
    ok = ok && ko <= planted * (1 + 1e-12) && pc && *pc <= bound * (1 + 1e-8);
    worst_ko = std::max(worst_ko, ko / planted);
    if (pc) worst_three = std::max(worst_three, *pc / bound);
  }
  return {ok, "max KO/C " + fmt(worst_ko) + ", max pointwise/max{1, 3 KO} " + fmt(worst_three)};
}

Outcome interpolation_inequality() {
  Rng rng(105);
  bool ok = true;
  std::size_t points = 0;
  double worst_enorm = 0.0;
  for (int c = 0; c < 100; ++c) {
    const Eigen::Index n = draw(rng, 1, 8);
    const double w = c % 3 == 0 ? 0.5 : 1.0;
    const PairHom t = random_hom(rng, n, w, c % 2 == 1);
    const TraceMatrix x = random_matrix(rng, n, w, draw(rng, 1, n));
    const InterpolationReport r = interpolation_check(t, x);
    ok = ok && r.pass;
    points += r.points_checked;
    for (const std::string& key : builtin_norm_keys()) {
      const ENormBoundReport e = enorm_bound_check(t, x, norm_by_key(key));
      ok = ok && e.pass;
      if (e.rhs > 0) worst_enorm = std::max(worst_enorm, e.lhs / e.rhs);
    }
  }
  return {ok, std::to_string(points) + " grid points, max E-norm lhs/rhs " + fmt(worst_enorm)};
}

Outcome transfer_pipeline() {
  Rng rng(106);
  std::uniform_int_distribution<std::int64_t> constant(1, 3);
  int passed = 0;
  double worst_recon = 0.0, worst_factor = 0.0, worst_bound = 0.0;
  for (int c = 0; c < 50; ++c) {
    const PlantedPair pair = planted_pair(rng, draw(rng, 1, 8), c % 2 == 0 ? 1.0 : 0.5, constant(rng));
    const TransferPlan p = plan(pair.a, pair.x);
    const PairHom t = build(p, pair.a, pair.x);
    const TransferReport r = verify(t, pair.a, pair.x, p, static_cast<std::uint64_t>(c));
    const double two_c = 2.0 * static_cast<double>(p.c);
    const double factor = std::max({r.factor_a_delta, r.factor_b2, r.factor_b_delta, r.factor_polar_x});
    const bool ok = r.pass() && r.reconstruction_error <= 1e-9 && r.bounds.m0 <= two_c &&
                    r.bounds.m1 <= two_c * (1 + 1e-9) && factor <= 1e-9;
    passed += ok ? 1 : 0;
    worst_recon = std::max(worst_recon, r.reconstruction_error);
    worst_factor = std::max(worst_factor, factor);
    worst_bound = std::max(worst_bound, std::max(r.bounds.m0, r.bounds.m1) / two_c);
  }
  return {passed == 50, std::to_string(passed) + "/50 pairs, max ||TA - X||/||X|| " + fmt(worst_recon) +
                            ", max factorization residual " + fmt(worst_factor) + ", max bound/2C " +
                            fmt(worst_bound)};
}

Outcome f_norm_triangle() {
  Rng rng(107);
  bool ok = true;
  double worst = 0.0;
  for (int c = 0; c < 500; ++c) {
    const Eigen::Index n = draw(rng, 1, 10);
    const double w = c % 2 == 0 ? 1.0 : 0.25;
    const TraceMatrix x = random_matrix(rng, n, w, draw(rng, 1, n));
    const TraceMatrix y = random_matrix(rng, n, w, draw(rng, 1, n));
    const double lhs = k_at(mu_of(x + y), 1.0);
    const double rhs = k_at(mu_of(x), 1.0) + k_at(mu_of(y), 1.0);
    ok = ok && lhs <= rhs * (1 + 1e-12);
    worst = std::max(worst, lhs / rhs);
  }
  return {ok, "max K_1(X+Y) / (K_1(X) + K_1(Y)) " + fmt(worst)};
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("kinterp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "run1.json";
  const fs::path b = dir / "run2.json";
  auto run = [&](const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" verify-suite --seed 42 --out \"" + out.string() + "\"";
    return std::system(cmd.c_str());
  };
  const int rc1 = run(a);
  const int rc2 = run(b);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ra = slurp(a), rb = slurp(b);
  fs::remove_all(dir);
  const bool same = !ra.empty() && ra == rb;
  return {same && rc1 == 0 && rc2 == 0, std::string(same ? "byte-identical" : "reports differ") + " (" +
                                            std::to_string(ra.size()) + " bytes), exit codes " +
                                            std::to_string(rc1) + ", " + std::to_string(rc2)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to kinterp tool>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "counterexample reproduction", 1.0, counterexample_reproduction},
      {2, "direct K equals K of singular values", 10.0, k_direct_equality},
      {3, "K via mu equals K via distribution", 0.0, k_formula_agreement},
      {4, "M/K sandwich and factor-2 witness", 0.0, m_k_sandwich},
      {5, "K-orbit / pointwise constant round trip", 0.0, orbit_round_trip},
      {6, "interpolation inequality and E-norm bounds", 0.0, interpolation_inequality},
      {7, "transfer pipeline", 30.0, transfer_pipeline},
      {8, "K_1 triangle inequality", 0.0, f_norm_triangle},
      {9, "verify-suite determinism", 0.0, [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt(secs) + " s";
    if (c.limit_s > 0) {
      timing += " (limit " + fmt(c.limit_s) + " s)";
      pass = pass && secs < c.limit_s;
    }
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << ": " << o.detail << "; "
              << timing << "\n";
    failed += pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all 9 acceptance criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
