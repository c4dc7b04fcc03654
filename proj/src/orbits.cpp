#include "kinterp/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kinterp/error.hpp"
#include "kinterp/k_functional.hpp"

namespace kinterp {
namespace {

constexpr double kBisectionUpper = 1e12;
constexpr int kBisectionCap = 200;
constexpr double kBisectionTolerance = 1e-9;
constexpr Eigen::Index kMaxCounterexampleDim = 512;

double ratio_at(const KCurve& num, const KCurve& den, double u) { return num(u) / den(u); }

// (a + b u) / (c + d u) as u -> inf.
double ratio_at_infinity(const KCurve::Piece& num, const KCurve::Piece& den) {
  if (den.slope > 0.0) return num.slope / den.slope;
  if (num.slope > 0.0) return kInfinity;
  return num.intercept / den.intercept;
}

Eigen::Index as_rank(double tau, double w) {
  const double r = tau / w;
  const double nearest = std::round(r);
  if (nearest < 1.0 || std::abs(r - nearest) > 1e-9 * std::max(1.0, r)) {
    throw DomainError("trace value " + format_number(tau) + " is not a positive multiple of weight " +
                      format_number(w));
  }
  return static_cast<Eigen::Index>(nearest);
}

double common_weight(double tau1, double tau2) {
  for (Eigen::Index r2 = 1; r2 < kMaxCounterexampleDim; ++r2) {
    const double r1 = tau1 / tau2 * static_cast<double>(r2);
    const double nearest = std::round(r1);
    if (nearest >= 1.0 && std::abs(r1 - nearest) <= 1e-9 * r1 &&
        static_cast<Eigen::Index>(nearest) + r2 <= kMaxCounterexampleDim) {
      return tau2 / static_cast<double>(r2);
    }
  }
  throw DomainError("tau1 and tau2 are not commensurable within dimension " +
                    std::to_string(kMaxCounterexampleDim) + "; pass an explicit weight");
}

// Twelve significant digits: the certificate is for reading, not round trips.
std::string readable(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

OrbitCheckReport orbit_necessary_check(const SingularFunction& mu_y, const SingularFunction& mu_x, double c,
                                       double rel_tol) {
  if (!(c > 0.0)) throw DomainError("orbit radius must be positive");
  OrbitCheckReport report;
  report.c = c;
  std::vector<double> cuts(mu_y.breakpoints());
  for (double b : mu_x.breakpoints()) cuts.push_back(c * b);
  const std::vector<Probe> probes = partition_probes(std::move(cuts));

  report.pass = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double t = probes[i].point;
    const double lhs = c * mu_x(t / c);
    const double rhs = mu_y(t);
    // Relative to the values compared here, so a large c cannot mask a tail.
    const double slack = rel_tol * std::max(lhs, rhs);
    const double margin = lhs - rhs;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_t = probes[i].start;
    }
    if (margin < -slack) {
      report.pass = false;
      const double end = i + 1 < probes.size() ? probes[i + 1].start : kInfinity;
      if (!report.violations.empty() && report.violations.back().second == probes[i].start) {
        report.violations.back().second = end;
      } else {
        report.violations.emplace_back(probes[i].start, end);
      }
    }
  }
  return report;
}

OrbitCheckReport orbit_necessary_check(const TraceMatrix& y, const TraceMatrix& x, double c, double rel_tol) {
  return orbit_necessary_check(mu_of(y), mu_of(x), c, rel_tol);
}

std::optional<double> pointwise_constant(const SingularFunction& mu_x, const SingularFunction& mu_a) {
  // C mu(t / C; A) is nondecreasing in C because mu is nonincreasing, so the
  // admissible set of C is an up-ray and bisection finds its left end.
  auto holds = [&](double c) { return orbit_necessary_check(mu_x, mu_a, c).pass; };
  if (holds(1.0)) return 1.0;
  if (!holds(kBisectionUpper)) return std::nullopt;
  double lo = 1.0;
  double hi = kBisectionUpper;
  for (int it = 0; it < kBisectionCap && hi - lo > kBisectionTolerance * hi; ++it) {
    const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (holds(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::optional<double> pointwise_constant(const TraceMatrix& x, const TraceMatrix& a) {
  return pointwise_constant(mu_of(x), mu_of(a));
}

double korbit_norm(const SingularFunction& mu_x, const SingularFunction& mu_a) {
  if (mu_a.is_zero()) throw DomainError("K-orbit norm is undefined for A = 0");
  if (mu_x.is_zero()) return 0.0;
  const KCurve kx(mu_x);
  const KCurve ka(mu_a);
  // On every piece shared by both envelopes the ratio is a Moebius function
  // of u, hence monotone; the supremum sits at a vertex or at a limit.
  double sup = mu_x.at_zero() / mu_a.at_zero();  // u -> 0+
  sup = std::max(sup, ratio_at_infinity(kx.pieces().back(), ka.pieces().back()));
  for (double u : kx.boundaries()) sup = std::max(sup, ratio_at(kx, ka, u));
  for (double u : ka.boundaries()) sup = std::max(sup, ratio_at(kx, ka, u));
  return sup;
}

double korbit_norm(const TraceMatrix& x, const TraceMatrix& a) { return korbit_norm(mu_of(x), mu_of(a)); }

Counterexample counterexample(const CounterexampleSpec& spec) {
  const double tau1 = spec.tau1, tau2 = spec.tau2, k1 = spec.k1, k2 = spec.k2;
  if (!(tau1 > 0.0) || !(tau2 > 0.0) || !(k1 > 0.0) || !(k2 > 0.0)) {
    throw DomainError("tau1, tau2, k1, k2 must be positive");
  }
  if (!(k1 > k2) || !(k2 > tau2 * k1 / (tau1 + tau2))) {
    throw DomainError("constraint k1 > k2 > tau2 k1 / (tau1 + tau2) violated");
  }
  const double w = spec.weight ? *spec.weight : common_weight(tau1, tau2);
  if (!(w > 0.0)) throw DomainError("trace weight must be positive");
  const Eigen::Index r1 = as_rank(tau1, w);
  const Eigen::Index r2 = as_rank(tau2, w);

  std::vector<double> diag_a(static_cast<std::size_t>(r1), k1);
  diag_a.resize(static_cast<std::size_t>(r1 + r2), k2);
  const std::vector<double> diag_x(static_cast<std::size_t>(r1 + r2), k1);

  Counterexample out{TraceMatrix::diagonal(diag_a, w), TraceMatrix::diagonal(diag_x, w), {}};
  CounterexampleReport& rep = out.report;
  rep.spec = spec;
  rep.weight = w;
  rep.rank1 = r1;
  rep.rank2 = r2;

  const SingularFunction mu_a = mu_of(out.a);
  const SingularFunction mu_x = mu_of(out.x);
  rep.korbit_x_over_a = korbit_norm(mu_x, mu_a);
  rep.korbit_a_over_x = korbit_norm(mu_a, mu_x);

  const KCurve ka(mu_a);
  const KCurve kx(mu_x);
  for (double u : log_grid(1e-3, 1e3, 100)) {
    const double closed_x = std::min(u * k1, tau1 + tau2);
    const double closed_a = std::min({u * k1, tau1 + u * k2, tau1 + tau2});
    rep.closed_form_error = std::max({rep.closed_form_error, std::abs(kx(u) - closed_x),
                                      std::abs(ka(u) - closed_a), std::abs(ka(u) - kx(u))});
  }
  rep.curves_identical = std::abs(rep.korbit_x_over_a - 1.0) <= 1e-12 &&
                         std::abs(rep.korbit_a_over_x - 1.0) <= 1e-12 && rep.closed_form_error <= 1e-12;

  const double mid_gap = tau1 + 0.5 * tau2;
  rep.mu_a_on_gap = mu_a(mid_gap);
  rep.mu_x_on_gap = mu_x(mid_gap);
  rep.strict_gap = mu_a(tau1) == rep.mu_a_on_gap && mu_x(tau1) == rep.mu_x_on_gap &&
                   mu_a.left_limit(tau1 + tau2) == rep.mu_a_on_gap &&
                   mu_x.left_limit(tau1 + tau2) == rep.mu_x_on_gap && rep.mu_a_on_gap < rep.mu_x_on_gap;

  rep.orbit = orbit_necessary_check(mu_x, mu_a, 1.0);
  return out;
}

std::string certificate_text(const CounterexampleReport& r) {
  std::ostringstream os;
  os << "K-orbit versus orbit unit balls in (L0, Linf)\n"
     << "tau1 = " << readable(r.spec.tau1) << ", tau2 = " << readable(r.spec.tau2)
     << ", k1 = " << readable(r.spec.k1) << ", k2 = " << readable(r.spec.k2) << "\n"
     << "realization: n = " << r.rank1 + r.rank2 << ", w = " << readable(r.weight)
     << ", rank P1 = " << r.rank1 << ", rank P2 = " << r.rank2 << "\n"
     << "A = k1 P1 + k2 P2, X = k1 (P1 + P2)\n"
     << "[" << (r.curves_identical ? "ok" : "FAIL") << "] K_u(A) = K_u(X) = min{u k1, tau1 + tau2}"
     << "; ||X||_KO = " << readable(r.korbit_x_over_a) << ", ||A||_KO(X) = "
     << readable(r.korbit_a_over_x) << ", closed-form deviation "
     << readable(r.closed_form_error) << "\n"
     << "[" << (r.strict_gap ? "ok" : "FAIL") << "] mu(t;A) = " << readable(r.mu_a_on_gap)
     << " < mu(t;X) = " << readable(r.mu_x_on_gap) << " on [" << readable(r.spec.tau1) << ", "
     << readable(r.spec.tau1 + r.spec.tau2) << ")\n"
     << "[" << (!r.orbit.pass ? "ok" : "FAIL") << "] mu(t;X) <= mu(t;A) fails on";
  for (const auto& [a, b] : r.orbit.violations) os << " [" << readable(a) << ", " << readable(b) << ")";
  os << "\n"
     << (r.certified() ? "certified: X is in the K-orbit unit ball of A but not in its orbit unit ball\n"
                       : "NOT certified\n");
  return os.str();
}

}  // namespace kinterp
