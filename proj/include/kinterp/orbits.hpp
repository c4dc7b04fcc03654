#pragma once

// Orbits and K-orbits in the pair (L0, Linf): the necessary condition
// mu(t; Y) <= c mu(t / c; X), the constant of that condition, the K-orbit
// norm sup_u K_u(X) / K_u(A), and the pair showing that the two unit balls
// differ.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinterp/matrix_model.hpp"
#include "kinterp/step_function.hpp"

namespace kinterp {

struct OrbitCheckReport {
  double c = 1.0;
  bool pass = false;
  double worst_margin = kInfinity;  // min_t [c mu(t/c; X) - mu(t; Y)]
  double worst_t = 0.0;
  std::vector<std::pair<double, double>> violations;  // maximal [a, b) where the bound fails
};

// mu(t; Y) <= c mu(t / c; X) for every t > 0.
OrbitCheckReport orbit_necessary_check(const SingularFunction& mu_y, const SingularFunction& mu_x, double c,
                                       double rel_tol = 1e-12);
OrbitCheckReport orbit_necessary_check(const TraceMatrix& y, const TraceMatrix& x, double c,
                                       double rel_tol = 1e-12);

// Minimal C >= 1 with mu(t; X) <= C mu(t / C; A) for all t, to relative 1e-9;
// empty when no C <= 1e12 works.
std::optional<double> pointwise_constant(const SingularFunction& mu_x, const SingularFunction& mu_a);
std::optional<double> pointwise_constant(const TraceMatrix& x, const TraceMatrix& a);

// sup_{u>0} K_u(mu_x) / K_u(mu_a), exact. Throws DomainError when mu_a == 0.
double korbit_norm(const SingularFunction& mu_x, const SingularFunction& mu_a);
double korbit_norm(const TraceMatrix& x, const TraceMatrix& a);

struct CounterexampleSpec {
  double tau1 = 1.0;
  double tau2 = 1.0;
  double k1 = 1.0;
  double k2 = 0.6;
  std::optional<double> weight;  // trace weight; derived from tau1 : tau2 when absent
};

struct CounterexampleReport {
  CounterexampleSpec spec;
  double weight = 1.0;
  Eigen::Index rank1 = 0;  // tau(P1) / w
  Eigen::Index rank2 = 0;  // tau(P2) / w
  double korbit_x_over_a = 0.0;
  double korbit_a_over_x = 0.0;
  double closed_form_error = 0.0;  // max deviation from the closed-form K-curves on the grid
  bool curves_identical = false;
  double mu_a_on_gap = 0.0;  // mu(t; A) on [tau1, tau1 + tau2)
  double mu_x_on_gap = 0.0;  // mu(t; X) on the same interval
  bool strict_gap = false;
  OrbitCheckReport orbit;  // orbit_necessary_check(X, A, 1), expected to fail
  bool certified() const { return curves_identical && strict_gap && !orbit.pass; }
};

struct Counterexample {
  TraceMatrix a;  // k1 P1 + k2 P2
  TraceMatrix x;  // k1 (P1 + P2)
  CounterexampleReport report;
};

// Requires k1 > k2 > tau2 k1 / (tau1 + tau2) and commensurable tau1, tau2.
Counterexample counterexample(const CounterexampleSpec& spec);

std::string certificate_text(const CounterexampleReport& report);

}  // namespace kinterp
