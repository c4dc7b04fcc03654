#pragma once

// Symmetric Delta-norms evaluated through the rearrangement:
// ||X||_E = ||mu(X)||_E.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kinterp/matrix_model.hpp"
#include "kinterp/step_function.hpp"

namespace kinterp {

// Group-norms (L0, F) are not homogeneous: ||a x|| does not tend to 0 as
// a -> 0, so the scaling-continuity axiom does not apply to them.
enum class NormKind { delta, group };

struct DeltaNorm {
  std::string name;
  double c_e = 1.0;  // declared quasi-triangle constant, never inferred
  NormKind kind = NormKind::delta;
  std::function<double(const SingularFunction&)> eval;
};

// User-supplied norm; `eval` must be pure.
DeltaNorm custom_norm(std::string name, double c_e, std::function<double(const SingularFunction&)> eval,
                      NormKind kind = NormKind::delta);

// (int mu^p)^{1/p} for p >= 1, int mu^p for 0 < p < 1.
DeltaNorm lp_norm(double p);
DeltaNorm linf_norm();
DeltaNorm l0_norm();
DeltaNorm f_norm();  // max{||.||_0, ||.||_inf}, finite-support inputs only
DeltaNorm s_norm_delta();  // K_1

// Registry keys: "Lp:<p>", "Linf", "L0", "F", "S".
DeltaNorm norm_by_key(std::string_view key);
std::vector<std::string> builtin_norm_keys();

double e_eval(const DeltaNorm& e, const SingularFunction& mu);
double e_eval(const DeltaNorm& e, const StepFunction& f);
double e_eval(const DeltaNorm& e, const TraceMatrix& x);

struct AxiomResult {
  std::string axiom;
  bool applicable = true;
  bool pass = true;
  double worst = 0.0;  // worst observed ratio against the axiom's bound
  std::string witness;
};

struct AxiomReport {
  std::string norm;
  double c_e = 1.0;
  std::size_t skipped = 0;  // samples outside the norm's domain
  std::vector<AxiomResult> axioms;
  bool pass() const;
};

// Checks definiteness, ||a x|| <= ||x|| for |a| <= 1, ||2^-j x|| -> 0 and the
// quasi-triangle inequality with the declared constant. Sums are taken both
// aligned (pointwise) and with disjoint supports.
AxiomReport delta_axioms_check(const DeltaNorm& e, std::span<const SingularFunction> samples);

struct EmbeddingReport {
  double epsilon = 0.0;      // ||X||_F
  double value = 0.0;        // ||X||_E
  double tight_bound = 0.0;  // ||eps chi_(0,eps)||_E
  double bound = 0.0;        // ||eps chi_(0,1)||_E
  bool pass = false;
};

// ||X||_E <= ||eps chi_(0,eps)||_E <= ||eps chi_(0,1)||_E for ||X||_F = eps <= 1.
EmbeddingReport embedding_check(const DeltaNorm& e, const TraceMatrix& x);
EmbeddingReport embedding_check(const DeltaNorm& e, const SingularFunction& mu);

struct DilationReport {
  unsigned k = 0;
  double lhs = 0.0;  // ||sigma_{2^k} mu||_E
  double rhs = 0.0;  // (2 C_E)^k ||mu||_E
  bool pass = false;
};

DilationReport dilation_check(const DeltaNorm& e, const SingularFunction& mu, unsigned k);

}  // namespace kinterp
