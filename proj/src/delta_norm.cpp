#include "kinterp/delta_norm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "kinterp/error.hpp"
#include "kinterp/k_functional.hpp"

namespace kinterp {
namespace {

constexpr double kSlack = 1e-12;

double piece_width(const SingularFunction& mu, std::size_t i) {
  return mu.breakpoints()[i] - mu.piece_start(i);
}

void require_finite_support(const SingularFunction& mu, const std::string& name) {
  if (mu.tail() != 0.0) throw DomainError(name + " is undefined for functions with a nonzero tail");
}

// x followed by y on disjoint supports; x must have finite support.
StepFunction concatenate(const SingularFunction& x, const SingularFunction& y) {
  const double offset = x.support_measure();
  std::vector<double> bps(x.breakpoints());
  std::vector<double> vals(x.values());
  for (std::size_t i = 0; i < y.pieces(); ++i) {
    bps.push_back(offset + y.breakpoints()[i]);
    vals.push_back(y.values()[i]);
  }
  return StepFunction(std::move(bps), std::move(vals), y.tail());
}

std::string describe_pair(std::size_t i, std::size_t j, const char* how) {
  return "samples " + std::to_string(i) + " + " + std::to_string(j) + " (" + how + ")";
}

}  // namespace

DeltaNorm custom_norm(std::string name, double c_e, std::function<double(const SingularFunction&)> eval,
                      NormKind kind) {
  if (!(c_e > 0.0) || !std::isfinite(c_e)) throw DomainError("declared constant C_E must be positive");
  if (!eval) throw DomainError("norm evaluation map is empty");
  return DeltaNorm{std::move(name), c_e, kind, std::move(eval)};
}

DeltaNorm lp_norm(double p) {
  if (!(p > 0.0)) throw DomainError("L_p needs p > 0");
  if (std::isinf(p)) return linf_norm();
  std::string name = "Lp:" + format_number(p);
  return custom_norm(name, 1.0, [p, name](const SingularFunction& mu) {
    if (mu.tail() != 0.0) throw DomainError(name + " is infinite for a nonzero tail");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.pieces(); ++i) acc += piece_width(mu, i) * std::pow(mu.values()[i], p);
    return p >= 1.0 ? std::pow(acc, 1.0 / p) : acc;
  });
}

DeltaNorm linf_norm() {
  return custom_norm("Linf", 1.0, [](const SingularFunction& mu) { return mu.at_zero(); });
}

DeltaNorm l0_norm() {
  return custom_norm(
      "L0", 1.0,
      [](const SingularFunction& mu) {
        require_finite_support(mu, "L0");
        return mu.support_measure();
      },
      NormKind::group);
}

DeltaNorm f_norm() {
  return custom_norm(
      "F", 1.0,
      [](const SingularFunction& mu) {
        require_finite_support(mu, "F");
        return std::max(mu.support_measure(), mu.at_zero());
      },
      NormKind::group);
}

DeltaNorm s_norm_delta() {
  return custom_norm("S", 1.0, [](const SingularFunction& mu) { return k_at(mu, 1.0); });
}

DeltaNorm norm_by_key(std::string_view key) {
  if (key == "Linf" || key == "Lp:inf") return linf_norm();
  if (key == "L0") return l0_norm();
  if (key == "F") return f_norm();
  if (key == "S") return s_norm_delta();
  if (key.starts_with("Lp:")) {
    const std::string_view num = key.substr(3);
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      throw DomainError("bad exponent in norm key '" + std::string(key) + "'");
    }
    return lp_norm(p);
  }
  throw DomainError("unknown norm key '" + std::string(key) + "'");
}

std::vector<std::string> builtin_norm_keys() {
  return {"Lp:0.5", "Lp:1", "Lp:2", "Linf", "L0", "F", "S"};
}

double e_eval(const DeltaNorm& e, const SingularFunction& mu) { return e.eval(mu); }
double e_eval(const DeltaNorm& e, const StepFunction& f) { return e.eval(rearrange(f)); }
double e_eval(const DeltaNorm& e, const TraceMatrix& x) { return e.eval(mu_of(x)); }

bool AxiomReport::pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
}

AxiomReport delta_axioms_check(const DeltaNorm& e, std::span<const SingularFunction> samples) {
  if (samples.size() < 2) throw DomainError("axiom check needs at least two samples");
  AxiomReport report{e.name, e.c_e, 0, {}};

  std::vector<const SingularFunction*> in_domain;
  std::vector<double> norm_of;
  for (const SingularFunction& s : samples) {
    try {
      norm_of.push_back(e.eval(s));
      in_domain.push_back(&s);
    } catch (const DomainError&) {
      ++report.skipped;
    }
  }

  AxiomResult definite{"definiteness", true, true, 0.0, ""};
  const double at_zero = e.eval(SingularFunction{});
  if (at_zero != 0.0) {
    definite.pass = false;
    definite.worst = at_zero;
    definite.witness = "norm of zero function";
  }
  for (std::size_t i = 0; i < in_domain.size(); ++i) {
    const bool zero = in_domain[i]->is_zero();
    if (norm_of[i] < 0.0 || (!zero && norm_of[i] == 0.0) || !std::isfinite(norm_of[i])) {
      definite.pass = false;
      definite.worst = norm_of[i];
      definite.witness = "sample " + std::to_string(i);
    }
  }

  AxiomResult monotone_scaling{"|a| <= 1 implies ||a x|| <= ||x||", true, true, 0.0, ""};
  static constexpr double kAlphas[] = {1.0, 0.9, 0.75, 0.5, 0.3, 0.1, 0.01, 1e-4};
  for (std::size_t i = 0; i < in_domain.size(); ++i) {
    if (norm_of[i] == 0.0) continue;
    for (double a : kAlphas) {
      const double ratio = e.eval(in_domain[i]->scaled(a)) / norm_of[i];
      if (ratio > monotone_scaling.worst) {
        monotone_scaling.worst = ratio;
        monotone_scaling.witness = "sample " + std::to_string(i) + ", a = " + format_number(a);
      }
    }
  }
  monotone_scaling.pass = monotone_scaling.worst <= 1.0 + kSlack;

  AxiomResult continuity{"||2^-j x|| -> 0", e.kind == NormKind::delta, true, 0.0, ""};
  if (continuity.applicable) {
    for (std::size_t i = 0; i < in_domain.size(); ++i) {
      if (norm_of[i] == 0.0) continue;
      double smallest = norm_of[i];
      for (int j = 1; j <= 40; ++j) {
        smallest = std::min(smallest, e.eval(in_domain[i]->scaled(std::ldexp(1.0, -j))));
      }
      const double ratio = smallest / norm_of[i];
      if (ratio > continuity.worst) {
        continuity.worst = ratio;
        continuity.witness = "sample " + std::to_string(i);
      }
    }
    continuity.pass = continuity.worst < 1e-6;
  } else {
    continuity.witness = "group-norm";
  }

  AxiomResult triangle{"||x + y|| <= C_E (||x|| + ||y||)", true, true, 0.0, ""};
  auto record = [&](double lhs, double a, double b, std::size_t i, std::size_t j, const char* how) {
    const double denom = e.c_e * (a + b);
    const double ratio = denom > 0.0 ? lhs / denom : (lhs > 0.0 ? kInfinity : 0.0);
    if (ratio > triangle.worst) {
      triangle.worst = ratio;
      triangle.witness = describe_pair(i, j, how);
    }
  };
  for (std::size_t i = 0; i < in_domain.size(); ++i) {
    for (std::size_t j = i; j < in_domain.size(); ++j) {
      const SingularFunction& x = *in_domain[i];
      const SingularFunction& y = *in_domain[j];
      try {
        record(e.eval(add_pointwise(x, y)), norm_of[i], norm_of[j], i, j, "aligned");
        if (x.tail() == 0.0) {
          record(e.eval(rearrange(concatenate(x, y))), norm_of[i], norm_of[j], i, j, "disjoint");
        }
      } catch (const DomainError&) {
        // sum left the norm's domain; not a triangle witness
      }
    }
  }
  triangle.pass = triangle.worst <= 1.0 + kSlack;

  report.axioms = {definite, monotone_scaling, continuity, triangle};
  return report;
}

EmbeddingReport embedding_check(const DeltaNorm& e, const SingularFunction& mu) {
  if (mu.tail() != 0.0) throw DomainError("embedding check needs a finite-support input");
  EmbeddingReport out;
  out.epsilon = std::max(mu.support_measure(), mu.at_zero());
  if (out.epsilon > 1.0) throw DomainError("embedding check needs ||X||_F <= 1");
  out.value = e.eval(mu);
  out.tight_bound = e.eval(SingularFunction::indicator(out.epsilon, out.epsilon));
  out.bound = e.eval(SingularFunction::indicator(1.0, out.epsilon));
  const double slack = 1.0 + kSlack;
  out.pass = out.value <= out.tight_bound * slack && out.tight_bound <= out.bound * slack;
  return out;
}

EmbeddingReport embedding_check(const DeltaNorm& e, const TraceMatrix& x) {
  return embedding_check(e, mu_of(x));
}

DilationReport dilation_check(const DeltaNorm& e, const SingularFunction& mu, unsigned k) {
  DilationReport out;
  out.k = k;
  out.lhs = e.eval(dilate(mu, std::ldexp(1.0, static_cast<int>(k))));
  out.rhs = std::pow(2.0 * e.c_e, static_cast<double>(k)) * e.eval(mu);
  out.pass = out.lhs <= out.rhs * (1.0 + kSlack);
  return out;
}

}  // namespace kinterp
