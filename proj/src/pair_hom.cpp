#include "kinterp/pair_hom.hpp"

#include <algorithm>
#include <cmath>

#include "kinterp/error.hpp"

namespace kinterp {
namespace {

constexpr double kOrthogonalityTolerance = 1e-9;

}  // namespace

PairHom::PairHom(std::vector<HomTerm> terms, bool orthogonal)
    : terms_(std::move(terms)), orthogonal_(orthogonal) {
  if (terms_.empty()) throw DomainError("a pair homomorphism needs at least one term");
  const TraceMatrix& ref = terms_.front().left;
  for (const HomTerm& term : terms_) {
    require_composable(ref, term.left);
    require_composable(ref, term.right);
  }
}

PairHom PairHom::identity(Eigen::Index n, double weight) {
  return PairHom({HomTerm{TraceMatrix::identity(n, weight), TraceMatrix::identity(n, weight)}});
}

TraceMatrix apply(const PairHom& t, const TraceMatrix& z) {
  if (t.terms().empty()) throw DomainError("empty homomorphism");
  require_composable(t.terms().front().left, z);
  Matrix out = Matrix::Zero(z.dim(), z.dim());
  for (const HomTerm& term : t.terms()) out.noalias() += term.left.entries() * z.entries() * term.right.entries();
  return TraceMatrix(std::move(out), z.weight());
}

CertifiedBounds certified_bounds(const PairHom& t) {
  CertifiedBounds out;
  out.m0 = static_cast<double>(t.terms().size());
  if (!t.orthogonal()) {
    for (const HomTerm& term : t.terms()) {
      out.m1 += operator_norm(term.left.entries()) * operator_norm(term.right.entries());
    }
    return out;
  }

  // sum_i A_i Z B_i = [A_1 .. A_k] diag(Z, .., Z) [B_1; ..; B_k], and the
  // column [B_1; ..; B_k] has norm max ||B_i|| when B_i B_j^* = 0 for i != j.
  double scale = 0.0;
  for (const HomTerm& term : t.terms()) scale = std::max(scale, operator_norm(term.right.entries()));
  const auto& terms = t.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const double overlap = operator_norm(terms[i].right.entries() * terms[j].right.entries().adjoint());
      if (overlap > kOrthogonalityTolerance * std::max(1.0, scale * scale)) {
        throw DomainError("orthogonality tag fails for terms " + std::to_string(i) + " and " +
                          std::to_string(j));
      }
    }
  }
  Matrix gram = Matrix::Zero(t.dim(), t.dim());
  for (const HomTerm& term : terms) gram.noalias() += term.left.entries() * term.left.entries().adjoint();
  out.m1 = std::sqrt(operator_norm(gram)) * scale;
  return out;
}

InterpolationReport interpolation_check(const PairHom& t, const TraceMatrix& x, double rel_tol) {
  InterpolationReport report;
  report.bounds = certified_bounds(t);
  const double m0 = report.bounds.m0;
  const double m1 = report.bounds.m1;
  const SingularFunction mu_x = mu_of(x);
  const SingularFunction mu_tx = mu_of(apply(t, x));

  std::vector<double> cuts(mu_x.breakpoints());
  for (double b : mu_tx.breakpoints()) cuts.push_back(b / m0);

  const double slack = rel_tol * std::max(m1 * mu_x.at_zero(), mu_tx.at_zero());
  report.pass = true;
  for (const Probe& p : partition_probes(std::move(cuts))) {
    const double margin = m1 * mu_x(p.point) - mu_tx(m0 * p.point);
    ++report.points_checked;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_t = p.start;
    }
    if (margin < -slack) report.pass = false;
  }
  return report;
}

ENormBoundReport enorm_bound_check(const PairHom& t, const TraceMatrix& x, const DeltaNorm& e,
                                   double rel_tol) {
  const CertifiedBounds b = certified_bounds(t);
  ENormBoundReport out;
  out.norm = e.name;
  while (std::ldexp(1.0, static_cast<int>(out.k)) < b.m0) ++out.k;
  double sum = 0.0;
  const auto terms = static_cast<int>(std::floor(b.m1)) + 1;
  for (int i = 1; i <= terms; ++i) sum += std::pow(e.c_e, i);
  out.factor = std::pow(2.0 * e.c_e, static_cast<double>(out.k)) * sum;
  out.lhs = e_eval(e, apply(t, x));
  out.rhs = out.factor * e_eval(e, x);
  out.pass = out.lhs <= out.rhs * (1.0 + rel_tol);
  return out;
}

}  // namespace kinterp
