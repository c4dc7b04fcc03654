#pragma once

// Homomorphisms bounded on the pair (L0, Linf) in the matrix model, kept in
// structured form Z -> sum_i A_i Z B_i so that their bounds are certified by
// construction.

#include <string>
#include <vector>

#include "kinterp/delta_norm.hpp"
#include "kinterp/matrix_model.hpp"

namespace kinterp {

struct HomTerm {
  TraceMatrix left;   // A_i
  TraceMatrix right;  // B_i
};

class PairHom {
 public:
  PairHom() = default;
  // `orthogonal` asserts that the right factors have pairwise orthogonal
  // initial projections (B_i B_j^* = 0 for i != j); it is verified when the
  // bounds are certified.
  explicit PairHom(std::vector<HomTerm> terms, bool orthogonal = false);

  static PairHom identity(Eigen::Index n, double weight = 1.0);

  const std::vector<HomTerm>& terms() const { return terms_; }
  bool orthogonal() const { return orthogonal_; }
  Eigen::Index dim() const { return terms_.empty() ? 0 : terms_.front().left.dim(); }
  double weight() const { return terms_.empty() ? 1.0 : terms_.front().left.weight(); }

 private:
  std::vector<HomTerm> terms_;
  bool orthogonal_ = false;
};

TraceMatrix apply(const PairHom& t, const TraceMatrix& z);

struct CertifiedBounds {
  double m0 = 0.0;  // ||TZ||_0 <= m0 ||Z||_0
  double m1 = 0.0;  // ||TZ||_inf <= m1 ||Z||_inf
};

// m0 = number of terms (rank(A Z B) <= rank Z). m1 = sum ||A_i|| ||B_i||; for
// an orthogonally tagged hom, m1 = ||sum A_i A_i^*||^{1/2} max ||B_i|| instead.
// Throws DomainError when the orthogonality tag fails at 1e-9.
CertifiedBounds certified_bounds(const PairHom& t);

struct InterpolationReport {
  CertifiedBounds bounds;
  double worst_margin = kInfinity;  // min_t [m1 mu(t; X) - mu(m0 t; TX)]
  double worst_t = 0.0;
  std::size_t points_checked = 0;
  bool pass = false;
};

// mu(m0 t; TX) <= m1 mu(t; X) at every t of the merged breakpoint grid.
InterpolationReport interpolation_check(const PairHom& t, const TraceMatrix& x, double rel_tol = 1e-9);

struct ENormBoundReport {
  std::string norm;
  unsigned k = 0;        // minimal with 2^k >= m0
  double factor = 0.0;   // (2 C_E)^k sum_{i=1}^{[m1]+1} C_E^i
  double lhs = 0.0;      // ||TX||_E
  double rhs = 0.0;      // factor * ||X||_E
  bool pass = false;
};

ENormBoundReport enorm_bound_check(const PairHom& t, const TraceMatrix& x, const DeltaNorm& e,
                                   double rel_tol = 1e-9);

}  // namespace kinterp
