#pragma once

// Constructive orbit transfer in the matrix model. Given A and X with
// mu(t; X) <= C mu(t / C; A), build a homomorphism T bounded on (L0, Linf)
// with TA = X and certified bounds at most 2C:
//
//   T Z = U_X B_D ( sum_{j<2C} U_j^* (A_D U_A^* Z) U_j ).
//
// The values of |A| are rounded down to the grid eps N. Each level block
// [a_n, b_n) of mu(A) is copied 2C times onto [2C a_n + j (b_n - a_n), ...)
// in the singular order of X, realized by partial isometries U_nj between
// singular vectors. All interval lengths are multiples of the trace weight w,
// so every trace-matching condition is an equality of index counts.

#include <cstdint>
#include <vector>

#include "kinterp/matrix_model.hpp"
#include "kinterp/pair_hom.hpp"
#include "kinterp/random.hpp"

namespace kinterp {

struct LevelBlock {
  std::int64_t level = 0;  // n: values of |A| in [n eps, (n + 1) eps)
  Eigen::Index first = 0;  // singular indices of A, [first, last)
  Eigen::Index last = 0;
};

struct ShiftedBlock {
  std::int64_t level = 0;
  std::int64_t copy = 0;   // j
  Eigen::Index first = 0;  // singular indices of X, [first, last) before truncation
  Eigen::Index last = 0;
  Eigen::Index kept = 0;   // min(last, rank X); the copy is truncated there
};

struct IndexPair {
  Eigen::Index x_index = 0;  // initial vector v^X_k
  Eigen::Index a_index = 0;  // final vector v^A_i
};

struct TransferPlan {
  std::int64_t c = 1;                 // integer constant C
  double pointwise_constant = 1.0;    // minimal real constant found by bisection
  double delta = 0.0;                 // min over t < tau(s(X)) of 2C mu(t/2C; A) - mu(t; X)
  double margin_floor = 0.0;          // C mu(tau(s(X)) / 2C; A), lower bound for delta
  double epsilon = 0.0;               // rounding step, min(delta, 1) / 4C
  double weight = 1.0;
  Eigen::Index dim = 0;
  Eigen::Index rank_a = 0;
  Eigen::Index rank_x = 0;
  Eigen::VectorXd sigma_a;            // singular values of A, descending
  Eigen::VectorXd sigma_x;
  Matrix frame_a;                     // right singular vectors of A: the ordering J_A
  Matrix frame_x;                     // right singular vectors of X: the ordering J_X
  std::vector<LevelBlock> levels;     // only levels n >= 1
  std::vector<ShiftedBlock> shifted;  // only copies starting below rank X
  std::vector<std::vector<IndexPair>> index_maps;  // per copy j < 2C, may be empty
  TraceMatrix polar_a;                // U_A
  TraceMatrix polar_x;                // U_X
  TraceMatrix a_delta;                // A_D = floor(|A| / eps) eps / |A| on the support
  TraceMatrix b1;                     // A_D |A|
  TraceMatrix b2;                     // sum_j U_j^* B1 U_j
  TraceMatrix b_delta;                // |X| / B2 on the support of X
};

// Throws DomainError for A = 0, X = 0, mismatched operands, or when no
// integer C <= 1e6 gives a positive margin.
TransferPlan plan(const TraceMatrix& a, const TraceMatrix& x);

// U_j from the plan's index maps.
std::vector<TraceMatrix> partial_isometries(const TransferPlan& p);

// Terms (U_X B_D U_j^* A_D U_A^*, U_j) for the nonzero U_j, tagged
// orthogonal. Throws DomainError if (A, X) do not match the plan.
PairHom build(const TransferPlan& p, const TraceMatrix& a, const TraceMatrix& x);

struct TransferReport {
  std::int64_t c = 1;
  double pointwise_constant = 1.0;
  double reconstruction_error = 0.0;  // ||TA - X|| / ||X||
  CertifiedBounds bounds;
  bool bounds_ok = false;             // m0 <= 2C and m1 <= 2C
  double empirical_l0_ratio = 0.0;    // max ||TZ||_0 / (m0 ||Z||_0) over samples
  double empirical_linf_ratio = 0.0;  // max ||TZ||_inf / (m1 ||Z||_inf)
  bool empirical_ok = false;
  // Relative residuals of A_D |A| = B1, sum U_j^* B1 U_j = B2, B_D B2 = |X|,
  // U_X |X| = X.
  double factor_a_delta = 0.0;
  double factor_b2 = 0.0;
  double factor_b_delta = 0.0;
  double factor_polar_x = 0.0;
  double isometry_defect = 0.0;       // partial isometry and orthogonality residuals
  double dilation_defect = 0.0;       // max |mu(t; B2) - mu(t / 2C; B1)| on [0, tau(s(X)))
  double rounding_loss = 0.0;         // ||mu(A) - mu(B1)||_inf, must stay below eps
  double a_delta_norm = 0.0;
  double b_delta_norm = 0.0;
  bool reconstruction_ok = false;
  bool factorizations_ok = false;
  bool pass() const { return reconstruction_ok && bounds_ok && empirical_ok && factorizations_ok; }
};

TransferReport verify(const PairHom& t, const TraceMatrix& a, const TraceMatrix& x, const TransferPlan& p,
                      std::uint64_t seed = 0, std::size_t samples = 100);

}  // namespace kinterp
