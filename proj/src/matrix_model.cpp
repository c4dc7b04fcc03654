#include "kinterp/matrix_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kinterp/error.hpp"

namespace kinterp {
namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr double kRelativeRankTolerance = 1e-8;
constexpr double kAbsoluteRankTolerance = 1e-12;

Matrix projector_onto(const Matrix& frame, const std::vector<Eigen::Index>& columns) {
  Matrix p = Matrix::Zero(frame.rows(), frame.rows());
  for (Eigen::Index c : columns) p.noalias() += frame.col(c) * frame.col(c).adjoint();
  return p;
}

}  // namespace

TraceMatrix::TraceMatrix(Matrix entries, double weight) : entries_(std::move(entries)), weight_(weight) {
  if (entries_.rows() != entries_.cols()) throw DomainError("trace matrices must be square");
  if (!(weight_ > 0.0) || !std::isfinite(weight_)) throw DomainError("trace weight must be positive");
  if (!entries_.allFinite()) throw DomainError("matrix entries must be finite");
}

TraceMatrix TraceMatrix::zero(Eigen::Index n, double weight) {
  return TraceMatrix(Matrix::Zero(n, n), weight);
}

TraceMatrix TraceMatrix::identity(Eigen::Index n, double weight) {
  return TraceMatrix(Matrix::Identity(n, n), weight);
}

TraceMatrix TraceMatrix::diagonal(std::span<const double> diag, double weight) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return TraceMatrix(std::move(m), weight);
}

bool TraceMatrix::composable_with(const TraceMatrix& other) const {
  return dim() == other.dim() && weight_ == other.weight_;
}

void require_composable(const TraceMatrix& a, const TraceMatrix& b) {
  if (!a.composable_with(b)) {
    throw DomainError("trace matrices differ in dimension or trace weight (" + std::to_string(a.dim()) + "/" +
                      std::to_string(a.weight()) + " vs " + std::to_string(b.dim()) + "/" +
                      std::to_string(b.weight()) + ")");
  }
}

TraceMatrix operator+(const TraceMatrix& a, const TraceMatrix& b) {
  require_composable(a, b);
  return TraceMatrix(a.entries_ + b.entries_, a.weight_);
}

TraceMatrix operator-(const TraceMatrix& a, const TraceMatrix& b) {
  require_composable(a, b);
  return TraceMatrix(a.entries_ - b.entries_, a.weight_);
}

TraceMatrix operator*(const TraceMatrix& a, const TraceMatrix& b) {
  require_composable(a, b);
  return TraceMatrix(a.entries_ * b.entries_, a.weight_);
}

TraceMatrix operator*(Complex c, const TraceMatrix& a) { return TraceMatrix(c * a.entries_, a.weight_); }

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

SpectralData spectral(const TraceMatrix& x) {
  SpectralData sd;
  sd.weight = x.weight();
  const Eigen::Index n = x.dim();
  if (n == 0) return sd;
  Eigen::JacobiSVD<Matrix> svd(x.entries(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  sd.sigma = svd.singularValues();
  sd.left = svd.matrixU();
  sd.right = svd.matrixV();
  const double top = sd.sigma(0);
  if (!std::isfinite(top)) throw DecompositionError("singular value decomposition diverged");

  const Matrix rebuilt = sd.left * sd.sigma.cast<Complex>().asDiagonal() * sd.right.adjoint();
  const double residual = (rebuilt - x.entries()).norm();  // Frobenius bounds the operator norm
  if (residual > kResidualTolerance * std::max(top, kAbsoluteRankTolerance)) {
    throw DecompositionError("singular value decomposition residual " + std::to_string(residual) +
                             " exceeds tolerance");
  }

  sd.rank_tol = top > 0.0 ? kRelativeRankTolerance * top : kAbsoluteRankTolerance;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sd.sigma(i) <= sd.rank_tol) sd.sigma(i) = 0.0;
    else ++sd.rank;
  }
  return sd;
}

SingularFunction mu_of(const SpectralData& sd) {
  std::vector<double> widths;
  std::vector<double> values;
  for (Eigen::Index i = 0; i < sd.rank; ++i) {
    widths.push_back(sd.weight);
    values.push_back(sd.sigma(i));
  }
  return SingularFunction::from_widths(widths, values, 0.0);
}

SingularFunction mu_of(const TraceMatrix& x) { return mu_of(spectral(x)); }

double dist_op(const TraceMatrix& x, double s) {
  if (!(s >= 0.0)) throw DomainError("distribution level must be nonnegative");
  const SpectralData sd = spectral(x);
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < sd.sigma.size(); ++i) count += sd.sigma(i) > s ? 1 : 0;
  return x.weight() * static_cast<double>(count);
}

TraceMatrix spectral_projection(const SpectralData& sd, double a, double b) {
  if (!(a >= 0.0) || !(a < b)) throw DomainError("spectral interval (a, b] needs 0 <= a < b");
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sd.sigma.size(); ++i) {
    if (sd.sigma(i) > a && sd.sigma(i) <= b) cols.push_back(i);
  }
  return TraceMatrix(projector_onto(sd.right, cols), sd.weight);
}

TraceMatrix spectral_projection(const TraceMatrix& x, double a, double b) {
  if (x.dim() == 0) return x;
  return spectral_projection(spectral(x), a, b);
}

Polar polar(const TraceMatrix& x) {
  const Eigen::Index n = x.dim();
  if (n == 0) return {x, x};
  const SpectralData sd = spectral(x);
  Matrix isometry = Matrix::Zero(n, n);
  Matrix modulus = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < sd.rank; ++i) {
    isometry.noalias() += sd.left.col(i) * sd.right.col(i).adjoint();
    modulus.noalias() += sd.sigma(i) * (sd.right.col(i) * sd.right.col(i).adjoint());
  }
  return {TraceMatrix(std::move(isometry), x.weight()), TraceMatrix(std::move(modulus), x.weight())};
}

TraceNorms trace_norms(const TraceMatrix& x) {
  if (x.dim() == 0) return {};
  const SpectralData sd = spectral(x);
  return {x.weight() * static_cast<double>(sd.rank), sd.sigma(0)};
}

KWitness k_direct(const TraceMatrix& x, double u) {
  if (!(u > 0.0)) throw DomainError("K-functional parameter u must be positive");
  KWitness best;
  best.g = x;
  best.h = TraceMatrix::zero(x.dim(), x.weight());
  if (x.dim() == 0) return best;
  const SpectralData sd = spectral(x);
  const double w = x.weight();

  // Cut at 0+: G = X, H = 0.
  best.value = w * static_cast<double>(sd.rank);
  best.cut = 0.0;
  // Cut at s = sigma_i keeps the indices with sigma > s in G; ||H|| = sigma_i.
  Eigen::Index i = 0;
  while (i < sd.rank) {
    const double s = sd.sigma(i);
    Eigen::Index above = i;
    while (i < sd.rank && sd.sigma(i) == s) ++i;
    const double cost = w * static_cast<double>(above) + u * s;
    if (cost < best.value) {
      best.value = cost;
      best.cut = s;
    }
  }
  if (best.cut > 0.0) {
    const TraceMatrix keep = spectral_projection(sd, best.cut, kInfinity);
    best.g = x * keep;
    best.h = x - best.g;
  }
  return best;
}

}  // namespace kinterp
