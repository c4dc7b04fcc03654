#pragma once

// Finite model of a semifinite algebra with trace: n x n complex matrices with
// tau = w * Tr. Singular value functions, distribution functions, spectral
// projections of |X| and the polar decomposition.

#include <Eigen/Dense>
#include <span>

#include "kinterp/step_function.hpp"

namespace kinterp {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

class TraceMatrix {
 public:
  TraceMatrix() = default;
  explicit TraceMatrix(Matrix entries, double weight = 1.0);

  static TraceMatrix zero(Eigen::Index n, double weight = 1.0);
  static TraceMatrix identity(Eigen::Index n, double weight = 1.0);
  static TraceMatrix diagonal(std::span<const double> diag, double weight = 1.0);

  Eigen::Index dim() const { return entries_.rows(); }
  double weight() const { return weight_; }
  const Matrix& entries() const { return entries_; }

  TraceMatrix adjoint() const { return TraceMatrix(entries_.adjoint(), weight_); }
  // tau(X) = w * Tr(X), real part.
  double trace_value() const { return weight_ * entries_.trace().real(); }

  // Same dimension and trace weight.
  bool composable_with(const TraceMatrix& other) const;

  friend TraceMatrix operator+(const TraceMatrix& a, const TraceMatrix& b);
  friend TraceMatrix operator-(const TraceMatrix& a, const TraceMatrix& b);
  friend TraceMatrix operator*(const TraceMatrix& a, const TraceMatrix& b);
  friend TraceMatrix operator*(Complex c, const TraceMatrix& a);
  friend TraceMatrix operator-(const TraceMatrix& a) { return TraceMatrix(-a.entries_, a.weight_); }

 private:
  Matrix entries_;
  double weight_ = 1.0;
};

// Throws DomainError unless a and b are composable.
void require_composable(const TraceMatrix& a, const TraceMatrix& b);

/// X = left * diag(sigma) * right^*, singular values sorted descending.
/// Values at or below `rank_tol` are clamped to exactly zero.
struct SpectralData {
  Eigen::VectorXd sigma;
  Matrix left;
  Matrix right;
  double rank_tol = 0.0;
  Eigen::Index rank = 0;
  double weight = 1.0;
};

// Residual contract: reconstruction error <= 1e-9 * ||X||_inf, otherwise
// DecompositionError.
SpectralData spectral(const TraceMatrix& x);

double operator_norm(const Matrix& m);

// Sorted singular values on consecutive intervals of width w, tail 0.
SingularFunction mu_of(const TraceMatrix& x);
SingularFunction mu_of(const SpectralData& sd);

// w * #{i : sigma_i > s}.
double dist_op(const TraceMatrix& x, double s);

// Projection onto the span of right singular vectors with sigma in (a, b];
// b may be +inf.
TraceMatrix spectral_projection(const TraceMatrix& x, double a, double b);
TraceMatrix spectral_projection(const SpectralData& sd, double a, double b);

struct Polar {
  TraceMatrix isometry;  // partial isometry, initial space = support of modulus
  TraceMatrix modulus;   // |X| = (X^* X)^{1/2}
};
Polar polar(const TraceMatrix& x);

struct TraceNorms {
  double l0 = 0.0;    // w * rank
  double linf = 0.0;  // operator norm
};
TraceNorms trace_norms(const TraceMatrix& x);

/// Optimal spectral cut for ||G||_0 + u ||H||_inf with X = G + H,
/// G = X E^{|X|}(s, inf) and H = X E^{|X|}(0, s].
struct KWitness {
  double value = 0.0;
  double cut = 0.0;  // s; 0 stands for the 0+ cut that keeps G = X
  TraceMatrix g;
  TraceMatrix h;
};
KWitness k_direct(const TraceMatrix& x, double u);

}  // namespace kinterp
