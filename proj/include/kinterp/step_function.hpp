#pragma once

// Step functions on (0, inf) with finitely many pieces, their decreasing
// rearrangements and the elementary calculus on them.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace kinterp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance used when comparing canonical forms.
inline constexpr double kCanonicalTolerance = 1e-12;

/// A real function on (0, inf) that is constant on [t_{i-1}, t_i) for the
/// strictly increasing breakpoints t_1 < ... < t_m (t_0 = 0) and equal to
/// `tail` on [t_m, inf). Always held in canonical form: adjacent equal values
/// are merged and trailing pieces equal to the tail are absorbed into it.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<double> values, double tail = 0.0);

  // Pieces given by their widths instead of their right endpoints.
  static StepFunction from_widths(std::span<const double> widths, std::span<const double> values,
                                  double tail = 0.0);
  // height * chi_[0, length)
  static StepFunction indicator(double length, double height = 1.0);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double tail() const { return tail_; }
  std::size_t pieces() const { return values_.size(); }

  // Left endpoint of piece i (0 for the first piece).
  double piece_start(std::size_t i) const { return i == 0 ? 0.0 : breakpoints_[i - 1]; }

  // Right-continuous evaluation; t must be positive.
  double operator()(double t) const;
  // Value on the piece strictly to the left of t, i.e. f(t-); t must be positive.
  double left_limit(double t) const;

  bool is_zero() const { return values_.empty() && tail_ == 0.0; }

  StepFunction scaled(double c) const;
  StepFunction abs() const;

  // Equality of canonical forms up to kCanonicalTolerance (relative).
  friend bool operator==(const StepFunction& a, const StepFunction& b);

 private:
  void canonicalize();

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double tail_ = 0.0;
};

/// A nonnegative, nonincreasing, right-continuous step function: the shape of
/// a generalized singular value function mu(t; X) or of a rearrangement.
class SingularFunction {
 public:
  SingularFunction() = default;
  // Throws DomainError unless f is nonnegative and nonincreasing.
  explicit SingularFunction(StepFunction f);

  static SingularFunction from_widths(std::span<const double> widths, std::span<const double> values,
                                      double tail = 0.0);
  static SingularFunction indicator(double length, double height = 1.0);

  const StepFunction& function() const { return fn_; }
  const std::vector<double>& breakpoints() const { return fn_.breakpoints(); }
  const std::vector<double>& values() const { return fn_.values(); }
  double tail() const { return fn_.tail(); }
  std::size_t pieces() const { return fn_.pieces(); }
  double piece_start(std::size_t i) const { return fn_.piece_start(i); }

  double operator()(double t) const { return fn_(t); }
  double left_limit(double t) const { return fn_.left_limit(t); }

  // mu(0+).
  double at_zero() const;
  // Measure of the support; +inf when the tail is positive.
  double support_measure() const;
  bool is_zero() const { return fn_.is_zero(); }

  // c * mu for c >= 0.
  SingularFunction scaled(double c) const;

  friend bool operator==(const SingularFunction& a, const SingularFunction& b) {
    return a.fn_ == b.fn_;
  }

 private:
  StepFunction fn_;
};

struct StepNorms {
  double l0 = 0.0;    // measure of the support, +inf for a nonzero tail
  double linf = 0.0;  // essential supremum of |f|
};

double evaluate(const StepFunction& f, double t);

// Nonincreasing rearrangement of |f|. Throws DomainError when |tail| exceeds
// some |v_i|, since the result would leave the finite-description class.
SingularFunction rearrange(const StepFunction& f);

// Lebesgue measure of {t : |f(t)| > s}; +inf when |tail| > s.
double dist(const StepFunction& f, double s);
double dist(const SingularFunction& mu, double s);

// (sigma_s mu)(t) = mu(t / s).
SingularFunction dilate(const SingularFunction& mu, double s);
StepFunction dilate(const StepFunction& f, double s);

StepNorms norms(const StepFunction& f);

StepFunction add_pointwise(const StepFunction& f, const StepFunction& g);
SingularFunction add_pointwise(const SingularFunction& f, const SingularFunction& g);

// int_0^t f(s) ds, t >= 0.
double running_integral(const StepFunction& f, double t);

// True iff int_0^t mu_x <= int_0^t mu_y for every t >= 0.
bool submajorizes(const SingularFunction& mu_y, const SingularFunction& mu_x);

// Sorted union of the breakpoints of the given functions.
std::vector<double> merged_breakpoints(std::span<const StepFunction* const> fns);

// One interior point per piece of the partition of (0, inf) cut at `cuts`
// (positive, any order, duplicates allowed); the last point lies beyond the
// largest cut. Step functions whose breakpoints are among the cuts are
// constant on each piece, so evaluating at the probes is exact.
struct Probe {
  double start = 0.0;  // left end of the piece
  double point = 0.0;  // interior point
};
std::vector<Probe> partition_probes(std::vector<double> cuts);

}  // namespace kinterp
