#include "kinterp/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kinterp/error.hpp"

namespace kinterp {
namespace {

bool close(double a, double b) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= kCanonicalTolerance * scale;
}

void require_positive(double t, const char* what) {
  if (!(t > 0.0)) throw DomainError(std::string(what) + " must be positive, got " + std::to_string(t));
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values, double tail)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), tail_(tail) {
  if (breakpoints_.size() != values_.size()) {
    throw DomainError("step function needs one value per breakpoint");
  }
  if (!std::isfinite(tail_)) throw DomainError("step function tail must be finite");
  double prev = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double t = breakpoints_[i];
    if (!std::isfinite(t) || !(t > prev)) {
      throw DomainError("breakpoints must be finite, positive and strictly increasing");
    }
    if (!std::isfinite(values_[i])) throw DomainError("step function values must be finite");
    prev = t;
  }
  canonicalize();
}

StepFunction StepFunction::from_widths(std::span<const double> widths, std::span<const double> values,
                                       double tail) {
  if (widths.size() != values.size()) throw DomainError("one value per width required");
  std::vector<double> bps;
  bps.reserve(widths.size());
  double acc = 0.0;
  for (double w : widths) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("piece widths must be positive and finite");
    acc += w;
    bps.push_back(acc);
  }
  return StepFunction(std::move(bps), {values.begin(), values.end()}, tail);
}

StepFunction StepFunction::indicator(double length, double height) {
  if (length == 0.0 || height == 0.0) return {};
  require_positive(length, "indicator length");
  return StepFunction({length}, {height}, 0.0);
}

void StepFunction::canonicalize() {
  auto normalize_zero = [](double v) { return v == 0.0 ? 0.0 : v; };
  tail_ = normalize_zero(tail_);
  std::vector<double> bps;
  std::vector<double> vals;
  bps.reserve(breakpoints_.size());
  vals.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = normalize_zero(values_[i]);
    if (!vals.empty() && vals.back() == v) {
      bps.back() = breakpoints_[i];
    } else {
      vals.push_back(v);
      bps.push_back(breakpoints_[i]);
    }
  }
  while (!vals.empty() && vals.back() == tail_) {
    vals.pop_back();
    bps.pop_back();
  }
  breakpoints_ = std::move(bps);
  values_ = std::move(vals);
}

double StepFunction::operator()(double t) const {
  require_positive(t, "evaluation point");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return tail_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepFunction::left_limit(double t) const {
  require_positive(t, "evaluation point");
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return tail_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

StepFunction StepFunction::scaled(double c) const {
  if (!std::isfinite(c)) throw DomainError("scale factor must be finite");
  std::vector<double> vals(values_);
  for (double& v : vals) v *= c;
  return StepFunction(breakpoints_, std::move(vals), tail_ * c);
}

StepFunction StepFunction::abs() const {
  std::vector<double> vals(values_);
  for (double& v : vals) v = std::abs(v);
  return StepFunction(breakpoints_, std::move(vals), std::abs(tail_));
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  if (a.pieces() != b.pieces() || !close(a.tail_, b.tail_)) return false;
  for (std::size_t i = 0; i < a.pieces(); ++i) {
    if (!close(a.breakpoints_[i], b.breakpoints_[i]) || !close(a.values_[i], b.values_[i])) return false;
  }
  return true;
}

SingularFunction::SingularFunction(StepFunction f) : fn_(std::move(f)) {
  double prev = kInfinity;
  for (double v : fn_.values()) {
    if (v < 0.0 || v > prev) throw DomainError("singular function must be nonnegative and nonincreasing");
    prev = v;
  }
  if (fn_.tail() < 0.0 || fn_.tail() > prev) {
    throw DomainError("singular function tail must lie in [0, last value]");
  }
}

SingularFunction SingularFunction::from_widths(std::span<const double> widths,
                                               std::span<const double> values, double tail) {
  return SingularFunction(StepFunction::from_widths(widths, values, tail));
}

SingularFunction SingularFunction::indicator(double length, double height) {
  return SingularFunction(StepFunction::indicator(length, height));
}

double SingularFunction::at_zero() const {
  return fn_.values().empty() ? fn_.tail() : fn_.values().front();
}

double SingularFunction::support_measure() const {
  if (fn_.tail() > 0.0) return kInfinity;
  return fn_.breakpoints().empty() ? 0.0 : fn_.breakpoints().back();
}

SingularFunction SingularFunction::scaled(double c) const {
  if (c < 0.0) throw DomainError("singular functions may only be scaled by c >= 0");
  return SingularFunction(fn_.scaled(c));
}

double evaluate(const StepFunction& f, double t) { return f(t); }

SingularFunction rearrange(const StepFunction& f) {
  const double tail = std::abs(f.tail());
  struct Piece {
    double width;
    double height;
  };
  std::vector<Piece> pieces;
  pieces.reserve(f.pieces());
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double h = std::abs(f.values()[i]);
    if (h < tail) {
      throw DomainError("rearrangement undefined: |tail| exceeds an interior value");
    }
    pieces.push_back({f.breakpoints()[i] - f.piece_start(i), h});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.height > b.height; });
  std::vector<double> widths;
  std::vector<double> heights;
  widths.reserve(pieces.size());
  heights.reserve(pieces.size());
  for (const Piece& p : pieces) {
    widths.push_back(p.width);
    heights.push_back(p.height);
  }
  return SingularFunction::from_widths(widths, heights, tail);
}

double dist(const StepFunction& f, double s) {
  if (!(s >= 0.0)) throw DomainError("distribution level must be nonnegative");
  if (std::abs(f.tail()) > s) return kInfinity;
  double measure = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (std::abs(f.values()[i]) > s) measure += f.breakpoints()[i] - f.piece_start(i);
  }
  return measure;
}

double dist(const SingularFunction& mu, double s) { return dist(mu.function(), s); }

StepFunction dilate(const StepFunction& f, double s) {
  require_positive(s, "dilation factor");
  std::vector<double> bps(f.breakpoints());
  for (double& t : bps) t *= s;
  return StepFunction(std::move(bps), f.values(), f.tail());
}

SingularFunction dilate(const SingularFunction& mu, double s) {
  return SingularFunction(dilate(mu.function(), s));
}

StepNorms norms(const StepFunction& f) {
  StepNorms out;
  out.linf = std::abs(f.tail());
  double support = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    out.linf = std::max(out.linf, std::abs(f.values()[i]));
    if (f.values()[i] != 0.0) support += f.breakpoints()[i] - f.piece_start(i);
  }
  out.l0 = f.tail() != 0.0 ? kInfinity : support;
  return out;
}

std::vector<double> merged_breakpoints(std::span<const StepFunction* const> fns) {
  std::vector<double> all;
  for (const StepFunction* f : fns) all.insert(all.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<Probe> partition_probes(std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Probe> out;
  out.reserve(cuts.size() + 1);
  double start = 0.0;
  for (double c : cuts) {
    if (!(c > start)) continue;
    out.push_back({start, 0.5 * (start + c)});
    start = c;
  }
  out.push_back({start, start > 0.0 ? 2.0 * start : 1.0});
  return out;
}

StepFunction add_pointwise(const StepFunction& f, const StepFunction& g) {
  const StepFunction* both[] = {&f, &g};
  std::vector<double> bps = merged_breakpoints(both);
  std::vector<double> vals;
  vals.reserve(bps.size());
  // Left endpoint of each refined piece picks the value held on it.
  double start = 0.0;
  for (double t : bps) {
    const double probe = start > 0.0 ? start : 0.5 * t;
    vals.push_back(f(probe) + g(probe));
    start = t;
  }
  return StepFunction(std::move(bps), std::move(vals), f.tail() + g.tail());
}

SingularFunction add_pointwise(const SingularFunction& f, const SingularFunction& g) {
  return SingularFunction(add_pointwise(f.function(), g.function()));
}

double running_integral(const StepFunction& f, double t) {
  if (!(t >= 0.0)) throw DomainError("integration bound must be nonnegative");
  double acc = 0.0;
  double start = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double end = f.breakpoints()[i];
    if (t <= end) return acc + f.values()[i] * (t - start);
    acc += f.values()[i] * (end - start);
    start = end;
  }
  return acc + f.tail() * (t - start);
}

bool submajorizes(const SingularFunction& mu_y, const SingularFunction& mu_x) {
  // Running integrals are piecewise affine with vertices at the breakpoints,
  // so the comparison at vertices plus the asymptotic slopes is exact.
  const StepFunction* both[] = {&mu_y.function(), &mu_x.function()};
  for (double t : merged_breakpoints(both)) {
    const double iy = running_integral(mu_y.function(), t);
    const double ix = running_integral(mu_x.function(), t);
    if (ix > iy + kCanonicalTolerance * (std::abs(ix) + std::abs(iy))) return false;
  }
  return mu_x.tail() <= mu_y.tail() * (1.0 + kCanonicalTolerance);
}

}  // namespace kinterp
