#include "kinterp/k_functional.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kinterp/error.hpp"

namespace kinterp {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

// Lines (t_j, mu(t_j)): the 0+ candidate and one per breakpoint.
std::vector<KCurve::Candidate> k_candidates(const SingularFunction& mu) {
  std::vector<KCurve::Candidate> out;
  out.push_back({0.0, mu.at_zero()});
  for (std::size_t i = 0; i < mu.pieces(); ++i) {
    const double next = i + 1 < mu.pieces() ? mu.values()[i + 1] : mu.tail();
    out.push_back({mu.breakpoints()[i], next});
  }
  return out;
}

}  // namespace

KCurve::KCurve(const SingularFunction& mu) : candidates_(k_candidates(mu)) {
  // Slopes strictly decrease and intercepts strictly increase along the
  // candidate list, so the lower envelope is built in one monotone sweep.
  for (const Candidate& c : candidates_) {
    Piece next{0.0, kInfinity, c.t, c.mu};
    // The first line has intercept 0, so every crossing with it is positive
    // and it is never popped.
    while (!pieces_.empty()) {
      const Piece& last = pieces_.back();
      const double cross = (next.intercept - last.intercept) / (last.slope - next.slope);
      if (cross <= last.u_begin) {
        pieces_.pop_back();
        continue;
      }
      next.u_begin = cross;
      break;
    }
    if (!pieces_.empty()) pieces_.back().u_end = next.u_begin;
    pieces_.push_back(next);
  }
}

double KCurve::operator()(double u) const {
  require_positive(u, "K-functional parameter u");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u,
                             [](double x, const Piece& p) { return x < p.u_begin; });
  const Piece& p = *std::prev(it);
  return p.intercept + u * p.slope;
}

std::vector<double> KCurve::boundaries() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].u_begin);
  return out;
}

double k_at(const SingularFunction& mu, double u) {
  require_positive(u, "K-functional parameter u");
  double best = kInfinity;
  for (const KCurve::Candidate& c : k_candidates(mu)) best = std::min(best, c.t + u * c.mu);
  return best;
}

double k_at_distribution(const SingularFunction& mu, double u) {
  require_positive(u, "K-functional parameter u");
  double best = mu.tail() > 0.0 ? kInfinity : dist(mu, 0.0);  // s -> 0+
  for (double s : mu.values()) best = std::min(best, s * u + dist(mu, s));
  if (mu.tail() > 0.0) best = std::min(best, mu.tail() * u + dist(mu, mu.tail()));
  return best;
}

KCurve k_curve(const SingularFunction& mu) { return KCurve(mu); }

double m_at(const SingularFunction& mu, double t) {
  require_positive(t, "M-functional parameter t");
  // On a piece [a, b) holding value v, inf_s max{s, t v} = max{a, t v}: either
  // the crossing s = t v inside the piece or the left endpoint.
  double best = kInfinity;
  for (std::size_t i = 0; i < mu.pieces(); ++i) {
    best = std::min(best, std::max(mu.piece_start(i), t * mu.values()[i]));
  }
  const double last = mu.pieces() == 0 ? 0.0 : mu.breakpoints().back();
  return std::min(best, std::max(last, t * mu.tail()));
}

Decomposition optimal_decomposition(const StepFunction& f, double u) {
  require_positive(u, "K-functional parameter u");
  const double tail = std::abs(f.tail());
  std::vector<double> levels;
  if (tail == 0.0) levels.push_back(0.0);
  else levels.push_back(tail);
  for (double v : f.values()) {
    if (std::abs(v) > tail) levels.push_back(std::abs(v));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double best_level = levels.front();
  double best_cost = kInfinity;
  for (double s : levels) {
    const double cost = dist(f, s) + u * s;
    if (cost < best_cost) {
      best_cost = cost;
      best_level = s;
    }
  }

  std::vector<double> gv(f.values());
  std::vector<double> hv(f.values());
  for (std::size_t i = 0; i < gv.size(); ++i) {
    if (std::abs(f.values()[i]) > best_level) hv[i] = 0.0;
    else gv[i] = 0.0;
  }
  Decomposition out;
  out.g = StepFunction(f.breakpoints(), std::move(gv), 0.0);
  out.h = StepFunction(f.breakpoints(), std::move(hv), f.tail());
  out.level = best_level;
  out.value = norms(out.g).l0 + u * norms(out.h).linf;
  return out;
}

KWitness optimal_decomposition(const TraceMatrix& x, double u) { return k_direct(x, u); }

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string k_curve_csv(const SingularFunction& mu, const std::vector<double>& grid) {
  const KCurve curve(mu);
  std::string out = "u,K_u\n";
  for (double u : grid) out += format_number(u) + "," + format_number(curve(u)) + "\n";
  return out;
}

std::string m_curve_csv(const SingularFunction& mu, const std::vector<double>& grid) {
  std::string out = "t,M_t\n";
  for (double t : grid) out += format_number(t) + "," + format_number(m_at(mu, t)) + "\n";
  return out;
}

}  // namespace kinterp
