#pragma once

// K-functional of the couple (L0, Linf), the M-functional and optimal
// decompositions, all evaluated exactly on finite candidate sets.
//
// For a right-continuous nonincreasing step function mu with breakpoints
// t_1 < ... < t_m the map t -> t + u mu(t) is increasing on each piece, so
//   inf_{t>0} [t + u mu(t)] = min{ u mu(0+), t_i + u mu(t_i) : i = 1..m }.
// The last candidate is the support measure when the tail is zero. Likewise
// s -> d_mu(s) is a right-continuous step function jumping at the values of
// mu, so inf_{s>0} [s u + d_mu(s)] is attained at s = 0+ or at a value of mu.

#include <string>
#include <vector>

#include "kinterp/matrix_model.hpp"
#include "kinterp/step_function.hpp"

namespace kinterp {

/// u -> K_u(mu) as the lower envelope of the lines t_j + u mu(t_j).
class KCurve {
 public:
  struct Candidate {
    double t = 0.0;   // intercept
    double mu = 0.0;  // slope
  };
  struct Piece {
    double u_begin = 0.0;
    double u_end = kInfinity;
    double intercept = 0.0;
    double slope = 0.0;
  };

  explicit KCurve(const SingularFunction& mu);

  double operator()(double u) const;

  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  // Interior piece boundaries, increasing.
  std::vector<double> boundaries() const;

 private:
  std::vector<Candidate> candidates_;
  std::vector<Piece> pieces_;
};

// inf_{t>0} [t + u mu(t)].
double k_at(const SingularFunction& mu, double u);
// inf_{s>0} [s u + d_mu(s)], computed from the distribution function.
double k_at_distribution(const SingularFunction& mu, double u);

KCurve k_curve(const SingularFunction& mu);

// M_t(mu) = inf_{s>0} max{s, t mu(s)}.
double m_at(const SingularFunction& mu, double t);

// ||mu||_S = K_1(mu).
inline double s_norm(const SingularFunction& mu) { return k_at(mu, 1.0); }

struct Decomposition {
  StepFunction g;      // finite support part
  StepFunction h;      // bounded part
  double level = 0.0;  // cut: g = f chi{|f| > level}; 0 stands for 0+
  double value = 0.0;  // ||g||_0 + u ||h||_inf
};

// Optimal f = g + h for the couple (L0, Linf) at parameter u.
Decomposition optimal_decomposition(const StepFunction& f, double u);
// Matrix version: the spectral cut of k_direct.
KWitness optimal_decomposition(const TraceMatrix& x, double u);

// n >= 2 log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

// CSV with header "u,K_u" / "t,M_t"; numbers with 17 significant digits.
std::string k_curve_csv(const SingularFunction& mu, const std::vector<double>& grid);
std::string m_curve_csv(const SingularFunction& mu, const std::vector<double>& grid);

// 17-significant-digit rendering shared by every text output.
std::string format_number(double v);

}  // namespace kinterp
