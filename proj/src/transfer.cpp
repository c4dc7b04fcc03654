#include "kinterp/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinterp/error.hpp"
#include "kinterp/k_functional.hpp"
#include "kinterp/orbits.hpp"

namespace kinterp {
namespace {

constexpr std::int64_t kMaxConstant = 1000000;
constexpr double kCheckTolerance = 1e-9;

double sigma_or_zero(const Eigen::VectorXd& sigma, Eigen::Index rank, Eigen::Index i) {
  return i < rank ? sigma(i) : 0.0;
}

// sigma^X_k <= c sigma^A_{floor(k / c)} for every k < rank X, i.e. the
// pointwise condition at integer c, evaluated on the common grid of width w.
bool pointwise_holds(const SpectralData& sa, const SpectralData& sx, std::int64_t c) {
  for (Eigen::Index k = 0; k < sx.rank; ++k) {
    const double bound = static_cast<double>(c) * sigma_or_zero(sa.sigma, sa.rank, k / c);
    if (sx.sigma(k) > bound * (1.0 + 1e-12)) return false;
  }
  return true;
}

struct Margin {
  double delta = kInfinity;
  Eigen::Index worst = 0;
};

// min over k < rank X of 2c sigma^A_{floor(k / 2c)} - sigma^X_k.
Margin margin(const SpectralData& sa, const SpectralData& sx, std::int64_t c) {
  Margin m;
  for (Eigen::Index k = 0; k < sx.rank; ++k) {
    const double v = 2.0 * static_cast<double>(c) * sigma_or_zero(sa.sigma, sa.rank, k / (2 * c)) - sx.sigma(k);
    if (v < m.delta) {
      m.delta = v;
      m.worst = k;
    }
  }
  return m;
}

Matrix projector(const Matrix& frame, Eigen::Index i) { return frame.col(i) * frame.col(i).adjoint(); }

double relative(const Matrix& diff, const Matrix& ref) {
  const double scale = operator_norm(ref);
  const double err = operator_norm(diff);
  return scale > 0.0 ? err / scale : err;
}

Matrix polar_part(const SpectralData& sd) {
  const Eigen::Index r = sd.rank;
  return sd.left.leftCols(r) * sd.right.leftCols(r).adjoint();
}

Matrix modulus(const Eigen::VectorXd& sigma, Eigen::Index rank, const Matrix& frame) {
  Matrix m = Matrix::Zero(frame.rows(), frame.cols());
  for (Eigen::Index i = 0; i < rank; ++i) m.noalias() += sigma(i) * projector(frame, i);
  return m;
}

}  // namespace

TransferPlan plan(const TraceMatrix& a, const TraceMatrix& x) {
  require_composable(a, x);
  const SpectralData sa = spectral(a);
  const SpectralData sx = spectral(x);
  if (sa.rank == 0) throw DomainError("transfer source A is zero");
  if (sx.rank == 0) throw DomainError("transfer target X is zero");

  TransferPlan p;
  const std::optional<double> c0 = pointwise_constant(mu_of(sx), mu_of(sa));
  if (!c0 || *c0 > static_cast<double>(kMaxConstant)) {
    // Report the first grid point where the best admissible C fails.
    const Margin m = margin(sa, sx, kMaxConstant);
    throw DomainError("no integer C <= 1e6 gives a positive margin; failing breakpoint t = " +
                      format_number(sx.weight * static_cast<double>(m.worst)));
  }
  p.pointwise_constant = *c0;
  std::int64_t c = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(*c0 * (1.0 - 1e-9))));
  Margin m;
  for (;; ++c) {
    if (c > kMaxConstant) {
      throw DomainError("no integer C <= 1e6 gives a positive margin; failing breakpoint t = " +
                        format_number(sx.weight * static_cast<double>(m.worst)));
    }
    if (!pointwise_holds(sa, sx, c)) continue;
    m = margin(sa, sx, c);
    if (m.delta > 0.0) break;
  }

  p.c = c;
  p.delta = m.delta;
  p.margin_floor = static_cast<double>(c) * sigma_or_zero(sa.sigma, sa.rank, sx.rank / (2 * c));
  p.epsilon = std::min(p.delta, 1.0) / (4.0 * static_cast<double>(c));
  p.weight = a.weight();
  p.dim = a.dim();
  p.rank_a = sa.rank;
  p.rank_x = sx.rank;
  p.sigma_a = sa.sigma;
  p.sigma_x = sx.sigma;
  p.frame_a = sa.right;
  p.frame_x = sx.right;
  p.polar_a = TraceMatrix(polar_part(sa), p.weight);
  p.polar_x = TraceMatrix(polar_part(sx), p.weight);

  // Level of each singular value: floor(sigma / eps), corrected for round-off
  // so that n eps <= sigma < (n + 1) eps.
  const double eps = p.epsilon;
  std::vector<std::int64_t> level(static_cast<std::size_t>(sa.rank));
  for (Eigen::Index i = 0; i < sa.rank; ++i) {
    auto n = static_cast<std::int64_t>(std::floor(sa.sigma(i) / eps));
    if (static_cast<double>(n) * eps > sa.sigma(i)) --n;
    if (static_cast<double>(n + 1) * eps <= sa.sigma(i)) ++n;
    level[static_cast<std::size_t>(i)] = n;
  }
  for (Eigen::Index i = 0; i < sa.rank;) {
    Eigen::Index j = i;
    while (j < sa.rank && level[static_cast<std::size_t>(j)] == level[static_cast<std::size_t>(i)]) ++j;
    if (level[static_cast<std::size_t>(i)] >= 1) p.levels.push_back({level[static_cast<std::size_t>(i)], i, j});
    i = j;
  }

  const Eigen::Index copies = static_cast<Eigen::Index>(2 * c);
  p.index_maps.assign(static_cast<std::size_t>(copies), {});
  Eigen::Index covered = 0;
  for (const LevelBlock& block : p.levels) {
    const Eigen::Index len = block.last - block.first;
    for (Eigen::Index j = 0; j < copies; ++j) {
      const Eigen::Index start = copies * block.first + j * len;
      if (start >= sx.rank) break;
      const Eigen::Index kept = std::min(start + len, sx.rank);
      p.shifted.push_back({block.level, static_cast<std::int64_t>(j), start, start + len, kept});
      auto& map = p.index_maps[static_cast<std::size_t>(j)];
      for (Eigen::Index k = start; k < kept; ++k) map.push_back({k, block.first + (k - start)});
      covered += kept - start;
    }
  }
  if (covered != sx.rank) {
    throw DomainError("shifted level blocks cover " + std::to_string(covered) + " of " +
                      std::to_string(sx.rank) + " singular directions of X");
  }

  const Eigen::Index n = p.dim;
  Matrix a_delta = Matrix::Zero(n, n);
  Matrix b1 = Matrix::Zero(n, n);
  for (const LevelBlock& block : p.levels) {
    const double value = static_cast<double>(block.level) * eps;
    for (Eigen::Index i = block.first; i < block.last; ++i) {
      const Matrix proj = projector(sa.right, i);
      a_delta.noalias() += (value / sa.sigma(i)) * proj;
      b1.noalias() += value * proj;
    }
  }
  Matrix b2 = Matrix::Zero(n, n);
  Matrix b_delta = Matrix::Zero(n, n);
  for (const auto& map : p.index_maps) {
    for (const IndexPair& pair : map) {
      const double beta = static_cast<double>(level[static_cast<std::size_t>(pair.a_index)]) * eps;
      const Matrix proj = projector(sx.right, pair.x_index);
      b2.noalias() += beta * proj;
      b_delta.noalias() += (sx.sigma(pair.x_index) / beta) * proj;
    }
  }
  p.a_delta = TraceMatrix(std::move(a_delta), p.weight);
  p.b1 = TraceMatrix(std::move(b1), p.weight);
  p.b2 = TraceMatrix(std::move(b2), p.weight);
  p.b_delta = TraceMatrix(std::move(b_delta), p.weight);
  return p;
}

std::vector<TraceMatrix> partial_isometries(const TransferPlan& p) {
  std::vector<TraceMatrix> out;
  out.reserve(p.index_maps.size());
  for (const auto& map : p.index_maps) {
    Matrix u = Matrix::Zero(p.dim, p.dim);
    for (const IndexPair& pair : map) u.noalias() += p.frame_a.col(pair.a_index) * p.frame_x.col(pair.x_index).adjoint();
    out.emplace_back(std::move(u), p.weight);
  }
  return out;
}

PairHom build(const TransferPlan& p, const TraceMatrix& a, const TraceMatrix& x) {
  require_composable(a, x);
  if (a.dim() != p.dim || a.weight() != p.weight) throw DomainError("operands do not match the transfer plan");
  const Matrix rebuilt_a = p.polar_a.entries() * modulus(p.sigma_a, p.rank_a, p.frame_a);
  const Matrix rebuilt_x = p.polar_x.entries() * modulus(p.sigma_x, p.rank_x, p.frame_x);
  if (relative(rebuilt_a - a.entries(), a.entries()) > kCheckTolerance ||
      relative(rebuilt_x - x.entries(), x.entries()) > kCheckTolerance) {
    throw DomainError("operands do not match the transfer plan");
  }

  const Matrix head = p.polar_x.entries() * p.b_delta.entries();
  const Matrix tail = p.a_delta.entries() * p.polar_a.entries().adjoint();
  const std::vector<TraceMatrix> us = partial_isometries(p);
  std::vector<HomTerm> terms;
  for (std::size_t j = 0; j < us.size(); ++j) {
    if (p.index_maps[j].empty()) continue;
    terms.push_back({TraceMatrix(head * us[j].entries().adjoint() * tail, p.weight), us[j]});
  }
  return PairHom(std::move(terms), true);
}

TransferReport verify(const PairHom& t, const TraceMatrix& a, const TraceMatrix& x, const TransferPlan& p,
                      std::uint64_t seed, std::size_t samples) {
  TransferReport r;
  r.c = p.c;
  r.pointwise_constant = p.pointwise_constant;
  const double two_c = 2.0 * static_cast<double>(p.c);

  r.reconstruction_error = relative(apply(t, a).entries() - x.entries(), x.entries());
  r.reconstruction_ok = r.reconstruction_error <= kCheckTolerance;

  try {
    r.bounds = certified_bounds(t);
    r.bounds_ok = r.bounds.m0 <= two_c && r.bounds.m1 <= two_c * (1.0 + kCheckTolerance);
  } catch (const DomainError&) {
    r.bounds_ok = false;
  }

  Rng rng(seed);
  std::uniform_int_distribution<Eigen::Index> rank_draw(1, std::max<Eigen::Index>(1, a.dim()));
  for (std::size_t s = 0; s < samples && r.bounds_ok; ++s) {
    const TraceMatrix z = random_matrix(rng, a.dim(), a.weight(), rank_draw(rng));
    const TraceNorms nz = trace_norms(z);
    const TraceNorms ntz = trace_norms(apply(t, z));
    if (nz.l0 > 0.0) r.empirical_l0_ratio = std::max(r.empirical_l0_ratio, ntz.l0 / (r.bounds.m0 * nz.l0));
    if (nz.linf > 0.0) {
      r.empirical_linf_ratio = std::max(r.empirical_linf_ratio, ntz.linf / (r.bounds.m1 * nz.linf));
    }
  }
  r.empirical_ok = r.bounds_ok && r.empirical_l0_ratio <= 1.0 + kCheckTolerance &&
                   r.empirical_linf_ratio <= 1.0 + kCheckTolerance;

  const Polar pa = polar(a);
  const Polar px = polar(x);
  const std::vector<TraceMatrix> us = partial_isometries(p);
  Matrix b2 = Matrix::Zero(p.dim, p.dim);
  for (const TraceMatrix& u : us) b2.noalias() += u.entries().adjoint() * p.b1.entries() * u.entries();
  r.factor_a_delta = relative(p.a_delta.entries() * pa.modulus.entries() - p.b1.entries(), p.b1.entries());
  r.factor_b2 = relative(b2 - p.b2.entries(), p.b2.entries());
  r.factor_b_delta = relative(p.b_delta.entries() * p.b2.entries() - px.modulus.entries(), px.modulus.entries());
  r.factor_polar_x = relative(p.polar_x.entries() * px.modulus.entries() - x.entries(), x.entries());

  for (std::size_t i = 0; i < us.size(); ++i) {
    const Matrix init = us[i].entries().adjoint() * us[i].entries();
    const Matrix fin = us[i].entries() * us[i].entries().adjoint();
    r.isometry_defect = std::max({r.isometry_defect, operator_norm(init * init - init), operator_norm(fin * fin - fin)});
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      const Matrix other = us[j].entries().adjoint() * us[j].entries();
      r.isometry_defect = std::max(r.isometry_defect, operator_norm(init * other));
    }
  }

  const SingularFunction mu_a = mu_of(a);
  const SingularFunction mu_b1 = mu_of(p.b1);
  const SingularFunction mu_b2 = mu_of(p.b2);
  const double w = p.weight;
  for (Eigen::Index k = 0; k < p.rank_x; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * w;
    r.dilation_defect = std::max(r.dilation_defect, std::abs(mu_b2(t_mid) - mu_b1(t_mid / two_c)));
  }
  for (Eigen::Index i = 0; i < p.dim; ++i) {
    const double t_mid = (static_cast<double>(i) + 0.5) * w;
    r.rounding_loss = std::max(r.rounding_loss, std::abs(mu_a(t_mid) - mu_b1(t_mid)));
  }
  r.a_delta_norm = operator_norm(p.a_delta.entries());
  r.b_delta_norm = operator_norm(p.b_delta.entries());

  const double scale_b1 = std::max(mu_b1.at_zero(), 1e-300);
  // sigma - n eps < eps holds exactly; mu(A) comes from a second SVD here.
  const double rounding_slack = kCheckTolerance * mu_a.at_zero();
  r.factorizations_ok = r.factor_a_delta <= kCheckTolerance && r.factor_b2 <= kCheckTolerance &&
                        r.factor_b_delta <= kCheckTolerance && r.factor_polar_x <= kCheckTolerance &&
                        r.isometry_defect <= kCheckTolerance && r.dilation_defect <= kCheckTolerance * scale_b1 &&
                        r.rounding_loss < p.epsilon + rounding_slack && r.a_delta_norm <= 1.0 + kCheckTolerance &&
                        r.b_delta_norm <= two_c * (1.0 + kCheckTolerance);
  return r;
}

}  // namespace kinterp
