#include "kinterp/random.hpp"

#include <algorithm>

namespace kinterp {
namespace {

Complex complex_gaussian(Rng& rng, std::normal_distribution<double>& g) {
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = complex_gaussian(rng, g);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(n, n);
}

TraceMatrix random_matrix(Rng& rng, Eigen::Index n, double weight, Eigen::Index rank) {
  std::normal_distribution<double> g;
  const Eigen::Index r = rank < 0 ? n : std::min(rank, n);
  Matrix left(n, r);
  Matrix right(r, n);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < n; ++i) left(i, j) = complex_gaussian(rng, g);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < r; ++i) right(i, j) = complex_gaussian(rng, g);
  return TraceMatrix(left * right, weight);
}

StepFunction random_step(Rng& rng, std::size_t max_pieces) {
  std::uniform_int_distribution<std::size_t> count(1, max_pieces);
  std::uniform_real_distribution<double> width(0.1, 2.0);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::bernoulli_distribution zero_piece(0.15);
  const std::size_t m = count(rng);
  std::vector<double> widths(m);
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) {
    widths[i] = width(rng);
    values[i] = zero_piece(rng) ? 0.0 : value(rng);
  }
  return StepFunction::from_widths(widths, values, 0.0);
}

SingularFunction random_singular(Rng& rng, std::size_t max_pieces) {
  std::uniform_int_distribution<std::size_t> count(1, max_pieces);
  std::uniform_real_distribution<double> width(0.1, 2.0);
  std::uniform_real_distribution<double> value(0.05, 3.0);
  const std::size_t m = count(rng);
  std::vector<double> widths(m);
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) {
    widths[i] = width(rng);
    values[i] = value(rng);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return SingularFunction::from_widths(widths, values, 0.0);
}

TraceMatrix with_singular_values(Rng& rng, std::span<const double> sigma, double weight) {
  const auto n = static_cast<Eigen::Index>(sigma.size());
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = sigma[static_cast<std::size_t>(i)];
  const Matrix u = random_unitary(rng, n);
  const Matrix v = random_unitary(rng, n);
  return TraceMatrix(u * d.cast<Complex>().asDiagonal() * v.adjoint(), weight);
}

PairHom random_hom(Rng& rng, Eigen::Index n, double weight, bool orthogonal, std::size_t max_terms) {
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  const std::size_t m = count(rng);
  std::vector<HomTerm> terms;
  if (!orthogonal) {
    for (std::size_t i = 0; i < m; ++i) {
      TraceMatrix a = random_matrix(rng, n, weight);
      TraceMatrix b = random_matrix(rng, n, weight);
      terms.push_back({std::move(a), std::move(b)});
    }
    return PairHom(std::move(terms), false);
  }
  // Assign every coordinate to one of the m terms.
  std::uniform_int_distribution<std::size_t> owner(0, m - 1);
  std::vector<std::vector<double>> mask(m, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (Eigen::Index k = 0; k < n; ++k) mask[owner(rng)][static_cast<std::size_t>(k)] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    TraceMatrix a = random_matrix(rng, n, weight);
    TraceMatrix g = random_matrix(rng, n, weight);
    terms.push_back({std::move(a), g * TraceMatrix::diagonal(mask[i], weight)});
  }
  return PairHom(std::move(terms), true);
}

namespace {

std::vector<double> nonincreasing_factors(Rng& rng, std::size_t m) {
  std::uniform_real_distribution<double> theta(0.3, 1.0);
  std::vector<double> out(m);
  for (double& t : out) t = theta(rng);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

PlantedPair planted_pair(Rng& rng, Eigen::Index n, double weight, std::int64_t c) {
  std::uniform_int_distribution<Eigen::Index> rank_a(1, n);
  PlantedPair out;
  out.c = c;
  out.a = random_matrix(rng, n, weight, rank_a(rng));
  const SpectralData sa = spectral(out.a);
  const Eigen::Index cap = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(c) * sa.rank);
  std::uniform_int_distribution<Eigen::Index> rank_x(1, cap);
  const Eigen::Index rx = rank_x(rng);
  const std::vector<double> theta = nonincreasing_factors(rng, static_cast<std::size_t>(rx));
  std::vector<double> sigma(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index k = 0; k < rx; ++k) {
    sigma[static_cast<std::size_t>(k)] =
        static_cast<double>(c) * sa.sigma(k / static_cast<Eigen::Index>(c)) * theta[static_cast<std::size_t>(k)];
  }
  out.x = with_singular_values(rng, sigma, weight);
  return out;
}

SingularFunction planted_singular(Rng& rng, const SingularFunction& mu_a, double c) {
  if (mu_a.pieces() == 0) return mu_a;
  const std::vector<double> theta = nonincreasing_factors(rng, mu_a.pieces());
  const std::size_t keep = std::uniform_int_distribution<std::size_t>(1, mu_a.pieces())(rng);
  std::vector<double> breakpoints;
  std::vector<double> values;
  for (std::size_t i = 0; i < keep; ++i) {
    breakpoints.push_back(c * mu_a.breakpoints()[i]);
    values.push_back(c * mu_a.values()[i] * theta[i]);
  }
  return SingularFunction(StepFunction(std::move(breakpoints), std::move(values), 0.0));
}

}  // namespace kinterp
