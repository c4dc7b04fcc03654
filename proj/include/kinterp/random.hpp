#pragma once

// Seeded generators for randomized checks. std::mt19937_64 with the standard
// distributions: identical seeds give identical draws for a given build.

#include <cstdint>
#include <random>
#include <span>

#include "kinterp/matrix_model.hpp"
#include "kinterp/pair_hom.hpp"
#include "kinterp/step_function.hpp"

namespace kinterp {

using Rng = std::mt19937_64;

// Complex Gaussian n x n matrix of the given rank (rank < 0: full rank).
TraceMatrix random_matrix(Rng& rng, Eigen::Index n, double weight = 1.0, Eigen::Index rank = -1);

// Random unitary from the QR factorization of a complex Gaussian matrix.
Matrix random_unitary(Rng& rng, Eigen::Index n);

// Random step function with up to `max_pieces` pieces, values in [-2, 2] and
// zero tail.
StepFunction random_step(Rng& rng, std::size_t max_pieces = 8);

// Random singular function with up to `max_pieces` pieces and zero tail.
SingularFunction random_singular(Rng& rng, std::size_t max_pieces = 8);

// U diag(sigma) V^* with Haar-like random unitaries U, V.
TraceMatrix with_singular_values(Rng& rng, std::span<const double> sigma, double weight = 1.0);

// 1..max_terms terms with Gaussian factors. With `orthogonal`, the right
// factors are B_i = G_i P_i for orthogonal coordinate projections P_i, so the
// tag B_i B_j^* = 0 holds.
PairHom random_hom(Rng& rng, Eigen::Index n, double weight, bool orthogonal, std::size_t max_terms = 3);

/// Pair with mu(t; X) <= c mu(t / c; A) by construction: for integer c,
/// sigma^X_k = c sigma^A_{floor(k/c)} theta_k with theta nonincreasing in
/// [0.3, 1].
struct PlantedPair {
  TraceMatrix a;
  TraceMatrix x;
  std::int64_t c = 1;
};
PlantedPair planted_pair(Rng& rng, Eigen::Index n, double weight, std::int64_t c);

// mu_x = c sigma_c(mu_a) theta for real c >= 1 and zero-tail mu_a: theta is
// nonincreasing, constant on the pieces of sigma_c(mu_a), in [0.3, 1] on a
// random number of leading pieces and 0 after them.
SingularFunction planted_singular(Rng& rng, const SingularFunction& mu_a, double c);

}  // namespace kinterp
