#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinterp/error.hpp"
#include "kinterp/random.hpp"
#include "oracles.hpp"

using namespace kinterp;

namespace {

TraceMatrix diag(std::vector<double> d, double w = 1.0) { return TraceMatrix::diagonal(d, w); }

double op_dist(const TraceMatrix& a, const TraceMatrix& b) { return operator_norm((a - b).entries()); }

}  // namespace

TEST_CASE("construction") {
  CHECK_THROWS_AS(TraceMatrix(Matrix::Zero(2, 3)), DomainError);
  CHECK_THROWS_AS(TraceMatrix(Matrix::Zero(2, 2), 0.0), DomainError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(TraceMatrix{bad}, DomainError);
  CHECK_THROWS_AS(diag({1}) + diag({1, 2}), DomainError);
  CHECK_THROWS_AS(diag({1}, 1.0) * diag({1}, 0.5), DomainError);
  CHECK(diag({1, 2, 3}, 0.5).trace_value() == doctest::Approx(3.0));
}

TEST_CASE("mu_of") {
  CHECK(mu_of(diag({3, 1, 2})) ==
        SingularFunction::from_widths(std::vector<double>{1, 1, 1}, std::vector<double>{3, 2, 1}));
  CHECK(mu_of(TraceMatrix::zero(3)).is_zero());
  CHECK(mu_of(diag({2, 2}, 0.5)) == SingularFunction::indicator(1, 2));
}

TEST_CASE("mu_of agrees with the eigenvalues of X^* X") {
  Rng rng(5);
  for (int c = 0; c < 50; ++c) {
    const Eigen::Index n = 1 + c % 9;
    const TraceMatrix x = random_matrix(rng, n, 0.5);
    const SingularFunction mu = mu_of(x);
    const std::vector<double> s = oracle::singular_values(x.entries());
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(mu((static_cast<double>(i) + 0.5) * 0.5) == doctest::Approx(s[static_cast<std::size_t>(i)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("dist_op") {
  CHECK(dist_op(diag({3, 1, 2}), 1.5) == 2);
  CHECK(dist_op(TraceMatrix::identity(2), 1) == 0);
  Rng rng(9);
  for (int c = 0; c < 50; ++c) {
    const TraceMatrix x = random_matrix(rng, 1 + c % 7, 0.25, 1 + c % 3);
    const SingularFunction mu = mu_of(x);
    for (double s : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0}) CHECK(dist_op(x, s) == doctest::Approx(dist(mu, s)));
  }
}

TEST_CASE("spectral_projection") {
  const TraceMatrix x = diag({3, 1, 2});
  const TraceMatrix e = spectral_projection(x, 1.5, kInfinity);
  CHECK(op_dist(e, diag({1, 0, 1})) < 1e-12);
  CHECK(e.trace_value() == doctest::Approx(2.0));

  Rng rng(1);
  const TraceMatrix inv = random_matrix(rng, 4);
  CHECK(op_dist(spectral_projection(inv, 0, kInfinity), TraceMatrix::identity(4)) < 1e-9);
  CHECK(operator_norm(spectral_projection(x, 1.2, 1.8).entries()) == 0);
  CHECK_THROWS_AS(spectral_projection(x, 2, 1), DomainError);
  CHECK_THROWS_AS(spectral_projection(x, -1, 1), DomainError);
}

TEST_CASE("polar") {
  const TraceMatrix pos = diag({2, 0, 1});
  const Polar pp = polar(pos);
  CHECK(op_dist(pp.isometry, diag({1, 0, 1})) < 1e-12);
  CHECK(op_dist(pp.modulus, pos) < 1e-12);

  const Polar neg = polar(-TraceMatrix::identity(3));
  CHECK(op_dist(neg.isometry, -TraceMatrix::identity(3)) < 1e-12);
  CHECK(op_dist(neg.modulus, TraceMatrix::identity(3)) < 1e-12);

  Rng rng(2);
  for (int c = 0; c < 30; ++c) {
    const TraceMatrix x = random_matrix(rng, 2 + c % 6, 1.0, 1 + c % 3);
    const Polar p = polar(x);
    CHECK(op_dist(p.isometry * p.modulus, x) <= 1e-9 * operator_norm(x.entries()));
    const TraceMatrix init = p.isometry.adjoint() * p.isometry;
    CHECK(op_dist(init * init, init) < 1e-9);
  }
}

TEST_CASE("trace_norms") {
  const TraceNorms a = trace_norms(diag({3, 0, 2}));
  CHECK(a.l0 == 2);
  CHECK(a.linf == doctest::Approx(3));
  const TraceNorms z = trace_norms(TraceMatrix::zero(2));
  CHECK(z.l0 == 0);
  CHECK(z.linf == 0);
  Rng rng(4);
  const TraceMatrix x = random_matrix(rng, 5, 0.5, 3);
  CHECK(trace_norms(Complex(-0.01, 2.0) * x).l0 == trace_norms(x).l0);
}

TEST_CASE("k_direct") {
  const KWitness k = k_direct(diag({3, 0.5}), 1);
  CHECK(k.value == doctest::Approx(1.5));
  CHECK(trace_norms(k.g).l0 == 1);
  CHECK(trace_norms(k.h).linf == doctest::Approx(0.5));
  CHECK(op_dist(k.g + k.h, diag({3, 0.5})) < 1e-12);
  CHECK(k_direct(TraceMatrix::zero(2), 1).value == 0);
  CHECK(k_direct(diag({3, 0.5}), 1e6).value == doctest::Approx(2));
  CHECK_THROWS_AS(k_direct(diag({1}), 0), DomainError);

  Rng rng(6);
  for (int c = 0; c < 50; ++c) {
    const TraceMatrix x = random_matrix(rng, 1 + c % 8, 0.5, 1 + c % 4);
    for (double u : {1e-3, 0.1, 1.0, 3.0, 100.0}) {
      const KWitness w = k_direct(x, u);
      CHECK(w.value == doctest::Approx(oracle::k_by_cuts(x.entries(), 0.5, u)).epsilon(1e-9));
      const double cost = trace_norms(w.g).l0 + u * trace_norms(w.h).linf;
      CHECK(cost == doctest::Approx(w.value).epsilon(1e-9));
    }
  }
}
