#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinterp/error.hpp"
#include "kinterp/k_functional.hpp"
#include "kinterp/random.hpp"
#include "oracles.hpp"

using namespace kinterp;

TEST_CASE("k_at closed forms") {
  for (double k1 : {0.5, 1.0, 3.0}) {
    for (double len : {0.5, 2.0}) {
      const SingularFunction mu = SingularFunction::indicator(len, k1);
      for (double u : log_grid(1e-3, 1e3, 50)) CHECK(k_at(mu, u) == doctest::Approx(std::min(u * k1, len)));
    }
  }
  const SingularFunction a = SingularFunction::from_widths(std::vector<double>{1, 1}, std::vector<double>{1, 0.6});
  CHECK(k_at(a, 1) == 1);
  for (double u : log_grid(1e-3, 1e3, 50)) {
    CHECK(k_at(a, u) == doctest::Approx(std::min({u, 1 + 0.6 * u, 2.0})).epsilon(1e-14));
  }
  CHECK(k_at(SingularFunction(), 1) == 0);
  CHECK_THROWS_AS(k_at(a, 0), DomainError);
  // Tail 1: K_u = min{2u, 1 + u}.
  const SingularFunction tail(StepFunction({1}, {2}, 1.0));
  CHECK(k_at(tail, 0.5) == 1);
  CHECK(k_at(tail, 3) == 4);
}

TEST_CASE("k_curve") {
  const KCurve chi(SingularFunction::indicator(1));
  CHECK(chi(0.5) == 0.5);
  CHECK(chi(1) == 1);
  CHECK(chi(7) == 1);
  CHECK(chi.boundaries() == std::vector<double>{1});

  const SingularFunction two = SingularFunction::indicator(3, 2);
  const KCurve k(two);
  for (double u : log_grid(1e-3, 1e3, 100)) CHECK(k(u) == doctest::Approx(std::min(2 * u, 3.0)));

  const KCurve zero(SingularFunction{});
  CHECK(zero(1) == 0);
  CHECK(zero(1e9) == 0);
}

TEST_CASE("k formulas agree with the level-cut oracle") {
  Rng rng(17);
  for (int c = 0; c < 300; ++c) {
    const StepFunction f = random_step(rng);
    const SingularFunction mu = rearrange(f);
    const KCurve curve(mu);
    for (double u : log_grid(1e-3, 1e3, 13)) {
      const double want = oracle::k_by_levels(f, u);
      REQUIRE(k_at(mu, u) == doctest::Approx(want).epsilon(1e-12));
      REQUIRE(k_at_distribution(mu, u) == doctest::Approx(want).epsilon(1e-12));
      REQUIRE(curve(u) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("m_at") {
  for (double c : {0.5, 2.0}) {
    const SingularFunction mu = SingularFunction::indicator(2, c);
    for (double t : log_grid(1e-2, 1e2, 30)) {
      CHECK(m_at(mu, t) == doctest::Approx(std::min(t * c, 2.0)));
      CHECK(m_at(mu, t) == doctest::Approx(oracle::m_dense(mu, t)));
    }
  }
  const SingularFunction tight = SingularFunction::from_widths(std::vector<double>{1, 1}, std::vector<double>{2, 1});
  CHECK(m_at(tight, 1) == 1);
  CHECK(k_at(tight, 1) == 2);
  CHECK(m_at(SingularFunction(), 1) == 0);

  Rng rng(23);
  for (int c = 0; c < 100; ++c) {
    const SingularFunction mu = random_singular(rng);
    for (double t : log_grid(1e-2, 1e2, 9)) {
      // The dense oracle is an upper bound; it is exact when the minimizer is a candidate.
      CHECK(m_at(mu, t) <= oracle::m_dense(mu, t) * (1 + 1e-12));
      CHECK(m_at(mu, t) >= oracle::m_dense(mu, t) * (1 - 1e-3));
      CHECK(m_at(mu, t) <= k_at(mu, t) * (1 + 1e-12));
      CHECK(k_at(mu, t) <= 2 * m_at(mu, t) * (1 + 1e-12));
    }
  }
}

TEST_CASE("optimal_decomposition on matrices") {
  const TraceMatrix x = TraceMatrix::diagonal(std::vector<double>{3, 0.5});
  const KWitness w = optimal_decomposition(x, 1);
  CHECK(w.value == doctest::Approx(1.5));
  CHECK(trace_norms(w.g).l0 == 1);
  CHECK(trace_norms(w.h).linf == doctest::Approx(0.5));
}

TEST_CASE("optimal_decomposition on step functions") {
  const StepFunction f = StepFunction::from_widths(std::vector<double>{1, 1, 2}, std::vector<double>{-3, 0.5, 1});
  const Decomposition small = optimal_decomposition(f, 1e-3);
  CHECK(small.g.is_zero());
  CHECK(small.h == f);
  const Decomposition large = optimal_decomposition(f, 1e3);
  CHECK(large.g == f);
  CHECK(large.h.is_zero());

  Rng rng(29);
  for (int c = 0; c < 200; ++c) {
    const StepFunction g = random_step(rng);
    for (double u : log_grid(1e-2, 1e2, 7)) {
      const Decomposition d = optimal_decomposition(g, u);
      CHECK(add_pointwise(d.g, d.h) == g);
      CHECK(norms(d.g).l0 + u * norms(d.h).linf == doctest::Approx(d.value).epsilon(1e-12));
      CHECK(d.value == doctest::Approx(oracle::k_by_levels(g, u)).epsilon(1e-12));
    }
  }
  const StepFunction tail({1}, {2}, 1.0);
  CHECK(optimal_decomposition(tail, 3).value == 4);
  CHECK(norms(optimal_decomposition(tail, 3).h).linf == 1);
}

TEST_CASE("csv output") {
  const SingularFunction mu = SingularFunction::indicator(3, 2);
  const std::string csv = k_curve_csv(mu, {0.5, 1, 2});
  CHECK(csv == "u,K_u\n0.5,1\n1,2\n2,3\n");
  CHECK(m_curve_csv(mu, {1}) == "t,M_t\n1,2\n");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(kInfinity) == "inf");
  const std::vector<double> grid = log_grid(1, 100, 3);
  REQUIRE(grid.size() == 3);
  CHECK(grid.front() == 1);
  CHECK(grid[1] == doctest::Approx(10).epsilon(1e-15));
  CHECK(grid.back() == 100);
  CHECK_THROWS_AS(log_grid(1, 100, 1), DomainError);
}
