#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinterp/error.hpp"
#include "kinterp/random.hpp"
#include "kinterp/step_function.hpp"
#include "oracles.hpp"

using namespace kinterp;

namespace {

StepFunction unit_widths(std::vector<double> values) {
  std::vector<double> w(values.size(), 1.0);
  return StepFunction::from_widths(w, values);
}

}  // namespace

TEST_CASE("construction canonicalizes") {
  const StepFunction f({1, 2, 3}, {2, 2, 0}, 0.0);
  CHECK(f.pieces() == 1);
  CHECK(f.breakpoints() == std::vector<double>{2});
  CHECK(f(1.5) == 2);
  CHECK(f(2) == 0);

  CHECK_THROWS_AS(StepFunction({2, 1}, {1, 1}), DomainError);
  CHECK_THROWS_AS(StepFunction({0, 1}, {1, 1}), DomainError);
  CHECK_THROWS_AS(StepFunction({1}, {1, 2}), DomainError);
  CHECK_THROWS_AS(SingularFunction(unit_widths({1, 2})), DomainError);
  CHECK_THROWS_AS(SingularFunction(unit_widths({-1})), DomainError);
}

TEST_CASE("evaluate") {
  const StepFunction f = StepFunction::indicator(3, 2);
  CHECK(evaluate(f, 1) == 2);
  CHECK(evaluate(f, 3) == 0);
  CHECK(evaluate(unit_widths({3, 1}), 1.5) == 1);
  CHECK(f.left_limit(3) == 2);
  CHECK_THROWS_AS(evaluate(f, 0), DomainError);
  CHECK_THROWS_AS(evaluate(f, -1), DomainError);
}

TEST_CASE("rearrange") {
  CHECK(rearrange(unit_widths({1, 3, 2})) == SingularFunction::from_widths(std::vector<double>{1, 1, 1},
                                                                            std::vector<double>{3, 2, 1}));
  CHECK(rearrange(StepFunction::indicator(3, -2)) == SingularFunction::indicator(3, 2));

  const StepFunction f = StepFunction::from_widths(std::vector<double>{1, 2, 1}, std::vector<double>{1, 3, 1});
  const SingularFunction mu = rearrange(f);
  CHECK(mu == SingularFunction::from_widths(std::vector<double>{2, 2}, std::vector<double>{3, 1}));
  // Fine-grid sort oracle: sample i sits at (i + 1/2) h, away from breakpoints.
  const std::vector<double> sorted = oracle::grid_sort(f, 5.0, 1000);
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(mu((static_cast<double>(i) + 0.5) * 0.005) == sorted[i]);

  CHECK(rearrange(StepFunction()).is_zero());
  CHECK_THROWS_AS(rearrange(StepFunction({1}, {0.5}, 1.0)), DomainError);
  CHECK(rearrange(StepFunction({1}, {2.0}, 1.0)).tail() == 1.0);
}

TEST_CASE("rearrange matches the distribution-inverse oracle") {
  Rng rng(7);
  for (int c = 0; c < 200; ++c) {
    const StepFunction f = random_step(rng);
    const SingularFunction mu = rearrange(f);
    std::vector<double> cuts(mu.breakpoints());
    for (const Probe& p : partition_probes(cuts)) {
      REQUIRE(mu(p.point) == doctest::Approx(oracle::rearrangement(f, p.point)).epsilon(1e-12));
    }
  }
}

TEST_CASE("dist") {
  const StepFunction f = StepFunction::indicator(3, 2);
  CHECK(dist(f, 1.5) == 3);
  CHECK(dist(f, 2) == 0);
  const SingularFunction mu = SingularFunction::from_widths(std::vector<double>{1, 1, 1}, std::vector<double>{3, 2, 1});
  CHECK(dist(mu, 1.5) == 2);
  CHECK(dist(StepFunction({1}, {3}, 1.0), 0.5) == kInfinity);
  CHECK_THROWS_AS(dist(f, -1), DomainError);

  Rng rng(11);
  for (int c = 0; c < 100; ++c) {
    const StepFunction g = random_step(rng);
    for (double s : {0.0, 0.3, 1.0, 1.7}) CHECK(dist(g, s) == doctest::Approx(oracle::distribution(g, s)));
  }
}

TEST_CASE("dilate") {
  CHECK(dilate(SingularFunction::indicator(1), 2) == SingularFunction::indicator(2));
  const SingularFunction mu = SingularFunction::from_widths(std::vector<double>{2, 2}, std::vector<double>{3, 1});
  CHECK(dilate(mu, 1) == mu);
  CHECK(dilate(mu, 0.5) == SingularFunction::from_widths(std::vector<double>{1, 1}, std::vector<double>{3, 1}));
  CHECK_THROWS_AS(dilate(mu, 0), DomainError);
}

TEST_CASE("norms") {
  const StepNorms a = norms(StepFunction::indicator(3, 2));
  CHECK(a.l0 == 3);
  CHECK(a.linf == 2);
  const StepNorms z = norms(StepFunction());
  CHECK(z.l0 == 0);
  CHECK(z.linf == 0);
  const StepNorms b = norms(unit_widths({1, 0, 2}));
  CHECK(b.l0 == 2);
  CHECK(b.linf == 2);
  CHECK(norms(StepFunction({1}, {3}, 1.0)).l0 == kInfinity);
}

TEST_CASE("add_pointwise") {
  const StepFunction chi = StepFunction::indicator(1);
  CHECK(add_pointwise(chi, chi) == StepFunction::indicator(1, 2));
  const StepFunction f = unit_widths({2, 1});
  CHECK(add_pointwise(f, StepFunction()) == f);
  CHECK(add_pointwise(f, StepFunction::indicator(2, 1)) == unit_widths({3, 2}));
  CHECK(add_pointwise(f, StepFunction::indicator(2, -1)) == StepFunction::indicator(1, 1));
}

TEST_CASE("running_integral") {
  const StepFunction f = unit_widths({3, 1});
  CHECK(running_integral(f, 0) == 0);
  CHECK(running_integral(f, 0.5) == 1.5);
  CHECK(running_integral(f, 2) == 4);
  CHECK(running_integral(f, 10) == 4);
}

TEST_CASE("submajorizes") {
  const SingularFunction ones = SingularFunction::from_widths(std::vector<double>{1, 1}, std::vector<double>{1, 1});
  const SingularFunction two = SingularFunction::indicator(1, 2);
  CHECK(submajorizes(two, ones));
  CHECK_FALSE(submajorizes(ones, two));
  CHECK(submajorizes(ones, ones));

  Rng rng(3);
  for (int c = 0; c < 50; ++c) {
    const SingularFunction mu = random_singular(rng);
    CHECK(submajorizes(mu, mu));
    CHECK(submajorizes(mu.scaled(1.5), mu));
  }
}

TEST_CASE("partition_probes are interior") {
  const std::vector<Probe> probes = partition_probes({3, 1, 1, 2});
  REQUIRE(probes.size() == 4);
  CHECK(probes[0].start == 0);
  CHECK(probes[0].point == 0.5);
  CHECK(probes[3].start == 3);
  CHECK(probes[3].point > 3);
}
