#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinterp/error.hpp"
#include "kinterp/json_io.hpp"
#include "kinterp/random.hpp"
#include "kinterp/suite.hpp"

using namespace kinterp;

TEST_CASE("step function round trip") {
  Rng rng(1);
  for (int c = 0; c < 20; ++c) {
    const StepFunction f = random_step(rng);
    CHECK(step_from_json(parse_json(to_json(f).dump())) == f);
  }
  const StepFunction canonical = step_from_json(parse_json(R"({"breakpoints":[1,2],"values":[3,3],"tail":0})"));
  CHECK(to_json(canonical).dump() == R"({"breakpoints":[2.0],"values":[3.0],"tail":0.0})");

  CHECK_THROWS_AS(step_from_json(parse_json(R"({"breakpoints":[2,1],"values":[1,1]})")), FormatError);
  CHECK_THROWS_AS(step_from_json(parse_json(R"({"breakpoints":[1],"values":[1,1]})")), FormatError);
  CHECK_THROWS_AS(step_from_json(parse_json(R"({"values":[1]})")), FormatError);
  CHECK_THROWS_AS(step_from_json(parse_json(R"({"breakpoints":[1],"values":["a"]})")), FormatError);
  CHECK_THROWS_AS(parse_json("{"), FormatError);
}

TEST_CASE("matrix round trip") {
  Rng rng(2);
  const TraceMatrix x = random_matrix(rng, 3, 0.25);
  const TraceMatrix back = matrix_from_json(parse_json(to_json(x).dump()));
  CHECK(back.weight() == 0.25);
  CHECK((back.entries() - x.entries()).norm() == 0);

  const TraceMatrix real = matrix_from_json(parse_json(R"({"n":2,"w":1,"re":[[1,2],[3,4]]})"));
  CHECK(real.entries()(1, 0) == Complex(3, 0));
  CHECK_FALSE(to_json(real).contains("im"));

  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n":2,"re":[[1,2]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n":2,"re":[[1,2],[3]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n":1,"w":0,"re":[[1]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n":-1,"re":[]})")), FormatError);
}

TEST_CASE("hom round trip") {
  Rng rng(3);
  const PairHom t = random_hom(rng, 3, 1.0, true);
  const PairHom back = hom_from_json(parse_json(to_json(t).dump()));
  CHECK(back.orthogonal());
  REQUIRE(back.terms().size() == t.terms().size());
  for (std::size_t i = 0; i < t.terms().size(); ++i) {
    CHECK((back.terms()[i].left.entries() - t.terms()[i].left.entries()).norm() == 0);
    CHECK((back.terms()[i].right.entries() - t.terms()[i].right.entries()).norm() == 0);
  }
  CHECK_THROWS_AS(hom_from_json(parse_json(R"({"terms":[]})")), FormatError);
}

TEST_CASE("non-finite numbers") {
  CHECK(number(kInfinity) == "inf");
  CHECK(number(-kInfinity) == "-inf");
  CHECK(to_json(OrbitCheckReport{}).at("worst_margin") == "inf");
}

TEST_CASE("suite report is deterministic") {
  const std::string first = to_json(run_suite({7, std::nullopt})).dump();
  const std::string second = to_json(run_suite({7, std::nullopt})).dump();
  CHECK(first == second);
  CHECK(first != to_json(run_suite({8, std::nullopt})).dump());
  CHECK(run_suite({7, std::nullopt}).pass());
}
