#include <doctest.h>

#include "segc/error.hpp"
#include "segc/perm.hpp"

using namespace segc;

TEST_CASE("cycle parsing") {
  auto gens = parse_cycle_generators("(1 2 3),(1 2)");
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].degree() == 3);
  CHECK(gens[0](0) == 1);
  CHECK(gens[0](2) == 0);
  CHECK(gens[1](0) == 1);
  CHECK(gens[1](2) == 2);

  CHECK(parse_cycle_generators("").empty());
  CHECK(parse_cycle_generators("  ").empty());

  // juxtaposed cycles compose left to right
  auto prod = parse_cycle_generators("(1 2)(2 3)");
  REQUIRE(prod.size() == 1);
  CHECK(prod[0](0) == 2);  // 1 -> 2 -> 3 in 1-based terms

  CHECK_THROWS_AS(parse_cycle_generators("(1 2"), Error);
  CHECK_THROWS_AS(parse_cycle_generators("(1 1)"), Error);
  CHECK_THROWS_AS(parse_cycle_generators("(0 1)"), Error);
  CHECK_THROWS_AS(parse_cycle_generators("(a b)"), Error);
}

TEST_CASE("composition, inverse, order") {
  auto gens = parse_cycle_generators("(1 2 3),(1 2)");
  Perm a = gens[0], b = gens[1];
  CHECK((a * a.inverse()).is_identity());
  CHECK((a * b) != (b * a));
  CHECK(a.order() == 3);
  CHECK(b.order() == 2);
  CHECK((a * b).order() == 2);
  CHECK(cycle_string(a) == "(1 2 3)");
  CHECK(cycle_string(Perm::identity(4)) == "()");
}
