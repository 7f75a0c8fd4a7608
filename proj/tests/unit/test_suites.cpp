#include "doctest.h"
#include "hyper/suites.hpp"

using namespace hyper;

TEST_CASE("identity suites on a small grid") {
  CHECK(power_reduce_suite(3).all_pass());
  const SuiteReport g = garland_suite(2, 1);
  CHECK(g.total > 0);
  CHECK(g.all_pass());
}

TEST_CASE("integrality suite is reproducible") {
  const SuiteReport a = integrality_suite(11, 40), b = integrality_suite(11, 40);
  CHECK(a.all_pass());
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json() != integrality_suite(12, 40).to_json());
}

TEST_CASE("Garland residual in sl2 for r = s = 1") {
  Hyperalgebra H(RootData::build('A', 1), 1, Context::Loop);
  const MultiExp one(1), t = MultiExp::unit(1, 0);
  const GarlandResult g = H.garland_residual(0, 1, 1, one, t);
  CHECK(g.passes);
  CHECK(g.in_raise_ideal);
}
