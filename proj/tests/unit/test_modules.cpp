#include "doctest.h"
#include "hyper/json_io.hpp"

using namespace hyper;

namespace {

const RootDataPtr A1 = RootData::build('A', 1);
const RootDataPtr A2 = RootData::build('A', 2);
const Field Q = Field::rationals();

EvalPoint pt(std::vector<int> a, Field f = Field::rationals()) {
  EvalPoint p;
  for (int x : a) p.a.push_back(to_field(mpq_class(x), f));
  return p;
}

}  // namespace

TEST_CASE("finite-type Weyl modules have the Weyl dimension") {
  for (int m = 0; m <= 4; ++m) CHECK(construct_weyl(A1, Weight({m}), Variant::FiniteType, 1, Q)->dim() == m + 1);
  CHECK(construct_weyl(A2, Weight({1, 1}), Variant::FiniteType, 1, Q)->dim() == 8);
  CHECK(construct_weyl(A2, Weight({2, 0}), Variant::FiniteType, 1, Field::prime(5))->dim() == 6);
}

TEST_CASE("graded sl2 Weyl modules") {
  for (int m = 0; m <= 3; ++m) CHECK(construct_weyl(A1, Weight({m}), Variant::Graded, 1, Q)->dim() == (1 << m));
  CHECK(construct_weyl(A1, Weight({1}), Variant::Graded, 2, Q)->dim() == 2);
  CHECK(construct_weyl(A1, Weight({2}), Variant::Graded, 2, Q)->dim() == 5);
}

TEST_CASE("loop Weyl modules and their Drinfeld polynomials") {
  const auto w = construct_weyl_loop(A1, 1, {{Weight({2}), pt({3})}}, Q);
  CHECK(w->dim() == 4);
  CHECK(extract_drinfeld(*w, w->cyclic_vector).str() == "w[1,1]=1 + -6u^1 + 9u^2");
  const auto two = construct_weyl_loop(A1, 1, {{Weight({1}), pt({1})}, {Weight({1}), pt({2})}}, Q);
  CHECK(two->dim() == 4);
  CHECK(extract_drinfeld(*two, two->cyclic_vector) ==
        LWeight::from_points(Q, 1, 1, {{Weight({1}), pt({1})}, {Weight({1}), pt({2})}}));
}

TEST_CASE("evaluation modules") {
  const Field F7 = Field::prime(7);
  const auto v = evaluation_module(A2, Weight({1, 1}), pt({2, 3}, F7), EvalBase::WeylOfG, F7);
  CHECK(v->dim() == 8);
  CHECK(extract_drinfeld(*v, v->cyclic_vector) == LWeight::from_points(F7, 2, 2, {{Weight({1, 1}), pt({2, 3}, F7)}}));
  CHECK(verify_fdprop(*v, v->cyclic_vector, 1).all_pass());
  const auto s = direct_sum(v, v);
  CHECK(s->dim() == 16);
}

TEST_CASE("irreducible quotient in positive characteristic") {
  const Field F5 = Field::prime(5);
  const auto w = construct_weyl(A1, Weight({5}), Variant::FiniteType, 1, F5);
  CHECK(w->dim() == 6);
  CHECK(irreducible_quotient(w)->dim() == 2);
  CHECK(irreducible_quotient(construct_weyl(A1, Weight({4}), Variant::FiniteType, 1, F5))->dim() == 5);
}

TEST_CASE("module JSON round trip keeps the digest") {
  const auto w = construct_weyl(A2, Weight({1, 0}), Variant::Graded, 2, Q);
  const json j = to_json(*w);
  const auto back = module_from_json(j);
  CHECK(back->dim() == w->dim());
  CHECK(to_json(*back) == j);
  CHECK(canonical_dump(to_json(*back)) == canonical_dump(j));
  CHECK(character(*back) == character(*w));

  json bad = j;
  bad["dim"] = w->dim() + 1;
  CHECK_THROWS_AS(module_from_json(bad), Error);
}

TEST_CASE("pullback of a loop module satisfies the graded relations") {
  const EvalPoint a = pt({1, 2});
  const auto loop = construct_weyl_loop(A1, 2, {{Weight({2}), a}}, Q);
  const auto pb = pullback_phi(loop, a);
  const auto r = check_graded_weyl_relations(*pb, pb->cyclic_vector, 2);
  CHECK(r.all_pass());
  CHECK(pb->dim() <= construct_weyl(A1, Weight({2}), Variant::Graded, 2, Q)->dim());
}

TEST_CASE("scalar and config JSON") {
  CHECK(scalar_from_json(to_json(Scalar(Field::prime(7), 3))) == Scalar(Field::prime(7), 3));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  RunConfig c;
  c.variant = "sideways";
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("Drinfeld polynomials survive a JSON reload") {
  const Field F7 = Field::prime(7);
  const std::vector<std::pair<Weight, EvalPoint>> factors{{Weight({1, 0}), pt({2, 3}, F7)},
                                                         {Weight({0, 1}), pt({5, 1}, F7)}};
  const auto w = construct_weyl_loop(A2, 2, factors, F7);
  const auto back = module_from_json(to_json(*w));
  CHECK(extract_drinfeld(*back, back->cyclic_vector) == LWeight::from_points(F7, 2, 2, factors));
}
