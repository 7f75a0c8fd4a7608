#include "doctest.h"
#include "hyper/linalg.hpp"

using namespace hyper;

namespace {

Matrix from_ints(Field f, std::vector<std::vector<long>> rows) {
  Matrix m(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar(f, rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("char_poly matches the Leibniz determinant on a 3x3 example") {
  Field q = Field::rationals();
  Matrix a = from_ints(q, {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  auto c = char_poly(a);
  // det(xI - A) = x^3 - 9x^2 + 24x - 18
  REQUIRE(c.size() == 4);
  CHECK(c[0] == Scalar(q, -18L));
  CHECK(c[1] == Scalar(q, 24L));
  CHECK(c[2] == Scalar(q, -9L));
  CHECK(c[3] == Scalar(q, 1L));
  CHECK(determinant(a) == Scalar(q, 18L));
}

TEST_CASE("rational roots of a polynomial with repeated and fractional roots") {
  Field q = Field::rationals();
  // (x - 3)^2 (2x + 5) (x) = 2x^4 - 7x^3 - 12x^2 + 45x
  std::vector<Scalar> c{Scalar(q, 0L), Scalar(q, 45L), Scalar(q, -12L), Scalar(q, -7L), Scalar(q, 2L)};
  auto r = poly_roots(c);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == Scalar::rational(-5, 2));
  CHECK(r[1] == Scalar(q, 0L));
  CHECK(r[2] == Scalar(q, 3L));
  CHECK(root_multiplicity(c, Scalar(q, 3L)) == 2);
}

TEST_CASE("roots over F_7 and kernel dimension") {
  Field f = Field::prime(7);
  std::vector<Scalar> c{Scalar(f, 6L), Scalar(f, 0L), Scalar(f, 1L)};  // x^2 - 1
  auto r = poly_roots(c);
  REQUIRE(r.size() == 2);
  CHECK(r[0].residue_value() == 1);
  CHECK(r[1].residue_value() == 6);
  Matrix m = from_ints(f, {{1, 2, 3}, {2, 4, 6}});
  CHECK(kernel(m).size() == 2);
  CHECK(rank(m) == 1);
}

TEST_CASE("echelon space reduces and inserts") {
  Field q = Field::rationals();
  EchelonSpace e(q);
  CHECK(e.insert({{0, Scalar(q, 1L)}, {2, Scalar(q, 1L)}}));
  CHECK(e.insert({{0, Scalar(q, 1L)}, {1, Scalar(q, 1L)}}));
  CHECK_FALSE(e.insert({{1, Scalar(q, 1L)}, {2, Scalar(q, -1L)}}));
  auto r = e.reduce({{0, Scalar(q, 2L)}});
  REQUIRE(r.size() == 1);
  CHECK(r.begin()->first == 2);
  CHECK(r.begin()->second == Scalar(q, -2L));
}
