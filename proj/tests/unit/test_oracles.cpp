#include "doctest.h"
#include "hyper/algebra.hpp"
#include "../oracles.hpp"

using namespace hyper;

TEST_CASE("lambda_expand agrees with the exp series") {
  for (int rank : {1, 2}) {
    Hyperalgebra H(RootData::build('A', rank), 2, Context::Loop);
    for (const MultiExp& f : {MultiExp{1, 0}, MultiExp{1, 1}, MultiExp{2, -1}})
      for (int i = 0; i < rank; ++i)
        for (int r = 0; r <= 5; ++r) {
          CAPTURE(rank);
          CAPTURE(r);
          CHECK(H.lambda_expand(i, f, r) == oracle::exp_series_lambda(H.root_data(), i, f, r));
        }
  }
}

TEST_CASE("Lambda_{1,t,2} in sl2 is (h(t)^2 - h(t^2)) / 2") {
  Hyperalgebra H(RootData::build('A', 1), 1, Context::Current);
  const MultiExp t = MultiExp::unit(1, 0);
  CHECK(H.engine().str(H.lambda_expand(0, t, 2)) == H.engine().str(oracle::exp_series_lambda(H.root_data(), 0, t, 2)));
  CHECK(H.lambda_expand(0, t, 2).size() == 2);
}

TEST_CASE("Weyl characters match pattern counts and Kostant's formula") {
  const auto a1 = RootData::build('A', 1);
  for (int m = 0; m <= 5; ++m) CHECK(weyl_character(*a1, Weight({m})) == oracle::a1_character(m));
  const auto a2 = RootData::build('A', 2);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      const Weight lam({a, b});
      const auto ch = weyl_character(*a2, lam);
      CHECK(ch == oracle::a2_character(a, b));
      CHECK(ch == weyl_character_kostant(*a2, lam));
      long dim = 0;
      for (const auto& [w, k] : ch) dim += k;
      CHECK(mpz_class(dim) == weyl_dimension(*a2, lam));
    }
}
