#include "doctest.h"
#include "hyper/algebra.hpp"

using namespace hyper;

namespace {

Hyperalgebra make(int rank, int n, Context ctx) {
  return Hyperalgebra(RootData::build('A', rank), n, ctx);
}

}  // namespace

TEST_CASE("commutator of raising and lowering in sl2") {
  auto H = make(1, 1, Context::Current);
  MultiExp one(1), t = MultiExp::unit(1, 0);
  auto x = H.pbw_normal_form({Generator::raise(0, one), Generator::lower(0, t)}, Field::rationals());
  CHECK(H.str(x) == "xm[a1](t1) xp[a1](1) - L[1,t1,1]" );
}
