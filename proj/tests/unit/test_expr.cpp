#include <fstream>
#include <random>

#include "doctest.h"
#include "hyper/expr.hpp"

using namespace hyper;

TEST_CASE("divided power of a lowering generator") {
  Expr e = parse_expr("xm[a1](t1)^(2)", 1);
  REQUIRE(e.terms.size() == 1);
  REQUIRE(e.terms[0].factors.size() == 1);
  const Atom& a = e.terms[0].factors[0];
  CHECK(a.kind == Atom::Kind::Lower);
  CHECK(a.root == std::vector<int>{1});
  CHECK(a.mono == MultiExp{1});
  CHECK(a.dp == 2);
  CHECK(a.powers.empty());
}

TEST_CASE("unterminated monomial reports the column") {
  try {
    parse_expr("xm[a1](t1", 1);
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 10);
  }
}

TEST_CASE("errors on later lines carry the line number") {
  try {
    parse_expr("xm[a1](t1)\n + hbin[1 2]", 1);
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_expr("xm[a1](t3)", 2), SyntaxError);
  CHECK_THROWS_AS(parse_expr("xm[a1](t1) +", 1), SyntaxError);
  CHECK_THROWS_AS(parse_expr("1/0", 1), SyntaxError);
}

TEST_CASE("golden corpus prints canonically and is a fixed point") {
  std::ifstream in(std::string(HYPER_TEST_DATA) + "/expr_corpus.tsv");
  REQUIRE(in.good());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string input = line.substr(0, tab), canonical = line.substr(tab + 1);
    CHECK(print_expr(parse_expr(input, 2)) == canonical);
    CHECK(print_expr(parse_expr(canonical, 2)) == canonical);
    ++count;
  }
  CHECK(count == 50);
}

TEST_CASE("normal forms reparse to the same element") {
  for (Context ctx : {Context::Current, Context::Loop})
    for (Field f : {Field::rationals(), Field::prime(5)}) {
      Hyperalgebra alg(RootData::build('A', 2), 2, ctx);
      std::mt19937 rng(11);
      const int lo = ctx == Context::Loop ? -1 : 0;
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<Generator> word;
        const int len = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < len; ++k) {
          MultiExp s(2);
          for (int j = 0; j < 2; ++j) s[j] = static_cast<std::int16_t>(lo + static_cast<int>(rng() % 3));
          const int root = static_cast<int>(rng() % 3), power = 1 + static_cast<int>(rng() % 2);
          switch (rng() % 3) {
            case 0: word.push_back(Generator::lower(root, s, power)); break;
            case 1: word.push_back(Generator::raise(root, s, power)); break;
            default:
              if (s.is_one()) s[0] = 1;
              word.push_back(Generator::lambda(static_cast<int>(rng() % 2), s, power));
          }
        }
        const AlgebraElement x = alg.pbw_normal_form(word, f);
        const std::string s = alg.str(x);
        const Expr e = parse_expr(s, 2);
        CHECK(print_expr(e) == s);
        CHECK(evaluate(e, alg, f) == x);
      }
    }
}

TEST_CASE("h atoms evaluate through Lambda and binomials") {
  Hyperalgebra alg(RootData::build('A', 1), 1, Context::Current);
  const Field q = Field::rationals();
  CHECK(alg.str(evaluate(parse_expr("h[1](t1)", 1), alg, q)) == "-L[1,t1,1]");
  CHECK(alg.str(evaluate(parse_expr("h[1](1)", 1), alg, q)) == "hbin[1,1]");
  CHECK(alg.str(evaluate(parse_expr("xp[a1](1) xm[a1](t1)", 1), alg, q)) ==
        "xm[a1](t1) xp[a1](1) - L[1,t1,1]");
  CHECK_THROWS_AS(evaluate(parse_expr("xm[a1+a2](1)", 1), alg, q), Error);
}
