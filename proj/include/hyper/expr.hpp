#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyper/algebra.hpp"

namespace hyper {

struct Expr;

/// One factor of a term. For xp/xm the first ^(k) is the divided-power order;
/// any further ^(k), and every ^(k) on other atoms, is an ordinary power.
struct Atom {
  enum class Kind { Raise, Lower, Binom, Lambda, Cartan, Group };
  Kind kind = Kind::Lower;
  std::vector<int> root;  // simple-root coefficients for xp/xm
  int index = 0;          // 1-based node for hbin, L, h
  MultiExp mono;
  int k = 1;              // hbin order or L degree
  int dp = 1;
  std::vector<int> powers;
  std::shared_ptr<const Expr> group;
};

struct Term {
  bool negative = false;
  mpq_class scalar = 1;
  bool explicit_scalar = false;
  std::vector<Atom> factors;
};

struct Expr {
  std::vector<Term> terms;
};

/// expr := ['-'] term (('+'|'-') term)*; term := scalar? factor*; factor := gen | '(' expr ')' | factor '^' '(' int ')'
/// gen := xp[root](mono) | xm[root](mono) | hbin[i,k] | L[i,mono,r] | h[i](mono)
Expr parse_expr(std::string_view text, int nvars);
/// "1" or a product like t1^2*t2^-1.
MultiExp parse_mono(std::string_view text, int nvars);
std::string print_expr(const Expr& e);
AlgebraElement evaluate(const Expr& e, Hyperalgebra& alg, Field f);

}  // namespace hyper
