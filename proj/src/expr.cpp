#include "hyper/expr.hpp"

#include <cctype>

namespace hyper {

namespace {

class Parser {
 public:
  Parser(std::string_view s, int nvars) : s_(s), nvars_(nvars) {}

  Expr run() {
    Expr e = expr();
    finish();
    return e;
  }

  MultiExp run_mono() {
    MultiExp m = mono();
    finish();
    return m;
  }

 private:
  void finish() {
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  [[noreturn]] void error(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(line, col, msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip();
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      pos_ = start;
      error("expected an integer");
    }
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000000L) error("integer too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  mpz_class big_integer() {
    skip();
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (digits.empty()) error("expected an integer");
    return mpz_class(digits);
  }

  Expr expr() {
    Expr e;
    bool negative = accept('-');
    for (;;) {
      Term t = term();
      t.negative = negative;
      e.terms.push_back(std::move(t));
      if (accept('+'))
        negative = false;
      else if (accept('-'))
        negative = true;
      else
        break;
    }
    return e;
  }

  bool starts_factor() {
    const char c = peek();
    return c == '(' || c == 'x' || c == 'h' || c == 'L';
  }

  Term term() {
    Term t;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num = big_integer(), den = 1;
      if (accept('/')) {
        den = big_integer();
        if (den == 0) error("zero denominator");
      }
      t.scalar = mpq_class(num, den);
      t.scalar.canonicalize();
      t.explicit_scalar = true;
    }
    while (starts_factor()) {
      t.factors.push_back(factor());
      accept('*');
    }
    if (!t.explicit_scalar && t.factors.empty()) error("expected a term");
    return t;
  }

  Atom factor() {
    Atom a = atom();
    bool first = true;
    while (accept('^')) {
      const bool paren = accept('(');
      const long k = integer();
      if (paren) expect(')');
      if (k < 0) error("negative power");
      const bool is_root = a.kind == Atom::Kind::Lower || a.kind == Atom::Kind::Raise;
      if (is_root && first)
        a.dp = static_cast<int>(k);
      else
        a.powers.push_back(static_cast<int>(k));
      first = false;
    }
    return a;
  }

  Atom atom() {
    Atom a;
    if (accept('(')) {
      a.kind = Atom::Kind::Group;
      a.group = std::make_shared<const Expr>(expr());
      expect(')');
      return a;
    }
    if (accept("xp[") || accept("xm[")) {
      a.kind = s_[pos_ - 2] == 'p' ? Atom::Kind::Raise : Atom::Kind::Lower;
      a.root = root();
      expect(']');
      expect('(');
      a.mono = mono();
      expect(')');
      return a;
    }
    if (accept("hbin[")) {
      a.kind = Atom::Kind::Binom;
      a.index = node();
      expect(',');
      a.k = static_cast<int>(integer());
      if (a.k < 0) error("negative binomial order");
      expect(']');
      return a;
    }
    if (accept("h[")) {
      a.kind = Atom::Kind::Cartan;
      a.index = node();
      expect(']');
      expect('(');
      a.mono = mono();
      expect(')');
      return a;
    }
    if (accept("L[")) {
      a.kind = Atom::Kind::Lambda;
      a.index = node();
      expect(',');
      a.mono = mono();
      expect(',');
      a.k = static_cast<int>(integer());
      if (a.k < 0) error("negative Lambda degree");
      expect(']');
      return a;
    }
    error("expected a generator");
  }

  int node() {
    const long i = integer();
    if (i < 1) error("node index must be positive");
    return static_cast<int>(i);
  }

  std::vector<int> root() {
    std::vector<int> out;
    do {
      long c = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) c = integer();
      expect('a');
      const int i = node();
      if (static_cast<int>(out.size()) < i) out.resize(i, 0);
      out[i - 1] += static_cast<int>(c);
    } while (accept('+'));
    return out;
  }

  MultiExp mono() {
    MultiExp m(nvars_);
    if (accept('1')) return m;
    do {
      expect('t');
      const long j = integer();
      if (j < 1 || j > nvars_) error("variable t" + std::to_string(j) + " outside t1..t" + std::to_string(nvars_));
      long e = 1;
      if (accept('^')) {
        const bool paren = accept('(');
        e = integer();
        if (paren) expect(')');
      }
      m[static_cast<int>(j) - 1] = static_cast<std::int16_t>(m[static_cast<int>(j) - 1] + e);
    } while (accept('*'));
    return m;
  }

  std::string_view s_;
  int nvars_;
  std::size_t pos_ = 0;
};

std::string root_str(const std::vector<int>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (!s.empty()) s += '+';
    if (r[i] != 1) s += std::to_string(r[i]);
    s += "a" + std::to_string(i + 1);
  }
  return s;
}

std::string atom_str(const Atom& a) {
  std::string s;
  switch (a.kind) {
    case Atom::Kind::Raise:
    case Atom::Kind::Lower:
      s = (a.kind == Atom::Kind::Lower ? "xm[" : "xp[") + root_str(a.root) + "](" + a.mono.str() + ")";
      if (a.dp != 1 || !a.powers.empty()) s += "^(" + std::to_string(a.dp) + ")";
      break;
    case Atom::Kind::Binom:
      s = "hbin[" + std::to_string(a.index) + "," + std::to_string(a.k) + "]";
      break;
    case Atom::Kind::Lambda:
      s = "L[" + std::to_string(a.index) + "," + a.mono.str() + "," + std::to_string(a.k) + "]";
      break;
    case Atom::Kind::Cartan:
      s = "h[" + std::to_string(a.index) + "](" + a.mono.str() + ")";
      break;
    case Atom::Kind::Group:
      s = "(" + print_expr(*a.group) + ")";
      break;
  }
  for (int k : a.powers) s += "^(" + std::to_string(k) + ")";
  return s;
}

int find_root(const RootData& rd, const std::vector<int>& coeffs) {
  for (int b = 0; b < rd.num_positive_roots(); ++b) {
    bool same = static_cast<int>(coeffs.size()) <= rd.rank();
    for (int i = 0; same && i < rd.rank(); ++i)
      same = rd.root(b)[i] == (i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0);
    if (same) return b;
  }
  fail(ErrorCode::InvalidArgument, root_str(coeffs) + " is not a positive root of " + rd.name());
}

AlgebraElement power(Hyperalgebra& alg, const AlgebraElement& x, int k, Field f) {
  AlgebraElement r = AlgebraElement::identity(f);
  for (int i = 0; i < k; ++i) r = alg.multiply(r, x);
  return r;
}

AlgebraElement atom_value(const Atom& a, Hyperalgebra& alg, Field f) {
  const RootData& rd = alg.root_data();
  auto gen = [&](const Generator& g) {
    alg.validate(g);
    return AlgebraElement::single(f, g);
  };
  auto node = [&](int i) {
    if (i > rd.rank()) fail(ErrorCode::InvalidArgument, "node " + std::to_string(i) + " exceeds the rank");
    return i - 1;
  };
  auto mono = [&](const MultiExp& m) {
    if (m.n != alg.nvars()) fail(ErrorCode::InvalidArgument, "monomial has the wrong number of variables");
    return m;
  };
  AlgebraElement x(f);
  switch (a.kind) {
    case Atom::Kind::Raise:
      x = a.dp == 0 ? AlgebraElement::identity(f) : gen(Generator::raise(find_root(rd, a.root), mono(a.mono), a.dp));
      break;
    case Atom::Kind::Lower:
      x = a.dp == 0 ? AlgebraElement::identity(f) : gen(Generator::lower(find_root(rd, a.root), mono(a.mono), a.dp));
      break;
    case Atom::Kind::Binom:
      x = a.k == 0 ? AlgebraElement::identity(f) : gen(Generator::binom(node(a.index), alg.nvars(), a.k));
      break;
    case Atom::Kind::Lambda:
      if (mono(a.mono).is_one()) fail(ErrorCode::InvalidArgument, "L needs a nonconstant monomial");
      x = a.k == 0 ? AlgebraElement::identity(f) : gen(Generator::lambda(node(a.index), a.mono, a.k));
      break;
    case Atom::Kind::Cartan:
      // h (x) c = -Lambda_{c,1}; h (x) 1 = binom(h, 1)
      if (mono(a.mono).is_one())
        x = gen(Generator::binom(node(a.index), alg.nvars(), 1));
      else
        x = gen(Generator::lambda(node(a.index), a.mono, 1)).scaled(Scalar(f, -1L));
      break;
    case Atom::Kind::Group:
      x = evaluate(*a.group, alg, f);
      break;
  }
  for (int k : a.powers) x = power(alg, x, k, f);
  return x;
}

}  // namespace

Expr parse_expr(std::string_view text, int nvars) {
  if (nvars < 0 || nvars > kMaxVars) fail(ErrorCode::InvalidArgument, "unsupported number of variables");
  return Parser(text, nvars).run();
}

MultiExp parse_mono(std::string_view text, int nvars) {
  if (nvars < 0 || nvars > kMaxVars) fail(ErrorCode::InvalidArgument, "unsupported number of variables");
  return Parser(text, nvars).run_mono();
}

std::string print_expr(const Expr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const Term& t = e.terms[i];
    if (i == 0)
      s += t.negative ? "-" : "";
    else
      s += t.negative ? " - " : " + ";
    std::string body;
    if (t.factors.empty() || t.scalar != 1) body = t.scalar.get_str();
    for (const auto& a : t.factors) {
      if (!body.empty()) body += ' ';
      body += atom_str(a);
    }
    s += body;
  }
  return s;
}

AlgebraElement evaluate(const Expr& e, Hyperalgebra& alg, Field f) {
  AlgebraElement out(f);
  for (const auto& t : e.terms) {
    AlgebraElement x = AlgebraElement::identity(f);
    for (const auto& a : t.factors) x = alg.multiply(x, atom_value(a, alg, f));
    const Scalar c = to_field(t.negative ? mpq_class(-t.scalar) : t.scalar, f);
    out = out + x.scaled(c);
  }
  return out;
}

}  // namespace hyper
