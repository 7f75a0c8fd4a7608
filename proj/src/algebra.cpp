#include "hyper/algebra.hpp"

#include <algorithm>
#include <functional>

namespace hyper {

namespace {

int block_of(GenKind k) {
  switch (k) {
    case GenKind::Lower: return 0;
    case GenKind::Binom:
    case GenKind::Lambda: return 1;
    case GenKind::Raise: return 2;
  }
  return 3;
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

mpq_class inv_factorial(long k) { return mpq_class(1) / mpq_class(factorial(k)); }

}  // namespace

int compare_generators(const Generator& a, const Generator& b, bool ignore_power) {
  if (int c = cmp3(block_of(a.kind), block_of(b.kind))) return c;
  if (a.is_root()) {
    // index order already follows (height, root index)
    if (int c = cmp3(a.index, b.index)) return c;
    if (int c = cmp3(a.mono, b.mono)) return c;
  } else {
    if (int c = cmp3(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
    if (a.kind == GenKind::Lambda)
      if (int c = cmp3(a.mono, b.mono)) return c;
    if (int c = cmp3(a.index, b.index)) return c;
  }
  return ignore_power ? 0 : cmp3(a.power, b.power);
}

int PBWMonomial::degree() const {
  int d = 0;
  for (const auto& g : word)
    if (g.is_root()) d += g.power;
  return d;
}

bool PBWMonomial::has_raise() const {
  return std::any_of(word.begin(), word.end(),
                     [](const Generator& g) { return g.kind == GenKind::Raise; });
}

bool PBWMonomial::has_lambda() const {
  return std::any_of(word.begin(), word.end(),
                     [](const Generator& g) { return g.kind == GenKind::Lambda; });
}

bool PBWLess::operator()(const PBWMonomial& a, const PBWMonomial& b) const {
  const std::size_t n = std::min(a.word.size(), b.word.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_generators(a.word[i], b.word[i])) return c < 0;
  return a.word.size() < b.word.size();
}

AlgebraElement AlgebraElement::identity(Field f) {
  AlgebraElement e(f);
  e.terms.emplace(PBWMonomial{}, Scalar(f, 1L));
  return e;
}

AlgebraElement AlgebraElement::single(Field f, const Generator& g) {
  AlgebraElement e(f);
  e.terms.emplace(PBWMonomial{{g}}, Scalar(f, 1L));
  return e;
}

void AlgebraElement::add(const PBWMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (field != o.field) fail(ErrorCode::FieldMismatch, "adding elements over different fields");
  AlgebraElement r(*this);
  for (const auto& [m, c] : o.terms) r.add(m, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + o.scaled(Scalar(o.field, -1L));
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement r(field);
  for (const auto& [m, v] : terms) r.add(m, v * c);
  return r;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.field != b.field || a.terms.size() != b.terms.size()) return false;
  auto it = b.terms.begin();
  for (const auto& [m, c] : a.terms) {
    if (!(m == it->first) || c != it->second) return false;
    ++it;
  }
  return true;
}

Hyperalgebra::Hyperalgebra(RootDataPtr rd, int nvars, Context ctx)
    : engine_(std::move(rd), nvars, ctx) {}

void Hyperalgebra::validate(const Generator& g) const {
  const RootData& rd = root_data();
  if (g.power < 1) fail(ErrorCode::InvalidArgument, "generator power must be >= 1");
  if (g.mono.n != nvars()) fail(ErrorCode::ContextMismatch, "monomial has wrong variable count");
  if (context() == Context::Current && !g.mono.nonnegative())
    fail(ErrorCode::ContextMismatch, "negative exponent in current-algebra context");
  if (g.is_root()) {
    if (g.index < 0 || g.index >= rd.num_positive_roots())
      fail(ErrorCode::InvalidArgument, "root index out of range");
  } else {
    if (g.index < 0 || g.index >= rd.rank())
      fail(ErrorCode::InvalidArgument, "node index out of range");
    if (g.kind == GenKind::Lambda && g.mono.is_one())
      fail(ErrorCode::InvalidArgument, "Lambda generator needs a monomial different from 1");
    if (g.kind == GenKind::Binom && !g.mono.is_one())
      fail(ErrorCode::InvalidArgument, "binomial generator carries no monomial");
  }
}

OrdElem Hyperalgebra::cartan_element(int i, const MultiExp& c) const {
  return OrdElem{{OrdMono{{LieKey{root_data().cartan_index(i), c}, 1}}, 1}};
}

OrdElem Hyperalgebra::coroot_element(int root, const MultiExp& c) const {
  OrdElem e;
  const auto& co = root_data().coroot(root);
  for (int i = 0; i < root_data().rank(); ++i)
    if (co[i]) ord_add(e, cartan_element(i, c), mpq_class(co[i]));
  return e;
}

OrdElem Hyperalgebra::binom_expand(int i, int k) {
  auto key = std::make_pair(i, k);
  if (auto it = binom_cache_.find(key); it != binom_cache_.end()) return it->second;
  OrdElem cur{{OrdMono{}, 1}};
  const OrdElem h = cartan_element(i, MultiExp(nvars()));
  for (int j = 0; j < k; ++j) {
    OrdElem factor = h;
    ord_add(factor, OrdMono{}, mpq_class(-j));
    cur = engine_.multiply(cur, factor);
  }
  for (auto& [m, c] : cur) c *= inv_factorial(k);
  binom_cache_.emplace(key, cur);
  return cur;
}

namespace {

// r L_r = -sum_{s=1}^r H_s L_{r-s}
std::vector<OrdElem> lambda_series(LieEngine& eng, const std::function<OrdElem(int)>& H, int r) {
  std::vector<OrdElem> L(r + 1);
  L[0] = OrdElem{{OrdMono{}, 1}};
  for (int q = 1; q <= r; ++q) {
    OrdElem acc;
    for (int s = 1; s <= q; ++s) ord_add(acc, eng.multiply(H(s), L[q - s]), mpq_class(-1));
    for (auto& [m, c] : acc) c /= q;
    L[q] = std::move(acc);
  }
  return L;
}

}  // namespace

OrdElem Hyperalgebra::lambda_expand(int i, const MultiExp& f, int r) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "Lambda order must be >= 0");
  if (f.n != nvars()) fail(ErrorCode::ContextMismatch, "monomial has wrong variable count");
  auto key = std::make_tuple(i, f, r);
  if (auto it = lambda_cache_.find(key); it != lambda_cache_.end()) return it->second;
  auto series = lambda_series(
      engine_, [&](int s) { return cartan_element(i, f.scaled(s)); }, r);
  for (int q = 0; q <= r; ++q) lambda_cache_.emplace(std::make_tuple(i, f, q), series[q]);
  return series[r];
}

OrdElem Hyperalgebra::lambda_expand_root(int root, const MultiExp& f, int r) {
  const RootData& rd = root_data();
  if (rd.root_height(root) == 1)
    for (int i = 0; i < rd.rank(); ++i)
      if (rd.root(root)[i]) return lambda_expand(i, f, r);
  return lambda_series(
      engine_, [&](int s) { return coroot_element(root, f.scaled(s)); }, r)[r];
}

OrdElem Hyperalgebra::to_ord(const Generator& g) {
  validate(g);
  const RootData& rd = root_data();
  switch (g.kind) {
    case GenKind::Lower:
      return OrdElem{{OrdMono{{LieKey{rd.lower_index(g.index), g.mono}, g.power}},
                      inv_factorial(g.power)}};
    case GenKind::Raise:
      return OrdElem{{OrdMono{{LieKey{rd.raise_index(g.index), g.mono}, g.power}},
                      inv_factorial(g.power)}};
    case GenKind::Binom: return binom_expand(g.index, g.power);
    case GenKind::Lambda: return lambda_expand(g.index, g.mono, g.power);
  }
  return {};
}

OrdElem Hyperalgebra::cartan_block_poly(const std::vector<Generator>& cartan) {
  OrdElem cur{{OrdMono{}, 1}};
  for (const auto& g : cartan) cur = engine_.multiply(cur, to_ord(g));
  return cur;
}

OrdElem Hyperalgebra::to_ord(const PBWMonomial& m) {
  OrdMono lower, raise;
  std::vector<Generator> cartan;
  mpq_class scale = 1;
  const RootData& rd = root_data();
  for (const auto& g : m.word) {
    validate(g);
    if (g.kind == GenKind::Lower) {
      lower.push_back({LieKey{rd.lower_index(g.index), g.mono}, g.power});
      scale *= inv_factorial(g.power);
    } else if (g.kind == GenKind::Raise) {
      raise.push_back({LieKey{rd.raise_index(g.index), g.mono}, g.power});
      scale *= inv_factorial(g.power);
    } else {
      cartan.push_back(g);
    }
  }
  OrdElem out;
  for (const auto& [cm, c] : cartan_block_poly(cartan)) {
    OrdMono full(lower);
    full.insert(full.end(), cm.begin(), cm.end());
    full.insert(full.end(), raise.begin(), raise.end());
    ord_add(out, full, c * scale);
  }
  return out;
}

OrdElem Hyperalgebra::to_ord(const AlgebraElement& x) {
  OrdElem out;
  DPRational q = lift(x);
  for (const auto& [m, c] : q) ord_add(out, to_ord(m), c);
  return out;
}

std::vector<std::pair<std::vector<Generator>, mpq_class>> Hyperalgebra::cartan_to_dp(OrdElem poly) {
  struct GenVecLess {
    bool operator()(const std::vector<Generator>& a, const std::vector<Generator>& b) const {
      return PBWLess{}(PBWMonomial{a}, PBWMonomial{b});
    }
  };
  std::map<std::vector<Generator>, mpq_class, GenVecLess> out;
  const RootData& rd = root_data();
  while (!poly.empty()) {
    auto best = poly.begin();
    int best_deg = ord_degree(best->first);
    for (auto it = poly.begin(); it != poly.end(); ++it) {
      int d = ord_degree(it->first);
      if (d > best_deg) {
        best = it;
        best_deg = d;
      }
    }
    std::vector<Generator> gens;
    mpq_class lc = 1;
    for (const auto& f : best->first) {
      int i = rd.sub_index(f.key.b);
      if (f.key.m.is_one()) {
        gens.push_back(Generator::binom(i, nvars(), f.exp));
        lc *= inv_factorial(f.exp);
      } else {
        gens.push_back(Generator::lambda(i, f.key.m, f.exp));
        lc *= inv_factorial(f.exp) * (f.exp % 2 ? -1 : 1);
      }
    }
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
      return compare_generators(a, b) < 0;
    });
    mpq_class q = best->second / lc;
    out[gens] += q;
    ord_add(poly, cartan_block_poly(gens), -q);
  }
  std::vector<std::pair<std::vector<Generator>, mpq_class>> result;
  for (auto& [g, c] : out)
    if (c != 0) result.emplace_back(g, c);
  return result;
}

DPRational Hyperalgebra::from_ord(const OrdElem& e) {
  const RootData& rd = root_data();
  const int P = rd.num_positive_roots();
  const int C = P + rd.rank();
  // Group by (lowering part, raising part); collect the Cartan polynomial.
  std::map<std::pair<OrdMono, OrdMono>, OrdElem> groups;
  for (const auto& [m, c] : e) {
    OrdMono lower, cartan, raise;
    for (const auto& f : m) {
      if (f.key.b < P)
        lower.push_back(f);
      else if (f.key.b < C)
        cartan.push_back(f);
      else
        raise.push_back(f);
    }
    ord_add(groups[{lower, raise}], cartan, c);
  }
  DPRational out;
  for (auto& [lr, poly] : groups) {
    const auto& [lower, raise] = lr;
    mpq_class scale = 1;
    std::vector<Generator> head, tail;
    for (const auto& f : lower) {
      head.push_back(Generator::lower(rd.sub_index(f.key.b), f.key.m, f.exp));
      scale *= mpq_class(factorial(f.exp));
    }
    for (const auto& f : raise) {
      tail.push_back(Generator::raise(rd.sub_index(f.key.b), f.key.m, f.exp));
      scale *= mpq_class(factorial(f.exp));
    }
    for (const auto& [cg, c] : cartan_to_dp(poly)) {
      PBWMonomial m;
      m.word = head;
      m.word.insert(m.word.end(), cg.begin(), cg.end());
      m.word.insert(m.word.end(), tail.begin(), tail.end());
      mpq_class v = c * scale;
      auto [it, inserted] = out.try_emplace(m, v);
      if (!inserted) {
        it->second += v;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

AlgebraElement Hyperalgebra::to_field(const DPRational& x, Field f) const {
  AlgebraElement out(f);
  for (const auto& [m, c] : x) out.add(m, hyper::to_field(c, f));
  return out;
}

DPRational Hyperalgebra::lift(const AlgebraElement& x) const {
  DPRational out;
  for (const auto& [m, c] : x.terms)
    out.emplace(m, x.field.is_rational() ? c.rational_value()
                                         : mpq_class(mpz_class(c.residue_value())));
  return out;
}

AlgebraElement Hyperalgebra::pbw_normal_form(const std::vector<Generator>& word, Field f) {
  OrdElem cur{{OrdMono{}, 1}};
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    cur = engine_.multiply(to_ord(*it), cur);
  return to_field(from_ord(cur), f);
}

AlgebraElement Hyperalgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.field != b.field) fail(ErrorCode::FieldMismatch, "multiplying elements over different fields");
  return to_field(from_ord(engine_.multiply(to_ord(a), to_ord(b))), a.field);
}

namespace {

using LPoly = std::map<LambdaProduct, mpq_class>;

LPoly lpoly_mul(const LPoly& a, const LPoly& b) {
  LPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      LambdaProduct m = ma;
      for (auto [s, n] : mb) m[s] += n;
      out[m] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

void lpoly_add(LPoly& a, const LPoly& b, const mpq_class& scale) {
  for (const auto& [m, c] : b) {
    a[m] += c * scale;
    if (a[m] == 0) a.erase(m);
  }
}

}  // namespace

std::map<LambdaProduct, mpq_class> Hyperalgebra::lambda_power_reduce(int i, const MultiExp& f,
                                                                     int k, int r) {
  if (!is_primitive(f)) fail(ErrorCode::NotPrimitive, "monomial " + f.str() + " is not primitive");
  if (k < 1 || r < 1) fail(ErrorCode::InvalidArgument, "power and order must be >= 1");
  const int N = k * r;
  // H_m = h_i (x) f^m as a polynomial in Lambda_{i,f,s}: H_m = -m L_m - sum_{s<m} H_s L_{m-s}.
  std::vector<LPoly> H(N + 1);
  auto single = [](int s) { return LPoly{{LambdaProduct{{s, 1}}, 1}}; };
  for (int m = 1; m <= N; ++m) {
    LPoly h;
    lpoly_add(h, single(m), -m);
    for (int s = 1; s < m; ++s) lpoly_add(h, lpoly_mul(H[s], single(m - s)), -1);
    H[m] = h;
  }
  int jf = 0;
  while (f[jf] == 0) ++jf;
  LPoly out;
  for (const auto& [mono, c] : lambda_expand(i, f.scaled(k), r)) {
    LPoly term{{LambdaProduct{}, c}};
    for (const auto& fac : mono) {
      int M = fac.key.m[jf] / f[jf];
      for (int e = 0; e < fac.exp; ++e) term = lpoly_mul(term, H[M]);
    }
    lpoly_add(out, term, 1);
  }
  return out;
}

OrdElem Hyperalgebra::expand_lambda_products(int i, const MultiExp& f,
                                             const std::map<LambdaProduct, mpq_class>& p) {
  OrdElem out;
  for (const auto& [prod, c] : p) {
    OrdElem cur{{OrdMono{}, 1}};
    for (auto [s, n] : prod)
      for (int e = 0; e < n; ++e) cur = engine_.multiply(cur, lambda_expand(i, f, s));
    ord_add(out, cur, c);
  }
  return out;
}

GarlandResult Hyperalgebra::garland_residual(int root, int r, int s, const MultiExp& a,
                                             const MultiExp& b) {
  if (!(s >= r && r >= 1)) fail(ErrorCode::InvalidArgument, "need s >= r >= 1");
  const RootData& rd = root_data();
  OrdElem lhs = engine_.multiply(to_ord(Generator::raise(root, a, r)),
                                 to_ord(Generator::lower(root, b, s)));
  // X(u) = sum_m (x^- (x) a^m b^{m+1}) u^{m+1}
  auto mul_series = [&](const std::vector<OrdElem>& x, const std::vector<OrdElem>& y) {
    std::vector<OrdElem> z(s + 1);
    for (int p = 0; p <= s; ++p)
      for (int q = 0; p + q <= s; ++q)
        if (!x[p].empty() && !y[q].empty()) ord_add(z[p + q], engine_.multiply(x[p], y[q]));
    return z;
  };
  std::vector<OrdElem> X(s + 1);
  for (int m = 0; m + 1 <= s; ++m) {
    LieKey key{rd.lower_index(root), a.scaled(m) + b.scaled(m + 1)};
    engine_.check_key(key);
    X[m + 1] = OrdElem{{OrdMono{{key, 1}}, 1}};
  }
  std::vector<OrdElem> Xp(s + 1);
  Xp[0] = OrdElem{{OrdMono{}, 1}};
  for (int j = 0; j < s - r; ++j) Xp = mul_series(Xp, X);
  const mpq_class fact = inv_factorial(s - r);
  for (auto& c : Xp)
    for (auto& [m, v] : c) v *= fact;
  const MultiExp ab = a + b;
  std::vector<OrdElem> Lam(s + 1);
  for (int j = 0; j <= s; ++j) Lam[j] = lambda_expand_root(root, ab, j);
  const mpq_class sign = r % 2 ? -1 : 1;

  OrdElem coeff = mul_series(Xp, Lam)[s];
  OrdElem d1 = lhs;
  ord_add(d1, coeff, -sign);

  GarlandResult res;
  res.residual = to_field(from_ord(d1), Field::rationals());
  res.in_raise_ideal = std::all_of(res.residual.terms.begin(), res.residual.terms.end(),
                                   [](const auto& t) { return t.first.has_raise(); });
  res.current_applicable =
      context() == Context::Current && ab.nonnegative() && !ab.is_one();
  if (res.current_applicable) {
    OrdElem d2 = lhs;
    ord_add(d2, Xp[s], -sign);
    res.residual_current = to_field(from_ord(d2), Field::rationals());
    res.current_classification =
        std::all_of(res.residual_current.terms.begin(), res.residual_current.terms.end(),
                    [](const auto& t) { return t.first.has_raise() || t.first.has_lambda(); });
    res.passes = res.in_raise_ideal && res.current_classification;
    res.classification = res.passes ? "in U.(U(n+[n])^0 + U(h[n]_0)^0)" : "violated";
  } else {
    res.passes = res.in_raise_ideal;
    res.classification = res.passes ? "in U.U(n+)^0" : "violated";
  }
  return res;
}

std::map<PBWMonomial, mpz_class, PBWLess> Hyperalgebra::integral_coordinates(
    const AlgebraElement& x) const {
  if (!x.field.is_rational())
    fail(ErrorCode::FieldMismatch, "integral_coordinates needs a rational element");
  std::map<PBWMonomial, mpz_class, PBWLess> out;
  for (const auto& [m, c] : x.terms) {
    const mpq_class& q = c.rational_value();
    if (q.get_den() != 1)
      fail(ErrorCode::NonIntegral, "coefficient " + q.get_str() + " of " + str(m) +
                                       " is not an integer");
    out.emplace(m, q.get_num());
  }
  return out;
}

AlgebraElement Hyperalgebra::specialize(const AlgebraElement& x, std::uint32_t p) const {
  Field f = Field::prime(p);
  AlgebraElement out(f);
  for (const auto& [m, c] : integral_coordinates(x)) out.add(m, Scalar(f, c));
  return out;
}

std::string Hyperalgebra::str(const Generator& g) const {
  const RootData& rd = root_data();
  switch (g.kind) {
    case GenKind::Lower:
    case GenKind::Raise: {
      std::string s = (g.kind == GenKind::Lower ? "xm[" : "xp[") + rd.root_name(g.index) +
                      "](" + g.mono.str() + ")";
      if (g.power != 1) s += "^(" + std::to_string(g.power) + ")";
      return s;
    }
    case GenKind::Binom:
      return "hbin[" + std::to_string(g.index + 1) + "," + std::to_string(g.power) + "]";
    case GenKind::Lambda:
      return "L[" + std::to_string(g.index + 1) + "," + g.mono.str() + "," +
             std::to_string(g.power) + "]";
  }
  return "?";
}

std::string Hyperalgebra::str(const PBWMonomial& m) const {
  if (m.word.empty()) return "1";
  std::string s;
  for (const auto& g : m.word) {
    if (!s.empty()) s += ' ';
    s += str(g);
  }
  return s;
}

std::string Hyperalgebra::str(const AlgebraElement& x) const {
  if (x.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : x.terms) {
    bool neg = false;
    std::string mag;
    if (x.field.is_rational()) {
      mpq_class q = c.rational_value();
      neg = q < 0;
      mag = mpq_class(abs(q)).get_str();
    } else {
      mag = c.str();
    }
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (m.word.empty())
      s += mag;
    else if (mag == "1")
      s += str(m);
    else
      s += mag + " " + str(m);
  }
  return s;
}

}  // namespace hyper
