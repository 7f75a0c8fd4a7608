#include <algorithm>
#include <functional>
#include <set>

#include "hyper/modules.hpp"

namespace hyper {

namespace {

class FnSource : public ActionSource {
 public:
  explicit FnSource(std::function<Matrix(const Generator&)> f) : f_(std::move(f)) {}
  Matrix matrix(const Generator& g) const override { return f_(g); }

 private:
  std::function<Matrix(const Generator&)> f_;
};

bool all_zero(const std::vector<Scalar>& x) {
  return std::all_of(x.begin(), x.end(), [](const Scalar& c) { return c.is_zero(); });
}

std::vector<Scalar> axpy_dense(std::vector<Scalar> y, const Scalar& a, const std::vector<Scalar>& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

/// Divided-power orders that generate: 1, p, p^2, ... up to cap (only 1 over Q).
std::vector<int> generating_powers(Field f, int cap) {
  std::vector<int> out{1};
  if (!f.is_rational())
    for (long q = f.characteristic(); q <= cap; q *= f.characteristic()) out.push_back(static_cast<int>(q));
  return out;
}

/// Monomials with entries in [lo, hi]^n, in lexicographic order.
std::vector<MultiExp> monomial_box(int n, int lo, int hi) {
  std::vector<MultiExp> out;
  MultiExp s(n);
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      out.push_back(s);
      return;
    }
    for (int e = lo; e <= hi; ++e) {
      s[j] = static_cast<std::int16_t>(e);
      rec(j + 1);
    }
    s[j] = 0;
  };
  rec(0);
  return out;
}

Matrix matrix_power(const Matrix& a, int k) {
  Matrix r = Matrix::identity(a.field(), a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Generators exported by loop-type modules: simple root vectors at 1 and t_j^{+-1}.
std::vector<Generator> loop_generators(const RootData& rd, int n, Field f, int cap, bool loop) {
  std::vector<MultiExp> near{MultiExp(n)};
  for (int j = 0; j < n; ++j) {
    near.push_back(MultiExp::unit(n, j));
    if (loop) near.push_back(-MultiExp::unit(n, j));
  }
  std::vector<Generator> out;
  const auto powers = generating_powers(f, cap);
  for (int i = 0; i < rd.rank(); ++i) {
    const int b = rd.simple_root_index(i);
    for (const auto& c : near)
      for (int k : powers) {
        out.push_back(Generator::lower(b, c, k));
        out.push_back(Generator::raise(b, c, k));
      }
    for (int k : powers) out.push_back(Generator::binom(i, n, k));
    for (const auto& c : near)
      if (!c.is_one())
        for (int k : powers) out.push_back(Generator::lambda(i, c, k));
  }
  std::sort(out.begin(), out.end(),
            [](const Generator& a, const Generator& b) { return compare_generators(a, b) < 0; });
  return out;
}

void require_highest(const ModuleRep& m, int v) {
  if (v < 0 || v >= m.dim()) fail(ErrorCode::InvalidArgument, "vector index out of range");
  const auto x = m.unit(v);
  const bool loop = m.context == Context::Loop;
  for (int b = 0; b < m.rd->num_positive_roots(); ++b)
    for (const auto& s : monomial_box(m.nvars, loop ? -1 : 0, 1))
      if (!all_zero(m.action(Generator::raise(b, s, 1)).apply(x)))
        fail(ErrorCode::NotHighestLWeight, "raising operators do not kill the vector");
}

Scalar eigenvalue_on(const ModuleRep& m, int v, const Generator& g) {
  const auto y = m.action(g).apply(m.unit(v));
  for (int j = 0; j < m.dim(); ++j)
    if (j != v && !y[j].is_zero())
      fail(ErrorCode::NotHighestLWeight, "vector is not an eigenvector of " + std::to_string(g.index));
  return y[v];
}

}  // namespace

bool FdPropReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const FdPropEntry& e) { return e.pass; });
}

int FdPropReport::failures() const {
  return static_cast<int>(
      std::count_if(entries.begin(), entries.end(), [](const FdPropEntry& e) { return !e.pass; }));
}

bool GradedRelationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const FdPropEntry& e) { return e.pass; });
}

ModulePtr evaluation_module(RootDataPtr rd, const Weight& lam, const EvalPoint& a, EvalBase base,
                            Field f) {
  const int n = static_cast<int>(a.a.size());
  if (n < 1) fail(ErrorCode::InvalidArgument, "evaluation point needs at least one coordinate");
  for (const auto& x : a.a) {
    if (x.field() != f) fail(ErrorCode::FieldMismatch, "point lies in a different field");
    if (x.is_zero()) fail(ErrorCode::ZeroEvalPoint, "evaluation point has a zero entry");
  }
  ModulePtr b0 = construct_weyl(rd, lam, Variant::FiniteType, 0, f);
  if (base == EvalBase::IrreducibleOfG) b0 = irreducible_quotient(b0);
  auto m = std::make_shared<ModuleRep>();
  m->field = f;
  m->rd = rd;
  m->nvars = n;
  m->context = Context::Loop;
  m->variant = Variant::Loop;
  m->kind = "evaluation";
  m->highest = lam;
  m->basis_labels = b0->basis_labels;
  m->weights = b0->weights;
  m->cyclic_vector = b0->cyclic_vector;
  m->certificate = b0->certificate;
  m->certificate.relations.push_back("generators act through ev_a at a = " + a.str());
  m->exported = loop_generators(*rd, n, f, rd->pair(lam, rd->theta()) + 1, true);
  m->set_source(std::make_shared<FnSource>([b0, a, n](const Generator& g) {
    if (g.mono.n != n) fail(ErrorCode::InvalidArgument, "generator has the wrong number of variables");
    const Scalar c = eval_monomial(g.mono, a.a);
    switch (g.kind) {
      case GenKind::Lower:
      case GenKind::Raise:
        return b0->action(Generator{g.kind, g.index, MultiExp(0), g.power}).scaled(c.pow(g.power));
      case GenKind::Binom: return b0->action(Generator::binom(g.index, 0, g.power));
      case GenKind::Lambda:
        if (g.mono.is_one()) fail(ErrorCode::InvalidArgument, "Lambda needs a nonconstant monomial");
        return b0->action(Generator::binom(g.index, 0, g.power)).scaled((-c).pow(g.power));
    }
    return Matrix();
  }));
  return m;
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
  if (a->field != b->field) fail(ErrorCode::FieldMismatch, "direct sum over different fields");
  if (a->nvars != b->nvars || a->context != b->context || a->rd->rank() != b->rd->rank())
    fail(ErrorCode::ContextMismatch, "direct sum of modules for different algebras");
  auto m = std::make_shared<ModuleRep>();
  m->field = a->field;
  m->rd = a->rd;
  m->nvars = a->nvars;
  m->context = a->context;
  m->variant = a->variant;
  m->kind = "sum";
  m->highest = a->highest;
  for (const auto& l : a->basis_labels) m->basis_labels.push_back("0:" + l);
  for (const auto& l : b->basis_labels) m->basis_labels.push_back("1:" + l);
  m->weights = a->weights;
  m->weights.insert(m->weights.end(), b->weights.begin(), b->weights.end());
  if (a->degrees && b->degrees) {
    m->degrees = *a->degrees;
    m->degrees->insert(m->degrees->end(), b->degrees->begin(), b->degrees->end());
  }
  m->cyclic_vector = a->cyclic_vector;
  m->exported = a->exported;
  for (const auto& g : b->exported)
    if (std::find(m->exported.begin(), m->exported.end(), g) == m->exported.end())
      m->exported.push_back(g);
  m->set_source(std::make_shared<FnSource>([a, b](const Generator& g) {
    const Matrix& x = a->action(g);
    const Matrix& y = b->action(g);
    const int da = a->dim(), d = da + b->dim();
    Matrix r(a->field, d, d);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < b->dim(); ++i)
      for (int j = 0; j < b->dim(); ++j) r.at(da + i, da + j) = y.at(i, j);
    return r;
  }));
  return m;
}

Scalar lambda_eigenvalue(const ModuleRep& m, int v, int i, const MultiExp& f, int r) {
  if (r == 0) return Scalar(m.field, 1L);
  return eigenvalue_on(m, v, Generator::lambda(i, f, r));
}

LWeight extract_drinfeld(const ModuleRep& m, int v) {
  require_highest(m, v);
  LWeight w = LWeight::trivial(m.field, m.rd->rank(), m.nvars);
  const Weight& mu = m.weights.at(v);
  for (int i = 0; i < m.rd->rank(); ++i)
    for (int j = 0; j < m.nvars; ++j) {
      auto& p = w.polys[i][j];
      for (int r = 1; r <= mu[i]; ++r) p.push_back(lambda_eigenvalue(m, v, i, MultiExp::unit(m.nvars, j), r));
      if (!lambda_eigenvalue(m, v, i, MultiExp::unit(m.nvars, j), mu[i] + 1).is_zero())
        fail(ErrorCode::NotHighestLWeight, "Drinfeld polynomial degree exceeds the weight");
    }
  return w;
}

namespace {

/// omega_{i,f,r} by induction on sum |a_k|, with the auxiliary monomial g and the
/// vectors H_j v evaluated in the module.
class DrinfeldRecursion {
 public:
  DrinfeldRecursion(const ModuleRep& m, int v, int i)
      : m_(m), v_(v), i_(i), l_(m.weights.at(v)[i]), alg_(m.rd, m.nvars, Context::Loop) {}

  Scalar omega(const MultiExp& f, int r) {
    if (r == 0) return one();
    if (r > l_) return zero();
    auto key = std::make_pair(f, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Scalar out = compute(f, r);
    memo_.emplace(key, out);
    return out;
  }

 private:
  Scalar one() const { return Scalar(m_.field, 1L); }
  Scalar zero() const { return Scalar(m_.field, 0L); }

  Scalar compute(const MultiExp& f, int r) {
    MultiExp h;
    const int k = primitive_root(f, &h);
    if (k > 1) {
      Scalar out = zero();
      for (const auto& [prod, c] : alg_.lambda_power_reduce(i_, h, k, r)) {
        Scalar term = to_field(c, m_.field);
        for (const auto& [s, e] : prod) term *= omega(h, s).pow(e);
        out += term;
      }
      return out;
    }
    int support = 0, pos = -1;
    for (int j = 0; j < f.n; ++j)
      if (f[j] != 0) {
        ++support;
        pos = j;
      }
    if (support == 1 && f[pos] == 1) return lambda_eigenvalue(m_, v_, i_, f, r);
    if (support == 1 && f[pos] == -1) {
      // Lambda_{b,l} Lambda_{b^{-1},r} v = Lambda_{b,l-r} v
      const MultiExp b = -f;
      return omega(b, l_ - r) / omega(b, l_);
    }
    // auxiliary g: lower the largest |a_j| by one, then invert
    MultiExp g = f;
    int big = 0;
    for (int j = 1; j < f.n; ++j)
      if (std::abs(f[j]) > std::abs(f[big])) big = j;
    g[big] = static_cast<std::int16_t>(g[big] - (g[big] > 0 ? 1 : -1));
    g = -g;
    // 0 = omega_{g,l} omega_{f,r} v + sum_{j<l} omega_{g,j} H_j v
    std::vector<Scalar> acc(m_.dim(), zero());
    const Scalar sign = (r % 2 == 0) ? one() : -one();
    const Generator up = Generator::raise(m_.rd->simple_root_index(i_), f, r);
    for (int j = 0; j < l_; ++j) {
      const Scalar w = omega(g, j);
      if (w.is_zero()) continue;
      const auto y = m_.action(up).apply(y_vector(g, r, l_ - j));
      acc = axpy_dense(std::move(acc), w * sign, y);
    }
    for (int j = 0; j < m_.dim(); ++j)
      if (j != v_ && !acc[j].is_zero())
        fail(ErrorCode::NotHighestLWeight, "recursion leaves the highest l-weight line");
    return -acc[v_] / omega(g, l_);
  }

  /// Y v with Y the sum of prod_s (x^- (x) g^s)^(r_s) over sum r_s = r, sum s r_s = total.
  std::vector<Scalar> y_vector(const MultiExp& g, int r, int total) {
    std::vector<Scalar> acc(m_.dim(), zero());
    std::vector<int> parts;
    const int root = m_.rd->simple_root_index(i_);
    std::function<void(int, int, int)> rec = [&](int s, int left, int sum) {
      if (left == 0) {
        if (sum != total) return;
        auto x = m_.unit(v_);
        for (int t = 0; t < static_cast<int>(parts.size()) && !all_zero(x); ++t)
          if (parts[t] > 0) x = m_.action(Generator::lower(root, g.scaled(t), parts[t])).apply(x);
        acc = axpy_dense(std::move(acc), one(), x);
        return;
      }
      if (s > total) return;
      for (int c = 0; c <= left && sum + c * s <= total; ++c) {
        parts.push_back(c);
        rec(s + 1, left - c, sum + c * s);
        parts.pop_back();
      }
    };
    rec(0, r, 0);
    return acc;
  }

  const ModuleRep& m_;
  int v_, i_, l_;
  Hyperalgebra alg_;
  std::map<std::pair<MultiExp, int>, Scalar> memo_;
};

}  // namespace

Scalar drinfeld_general_coeff(const ModuleRep& m, int v, int i, const MultiExp& f, int r) {
  if (m.context != Context::Loop)
    fail(ErrorCode::ContextMismatch, "the recursion needs inverse monomials (loop modules)");
  if (!is_primitive(f)) fail(ErrorCode::NotPrimitive, "monomial " + f.str() + " is not primitive");
  require_highest(m, v);
  DrinfeldRecursion rec(m, v, i);
  return rec.omega(f, r);
}

FdPropReport verify_fdprop(const ModuleRep& m, int v, int max_height) {
  FdPropReport rep;
  const bool loop = m.context == Context::Loop;
  const auto x = m.unit(v);
  const Weight& mu = m.weights.at(v);
  const auto monos = monomial_box(m.nvars, loop ? -max_height : 0, max_height);
  auto record = [&](const std::string& part, const std::string& inst, const std::function<bool()>& f) {
    bool ok = false;
    std::string note;
    try {
      ok = f();
    } catch (const Error& e) {
      note = std::string(" [") + std::string(error_code_name(e.code())) + "]";
    }
    rep.entries.push_back({part, inst + note, ok});
  };
  for (int b = 0; b < m.rd->num_positive_roots(); ++b) {
    const int l = m.rd->pair(mu, b);
    for (const auto& s : monos)
      record("i", "root " + std::to_string(b + 1) + " s=" + s.str() + " k=" + std::to_string(l + 1),
             [&] { return all_zero(m.action(Generator::lower(b, s, l + 1)).apply(x)); });
  }
  for (int i = 0; i < m.rd->rank(); ++i) {
    const int l = mu[i];
    for (const auto& c : monos) {
      if (c.is_one()) continue;
      const std::string tag = "i=" + std::to_string(i + 1) + " b=" + c.str();
      record("ii", tag + " r=" + std::to_string(l + 1),
             [&] { return all_zero(m.action(Generator::lambda(i, c, l + 1)).apply(x)); });
      if (!loop) continue;
      record("iii", tag, [&] { return l == 0 || !lambda_eigenvalue(m, v, i, c, l).is_zero(); });
      if (!is_primitive(c)) continue;
      for (int r = 0; r <= l; ++r)
        record("iv", tag + " r=" + std::to_string(r), [&] {
          auto y = r == 0 ? x : m.action(Generator::lambda(i, -c, r)).apply(x);
          if (l > 0) y = m.action(Generator::lambda(i, c, l)).apply(y);
          const auto z = l - r == 0 ? x : m.action(Generator::lambda(i, c, l - r)).apply(x);
          return y == z;
        });
      for (int r = 1; r <= l; ++r)
        record("v", tag + " r=" + std::to_string(r), [&] {
          return drinfeld_general_coeff(m, v, i, c, r) == lambda_eigenvalue(m, v, i, c, r);
        });
    }
  }
  return rep;
}

namespace {

/// Coordinates of A restricted to the invariant subspace spanned by the columns of basis.
Matrix restrict_to(const Matrix& a, const std::vector<std::vector<Scalar>>& basis) {
  const int d = static_cast<int>(basis.size());
  const int n = a.rows();
  Matrix aug(a.field(), n, 2 * d);
  for (int c = 0; c < d; ++c) {
    const auto y = a.apply(basis[c]);
    for (int r = 0; r < n; ++r) {
      aug.at(r, c) = basis[c][r];
      aug.at(r, d + c) = y[r];
    }
  }
  rref(aug);
  Matrix out(a.field(), d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out.at(r, c) = aug.at(r, d + c);
  return out;
}

std::vector<std::vector<Scalar>> combine(const std::vector<std::vector<Scalar>>& basis,
                                         const std::vector<std::vector<Scalar>>& coords, Field f) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& c : coords) {
    std::vector<Scalar> v(basis.empty() ? 0 : basis[0].size(), Scalar(f, 0L));
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) v = axpy_dense(std::move(v), c[k], basis[k]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<LWeightBlock> lweight_decomposition(const ModuleRep& m) {
  const Field f = m.field;
  int order = 0;
  for (const auto& w : m.weights)
    for (int i = 0; i < m.rd->rank(); ++i) order = std::max(order, std::abs(w[i]));
  struct Op {
    int i, j, r;
  };
  std::vector<Op> ops;
  for (int i = 0; i < m.rd->rank(); ++i)
    for (int j = 0; j < m.nvars; ++j)
      for (int r = 1; r <= order; ++r) ops.push_back({i, j, r});

  std::vector<LWeightBlock> out;
  for (const auto& [mu, idx] : m.weight_decomp()) {
    std::vector<std::vector<Scalar>> basis;
    for (int k : idx) basis.push_back(m.unit(k));
    // split recursively by the generalized eigenspaces of each operator
    std::function<void(std::size_t, std::vector<std::vector<Scalar>>, std::vector<Scalar>)> split =
        [&](std::size_t o, std::vector<std::vector<Scalar>> sub, std::vector<Scalar> eig) {
          if (o == ops.size()) {
            LWeightBlock blk;
            blk.germ = LWeight::trivial(f, m.rd->rank(), m.nvars);
            for (std::size_t t = 0; t < ops.size(); ++t) blk.germ.polys[ops[t].i][ops[t].j].push_back(eig[t]);
            blk.weight = mu;
            blk.dim = static_cast<int>(sub.size());
            blk.basis = std::move(sub);
            out.push_back(std::move(blk));
            return;
          }
          const Op& op = ops[o];
          const Matrix a = restrict_to(m.action(Generator::lambda(op.i, MultiExp::unit(m.nvars, op.j), op.r)), sub);
          const auto cp = char_poly(a);
          const auto roots = poly_roots(cp);
          int covered = 0;
          for (const auto& c : roots) covered += root_multiplicity(cp, c);
          if (covered != a.rows())
            fail(ErrorCode::EigenvalueOutsideField, "Cartan eigenvalues do not lie in " + f.name());
          for (const auto& c : roots) {
            Matrix shifted = a - Matrix::identity(f, a.rows()).scaled(c);
            const Matrix power = matrix_power(shifted, a.rows());
            auto next = eig;
            next.push_back(c);
            split(o + 1, combine(sub, kernel(power), f), std::move(next));
          }
        };
    split(0, basis, {});
  }
  return out;
}

ModulePtr irreducible_quotient(const ModulePtr& m) {
  const int d = m->dim();
  const Field f = m->field;
  if (orbit_dimension(*m, m->unit(m->cyclic_vector), m->exported) != d)
    fail(ErrorCode::NotCyclic, "module is not generated by its cyclic vector");
  // functionals reachable from the top coordinate under the transposed action
  std::vector<Matrix> transposed;
  for (const auto& g : m->exported) transposed.push_back(m->action(g).transpose());
  EchelonSpace span(f);
  std::vector<SparseVec> queue;
  SparseVec top{{m->cyclic_vector, Scalar(f, 1L)}};
  span.insert(top);
  queue.push_back(top);
  while (!queue.empty()) {
    SparseVec w = std::move(queue.back());
    queue.pop_back();
    std::vector<Scalar> dense(d, Scalar(f, 0L));
    for (const auto& [i, c] : w) dense[i] = c;
    for (const auto& t : transposed) {
      const auto y = t.apply(dense);
      SparseVec s;
      for (int i = 0; i < d; ++i)
        if (!y[i].is_zero()) s.emplace(i, y[i]);
      if (span.insert(s)) queue.push_back(std::move(s));
    }
  }
  // fully reduced rows: quotient coordinates are the pairings with each row
  std::vector<int> cols;
  std::vector<SparseVec> rows;
  EchelonSpace reduced(f);
  for (const auto& [p, row] : span.rows()) reduced.insert(row);
  for (const auto& [p, row] : reduced.rows()) {
    cols.push_back(p);
    rows.push_back(row);
  }
  auto q = std::make_shared<ModuleRep>();
  q->field = f;
  q->rd = m->rd;
  q->nvars = m->nvars;
  q->context = m->context;
  q->variant = m->variant;
  q->kind = "quotient";
  q->highest = m->highest;
  for (int c : cols) {
    q->basis_labels.push_back(m->basis_labels[c]);
    q->weights.push_back(m->weights[c]);
    if (m->degrees) {
      if (!q->degrees) q->degrees.emplace();
      q->degrees->push_back((*m->degrees)[c]);
    }
  }
  q->cyclic_vector = static_cast<int>(std::find(cols.begin(), cols.end(), m->cyclic_vector) - cols.begin());
  q->certificate = m->certificate;
  q->certificate.relations.push_back("quotient by the annihilator of the orbit of the top functional");
  q->exported = m->exported;
  q->set_source(std::make_shared<FnSource>([m, cols, rows, f](const Generator& g) {
    const Matrix& a = m->action(g);
    const int k = static_cast<int>(cols.size());
    Matrix r(f, k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        Scalar s(f, 0L);
        for (const auto& [x, c] : rows[i]) s += c * a.at(x, cols[j]);
        r.at(i, j) = s;
      }
    return r;
  }));
  return q;
}

ModulePtr tau_shift_ev0(const ModulePtr& v, int nvars, const MultiExp& r) {
  if (v->nvars != 0) fail(ErrorCode::InvalidArgument, "ev_0 needs a module for the finite algebra");
  if (r.n != nvars || !r.nonnegative()) fail(ErrorCode::InvalidArgument, "degree must lie in Z_+^n");
  auto m = std::make_shared<ModuleRep>();
  m->field = v->field;
  m->rd = v->rd;
  m->nvars = nvars;
  m->context = Context::Current;
  m->variant = Variant::Graded;
  m->kind = "ev0";
  m->highest = v->highest;
  m->basis_labels = v->basis_labels;
  m->weights = v->weights;
  m->degrees = std::vector<MultiExp>(v->dim(), r);
  m->cyclic_vector = v->cyclic_vector;
  m->certificate = v->certificate;
  m->exported = loop_generators(*v->rd, nvars, v->field, 1, false);
  m->set_source(std::make_shared<FnSource>([v, nvars](const Generator& g) {
    if (g.mono.n != nvars) fail(ErrorCode::InvalidArgument, "generator has the wrong number of variables");
    if (g.kind == GenKind::Binom) return v->action(Generator::binom(g.index, 0, g.power));
    if (g.mono.is_one() && g.is_root()) return v->action(Generator{g.kind, g.index, MultiExp(0), g.power});
    return Matrix(v->field, v->dim(), v->dim());
  }));
  return m;
}

ModulePtr pullback_phi(const ModulePtr& m, const EvalPoint& a) {
  if (!m->field.is_rational())
    fail(ErrorCode::CharPositiveUnsupported, "pullback along t -> t - a is checked over Q only");
  if (m->context != Context::Loop) fail(ErrorCode::ContextMismatch, "pullback needs a loop module");
  const int n = m->nvars;
  if (static_cast<int>(a.a.size()) != n) fail(ErrorCode::InvalidArgument, "point has the wrong length");
  if (std::all_of(a.a.begin(), a.a.end(), [](const Scalar& c) { return c.is_zero(); }))
    fail(ErrorCode::InvalidArgument, "pullback point must be nonzero");
  const Field f = m->field;
  const int d = m->dim();
  // image of t^s under t_j -> t_j - a_j
  auto expand = [a, n, f](const MultiExp& s) {
    std::vector<std::pair<MultiExp, Scalar>> terms{{MultiExp(n), Scalar(f, 1L)}};
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<MultiExp, Scalar>> next;
      for (const auto& [mono, c] : terms)
        for (int e = 0; e <= s[j]; ++e) {
          MultiExp mm = mono;
          mm[j] = static_cast<std::int16_t>(e);
          next.emplace_back(mm, c * Scalar(f, binom_gen(mpz_class(s[j]), e)) * (-a.a[j]).pow(s[j] - e));
        }
      terms = std::move(next);
    }
    return terms;
  };
  // h_i (x) t^m in the loop module
  auto cartan = [m, f](int i, const MultiExp& mono) {
    if (mono.is_one()) return m->action(Generator::binom(i, mono.n, 1));
    return m->action(Generator::lambda(i, mono, 1)).scaled(Scalar(f, -1L));
  };
  auto image = [expand, f, d](const std::function<Matrix(const MultiExp&)>& base, const MultiExp& s) {
    Matrix x(f, d, d);
    for (const auto& [mono, c] : expand(s))
      if (!c.is_zero()) x = x + base(mono).scaled(c);
    return x;
  };
  auto out = std::make_shared<ModuleRep>();
  out->field = f;
  out->rd = m->rd;
  out->nvars = n;
  out->context = Context::Current;
  out->variant = Variant::Graded;
  out->kind = "pullback";
  out->highest = m->highest;
  out->basis_labels = m->basis_labels;
  out->weights = m->weights;
  out->cyclic_vector = m->cyclic_vector;
  out->certificate = m->certificate;
  out->certificate.relations.push_back("restriction to the current algebra twisted by t -> t - " + a.str());
  out->exported = loop_generators(*m->rd, n, f, 1, false);
  out->set_source(std::make_shared<FnSource>([m, n, f, d, image, cartan](const Generator& g) {
    if (g.mono.n != n) fail(ErrorCode::InvalidArgument, "generator has the wrong number of variables");
    if (!g.mono.nonnegative()) fail(ErrorCode::ContextMismatch, "current generators need s >= 0");
    switch (g.kind) {
      case GenKind::Lower:
      case GenKind::Raise: {
        const Matrix x = image([&](const MultiExp& mono) {
          return m->action(Generator{g.kind, g.index, mono, 1});
        }, g.mono);
        return matrix_power(x, g.power).scaled(Scalar(f, mpq_class(1, factorial(g.power))));
      }
      case GenKind::Binom: return m->action(g);
      case GenKind::Lambda: {
        // r Lambda_r = -sum_{s=1}^r H_s Lambda_{r-s}, H_s the image of h (x) c^s
        std::vector<Matrix> lam{Matrix::identity(f, d)};
        for (int r = 1; r <= g.power; ++r) {
          Matrix acc(f, d, d);
          for (int s = 1; s <= r; ++s) {
            const Matrix hs = image([&](const MultiExp& mono) { return cartan(g.index, mono); },
                                    g.mono.scaled(s));
            acc = acc + hs * lam[r - s];
          }
          lam.push_back(acc.scaled(Scalar(f, mpq_class(-1, r))));
        }
        return lam.back();
      }
    }
    return Matrix();
  }));
  return out;
}

GradedRelationReport check_graded_weyl_relations(const ModuleRep& m, int v, int max_height) {
  GradedRelationReport rep;
  const auto x = m.unit(v);
  const Weight& lam = m.weights.at(v);
  const auto monos = monomial_box(m.nvars, 0, max_height);
  auto record = [&](const std::string& part, const std::string& inst, const std::function<bool()>& f) {
    bool ok = false;
    std::string note;
    try {
      ok = f();
    } catch (const Error& e) {
      note = std::string(" [") + std::string(error_code_name(e.code())) + "]";
    }
    rep.entries.push_back({part, inst + note, ok});
  };
  const auto powers = generating_powers(m.field, m.rd->pair(lam, m.rd->theta()) + 1);
  for (int b = 0; b < m.rd->num_positive_roots(); ++b)
    for (const auto& s : monos)
      for (int k : powers)
        record("n+", "root " + std::to_string(b + 1) + " s=" + s.str() + " k=" + std::to_string(k),
               [&] { return all_zero(m.action(Generator::raise(b, s, k)).apply(x)); });
  for (int i = 0; i < m.rd->rank(); ++i) {
    for (const auto& c : monos) {
      if (c.is_one()) continue;
      for (int k : powers)
        record("h", "i=" + std::to_string(i + 1) + " b=" + c.str() + " r=" + std::to_string(k),
               [&] { return all_zero(m.action(Generator::lambda(i, c, k)).apply(x)); });
    }
    for (int k : powers)
      record("weight", "i=" + std::to_string(i + 1) + " k=" + std::to_string(k), [&] {
        const auto y = m.action(Generator::binom(i, m.nvars, k)).apply(x);
        const Scalar c = binom_gen(m.field, lam[i], k);
        for (int j = 0; j < m.dim(); ++j)
          if (y[j] != (j == v ? c : Scalar(m.field, 0L))) return false;
        return true;
      });
  }
  for (int b = 0; b < m.rd->num_positive_roots(); ++b) {
    const int l = m.rd->pair(lam, b);
    record("lower", "root " + std::to_string(b + 1) + " k=" + std::to_string(l + 1), [&] {
      return all_zero(m.action(Generator::lower(b, MultiExp(m.nvars), l + 1)).apply(x));
    });
  }
  rep.cyclic_dim = orbit_dimension(m, x, m.exported);
  return rep;
}

}  // namespace hyper
