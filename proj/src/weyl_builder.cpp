#include <algorithm>
#include <functional>
#include <set>

#include "hyper/modules.hpp"

namespace hyper {

namespace {

struct GenLess {
  bool operator()(const Generator& a, const Generator& b) const {
    return compare_generators(a, b) < 0;
  }
};

constexpr std::size_t kLabelBudget = 60000;

/// Closure construction of a local Weyl module.
///
/// Vectors live in the free span F of admissible labels L_xi (lowering divided-power
/// monomials). The operator of a generator g sends e_xi to reduce(pi(g L_xi v)), where pi
/// drops monomials with a raising factor and evaluates the Cartan block on v, and reduce
/// rewrites inadmissible lowering monomials with relations that hold in the Weyl module.
/// Relation checks between operators produce defect vectors; the quotient by their
/// operator-invariant span is iterated until no check fails.
class WeylBuilder {
 public:
  WeylBuilder(RootDataPtr rd, Variant v, int n, Field f, Weight lam,
              std::vector<std::pair<Weight, EvalPoint>> factors, Caps caps)
      : rd_(std::move(rd)),
        variant_(v),
        n_(v == Variant::FiniteType ? 0 : n),
        field_(f),
        lam_(std::move(lam)),
        factors_(std::move(factors)),
        caps_(caps),
        alg_(rd_, n_, v == Variant::Loop ? Context::Loop : Context::Current),
        space_(f) {}

  void run();
  ModulePtr emit(std::shared_ptr<WeylBuilder> self);

  SparseVec act_vec(const Generator& g, const SparseVec& x);
  SparseVec mod(SparseVec x) const { return space_.reduce(std::move(x)); }
  Field field() const { return field_; }
  bool preserves_relations(const Generator& g);

 private:
  bool admissible(const Generator& y) const;
  bool in_support(const Weight& w) const { return support_.count(w) != 0; }
  Weight factor_weight(const Generator& y) const {
    return Weight::zero(rd_->rank()) - rd_->root_weight(y.index).scaled(y.power);
  }
  Weight gen_weight(const Generator& g) const {
    if (g.is_cartan()) return Weight::zero(rd_->rank());
    const Weight w = rd_->root_weight(g.index).scaled(g.power);
    return g.kind == GenKind::Raise ? w : Weight::zero(rd_->rank()) - w;
  }
  mpq_class chi(const LieKey& k) const;
  std::vector<std::pair<PBWMonomial, mpq_class>> lower_dp(const OrdElem& e) const;

  SparseVec reduce(const PBWMonomial& m);
  SparseVec reduce_single(const Generator& y);
  SparseVec reduce_multi(const PBWMonomial& m, std::size_t j);
  SparseVec apply_lower(const Generator& y, int eta);
  const SparseVec& act(const Generator& g, int id);
  const AlgebraElement& normal_pair(const Generator& a, const Generator& b);
  SparseVec op(const Generator& g, const SparseVec& x) { return mod(act_vec(g, x)); }

  void build_labels();
  void build_generators();
  bool add_relation(SparseVec d);
  void close_queue();
  std::vector<Scalar> omega_series(int root, int var) const;

  RootDataPtr rd_;
  Variant variant_;
  int n_;
  Field field_;
  Weight lam_;
  std::vector<std::pair<Weight, EvalPoint>> factors_;
  Caps caps_;
  Hyperalgebra alg_;
  std::set<Weight> support_;
  std::vector<std::vector<mpq_class>> lifted_;  // lifted point coordinates per factor

  std::vector<PBWMonomial> labels_;
  std::vector<Weight> label_weights_;
  std::map<PBWMonomial, int, PBWLess> index_;
  std::map<PBWMonomial, SparseVec, PBWLess> reduce_cache_;
  std::map<std::pair<Generator, int>, SparseVec,
           std::function<bool(const std::pair<Generator, int>&, const std::pair<Generator, int>&)>>
      lower_cache_{[](const auto& a, const auto& b) {
        if (int c = compare_generators(a.first, b.first)) return c < 0;
        return a.second < b.second;
      }};
  // images kept reduced modulo the relation span of the recorded rank
  struct CachedImage {
    SparseVec v;
    std::size_t rank = 0;
  };
  std::map<Generator, std::map<int, CachedImage>, GenLess> act_cache_;
  std::map<std::pair<Generator, Generator>, AlgebraElement,
           std::function<bool(const std::pair<Generator, Generator>&,
                              const std::pair<Generator, Generator>&)>>
      pair_cache_{[](const auto& a, const auto& b) {
        if (int c = compare_generators(a.first, b.first)) return c < 0;
        return compare_generators(a.second, b.second) < 0;
      }};

  std::vector<Generator> left_, right_;
  EchelonSpace space_;
  std::vector<int> queue_;  // pivots whose rows still need operator images
  Certificate cert_;
};

bool WeylBuilder::admissible(const Generator& y) const {
  const int l = rd_->pair(lam_, y.index);
  if (n_ == 0) return l > 0;
  for (int j = 0; j < n_; ++j)
    if (y.mono[j] < 0 || y.mono[j] >= l) return false;
  return true;
}

mpq_class WeylBuilder::chi(const LieKey& k) const {
  const int i = rd_->sub_index(k.b);
  if (variant_ != Variant::Loop) return k.m.is_one() ? mpq_class(lam_[i]) : mpq_class(0);
  mpq_class total = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const int w = factors_[f].first[i];
    if (w == 0) continue;
    mpq_class val = 1;
    for (int j = 0; j < n_; ++j) {
      mpq_class base = lifted_[f][j];
      int e = k.m[j];
      if (e < 0) {
        base = 1 / base;
        e = -e;
      }
      for (int t = 0; t < e; ++t) val *= base;
    }
    total += w * val;
  }
  return total;
}

std::vector<Scalar> WeylBuilder::omega_series(int root, int var) const {
  // Lambda_{beta, t_var}(u) acts on v by prod_k (1 - a_{k,var} u)^{lambda_k(h_beta)}
  std::vector<Scalar> p{Scalar(field_, 1L)};
  for (const auto& [w, pt] : factors_) {
    const int e = rd_->pair(w, root);
    for (int t = 0; t < e; ++t) {
      std::vector<Scalar> q(p.size() + 1, Scalar(field_, 0L));
      for (std::size_t d = 0; d < p.size(); ++d) {
        q[d] += p[d];
        q[d + 1] -= p[d] * pt.a[var];
      }
      p = std::move(q);
    }
  }
  return p;
}

std::vector<std::pair<PBWMonomial, mpq_class>> WeylBuilder::lower_dp(const OrdElem& e) const {
  std::vector<std::pair<PBWMonomial, mpq_class>> out;
  for (const auto& [m, c] : e) {
    PBWMonomial w;
    mpq_class coef = c;
    for (const auto& f : m) {
      if (rd_->kind(f.key.b) != BasisKind::Lower)
        fail(ErrorCode::InvalidArgument, "internal: non-lowering factor in a lowering product");
      w.word.push_back(Generator::lower(rd_->sub_index(f.key.b), f.key.m, f.exp));
      coef *= mpq_class(factorial(f.exp));
    }
    out.emplace_back(std::move(w), coef);
  }
  return out;
}

void WeylBuilder::build_labels() {
  // labels are built right to left so every suffix weight stays in the support
  std::vector<Generator> slots;
  for (int b = 0; b < rd_->num_positive_roots(); ++b) {
    const int l = rd_->pair(lam_, b);
    if (l <= 0) continue;
    MultiExp s(n_);
    std::function<void(int)> rec = [&](int j) {
      if (j == n_) {
        slots.push_back(Generator::lower(b, s, 1));
        return;
      }
      for (int e = 0; e < l; ++e) {
        s[j] = static_cast<std::int16_t>(e);
        rec(j + 1);
      }
      s[j] = 0;
    };
    rec(0);
  }
  std::vector<Generator> suffix;
  std::function<void(int, const Weight&)> rec = [&](int limit, const Weight& w) {
    PBWMonomial m;
    m.word.assign(suffix.rbegin(), suffix.rend());
    labels_.push_back(std::move(m));
    if (labels_.size() > kLabelBudget)
      fail(ErrorCode::CapExceeded, "spanning set exceeds " + std::to_string(kLabelBudget) + " labels");
    for (int i = limit - 1; i >= 0; --i) {
      Generator g = slots[i];
      for (int k = 1;; ++k) {
        g.power = k;
        Weight nw = w + factor_weight(g);
        if (!in_support(nw)) break;
        suffix.push_back(g);
        rec(i, nw);
        suffix.pop_back();
      }
    }
  };
  rec(static_cast<int>(slots.size()), lam_);
  // most complex first, so that echelon pivots fall on complex labels
  std::stable_sort(labels_.begin(), labels_.end(), [](const PBWMonomial& a, const PBWMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return PBWLess{}(b, a);
  });
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    index_.emplace(labels_[i], i);
    Weight w = lam_;
    for (const auto& g : labels_[i].word) w = w + factor_weight(g);
    label_weights_.push_back(std::move(w));
  }
  cert_.spanning = static_cast<int>(labels_.size());
}

SparseVec WeylBuilder::reduce(const PBWMonomial& m) {
  if (auto it = reduce_cache_.find(m); it != reduce_cache_.end()) return it->second;
  SparseVec out;
  Weight w = lam_;
  bool zero = false;
  for (std::size_t j = m.word.size(); j-- > 0;) {
    w = w + factor_weight(m.word[j]);
    if (!in_support(w)) {
      zero = true;
      break;
    }
  }
  if (!zero) {
    std::size_t bad = m.word.size();
    for (std::size_t j = 0; j < m.word.size(); ++j)
      if (!admissible(m.word[j])) {
        bad = j;
        break;
      }
    if (bad == m.word.size()) {
      auto it = index_.find(m);
      if (it == index_.end()) fail(ErrorCode::InvalidArgument, "internal: admissible label missing");
      out.emplace(it->second, Scalar(field_, 1L));
    } else if (m.word.size() == 1) {
      out = reduce_single(m.word[0]);
    } else {
      out = reduce_multi(m, bad);
    }
  }
  reduce_cache_.emplace(m, out);
  return out;
}

SparseVec WeylBuilder::reduce_single(const Generator& y) {
  // Graded: labels vanish when max(s) >= lambda(h_beta); FiniteType has no such factors.
  if (variant_ != Variant::Loop) return {};
  const int l = rd_->pair(lam_, y.index);
  const int e = y.power;
  int var = -1;
  bool high = false;
  for (int j = 0; j < n_ && var < 0; ++j)
    if (y.mono[j] >= l) {
      var = j;
      high = true;
    }
  for (int j = 0; j < n_ && var < 0; ++j)
    if (y.mono[j] < 0) var = j;
  const std::vector<Scalar> omega = omega_series(y.index, var);
  auto coef = [&](int d) {
    return d >= 0 && d < static_cast<int>(omega.size()) ? omega[d] : Scalar(field_, 0L);
  };
  const int K = e * (l + 1);
  int q_star = l + 1;
  if (!high) {
    int n0 = l;
    for (int c = 0; c <= l; ++c)
      if (!coef(e * (l - c)).is_zero()) {
        n0 = c;
        break;
      }
    q_star = n0 + 1;
  }
  MultiExp r = y.mono;
  r[var] = static_cast<std::int16_t>(r[var] - q_star);
  const Scalar target = coef(K - e * q_star);
  // ((X(u))^{(e)} Lambda(u))_K v = 0 with X(u) = sum_{q>=1} (x^- (x) t^{r + q e_var}) u^q
  SparseVec out;
  std::vector<int> mult(K + 1, 0);
  std::function<void(int, int, int)> rec = [&](int q, int left, int sum) {
    if (left == 0) {
      const Scalar c = coef(K - sum);
      if (c.is_zero()) return;
      if (mult[q_star] == e) return;  // the target itself
      PBWMonomial m;
      for (int t = 1; t <= K; ++t)
        if (mult[t]) {
          MultiExp s = r;
          s[var] = static_cast<std::int16_t>(s[var] + t);
          m.word.push_back(Generator::lower(y.index, s, mult[t]));
        }
      std::sort(m.word.begin(), m.word.end(), [](const Generator& a, const Generator& b) {
        return compare_generators(a, b) < 0;
      });
      axpy(out, c, reduce(m));
      return;
    }
    if (q > K) return;
    for (int k = 0; k <= left && sum + k * q <= K; ++k) {
      mult[q] = k;
      rec(q + 1, left - k, sum + k * q);
    }
    mult[q] = 0;
  };
  rec(1, e, 0);
  return scaled(out, -target.inverse());
}

SparseVec WeylBuilder::reduce_multi(const PBWMonomial& m, std::size_t j) {
  const Generator y = m.word[j];
  PBWMonomial rest;
  for (std::size_t t = 0; t < m.word.size(); ++t)
    if (t != j) rest.word.push_back(m.word[t]);
  // L = y * rest - (lower-degree terms)
  OrdElem prod = alg_.engine().multiply(alg_.to_ord(y), alg_.to_ord(rest));
  SparseVec out;
  bool seen = false;
  for (const auto& [w, c] : lower_dp(prod)) {
    if (w == m) {
      if (c != 1) fail(ErrorCode::InvalidArgument, "internal: unexpected leading coefficient");
      seen = true;
      continue;
    }
    axpy(out, to_field(-c, field_), reduce(w));
  }
  if (!seen) fail(ErrorCode::InvalidArgument, "internal: leading monomial lost");
  for (const auto& [eta, c] : reduce(rest)) axpy(out, c, apply_lower(y, eta));
  return out;
}

SparseVec WeylBuilder::apply_lower(const Generator& y, int eta) {
  auto key = std::make_pair(y, eta);
  if (auto it = lower_cache_.find(key); it != lower_cache_.end()) return it->second;
  const PBWMonomial& le = labels_[eta];
  SparseVec out;
  // y L_eta v = L_eta (y v) + [y, L_eta] v
  const OrdElem le_ord = alg_.to_ord(le);
  for (const auto& [zeta, d] : reduce(PBWMonomial{{y}})) {
    OrdElem prod = alg_.engine().multiply(le_ord, alg_.to_ord(labels_[zeta]));
    for (const auto& [w, c] : lower_dp(prod)) axpy(out, d * to_field(c, field_), reduce(w));
  }
  const OrdElem y_ord = alg_.to_ord(y);
  OrdElem comm = alg_.engine().multiply(y_ord, le_ord);
  ord_add(comm, alg_.engine().multiply(le_ord, y_ord), -1);
  for (const auto& [w, c] : lower_dp(comm)) axpy(out, to_field(c, field_), reduce(w));
  lower_cache_.emplace(key, out);
  return out;
}

const SparseVec& WeylBuilder::act(const Generator& g, int id) {
  auto& per = act_cache_[g];
  if (auto it = per.find(id); it != per.end()) {
    CachedImage& img = it->second;
    if (img.rank != space_.rank()) {
      img.v = mod(std::move(img.v));
      img.rank = space_.rank();
    }
    return img.v;
  }
  OrdElem prod = alg_.engine().multiply(alg_.to_ord(g), alg_.to_ord(labels_[id]));
  // Cartan evaluations are only integral after summing per lowering monomial
  DPRational acc;
  for (const auto& [m, c] : prod) {
    mpq_class val = c;
    PBWMonomial w;
    bool raise = false;
    for (const auto& f : m) {
      switch (rd_->kind(f.key.b)) {
        case BasisKind::Raise: raise = true; break;
        case BasisKind::Cartan: {
          const mpq_class x = chi(f.key);
          for (int t = 0; t < f.exp; ++t) val *= x;
          break;
        }
        case BasisKind::Lower:
          w.word.push_back(Generator::lower(rd_->sub_index(f.key.b), f.key.m, f.exp));
          val *= mpq_class(factorial(f.exp));
          break;
      }
      if (raise) break;
    }
    if (raise || val == 0) continue;
    acc[w] += val;
  }
  SparseVec out;
  for (const auto& [w, val] : acc)
    if (val != 0) axpy(out, to_field(val, field_), reduce(w));
  return per.emplace(id, CachedImage{mod(std::move(out)), space_.rank()}).first->second.v;
}

SparseVec WeylBuilder::act_vec(const Generator& g, const SparseVec& x) {
  SparseVec out;
  for (const auto& [id, c] : x) axpy(out, c, act(g, id));
  return out;
}

const AlgebraElement& WeylBuilder::normal_pair(const Generator& a, const Generator& b) {
  auto key = std::make_pair(a, b);
  if (auto it = pair_cache_.find(key); it != pair_cache_.end()) return it->second;
  return pair_cache_.emplace(key, alg_.pbw_normal_form({a, b}, field_)).first->second;
}

void WeylBuilder::build_generators() {
  const bool char0 = field_.is_rational();
  const int E = caps_.max_height;
  // (x)^(k) with p not dividing k! is x^k / k!, so only orders 1, p, p^2, ... generate
  std::vector<int> powers{1};
  if (!char0)
    for (long q = field_.characteristic(); q <= caps_.max_power; q *= field_.characteristic())
      powers.push_back(static_cast<int>(q));
  const bool loop = variant_ == Variant::Loop;
  std::vector<MultiExp> monos;
  {
    MultiExp s(n_);
    std::function<void(int)> rec = [&](int j) {
      if (j == n_) {
        monos.push_back(s);
        return;
      }
      for (int e = loop ? -E : 0; e <= E; ++e) {
        s[j] = static_cast<std::int16_t>(e);
        rec(j + 1);
      }
      s[j] = 0;
    };
    rec(0);
  }
  std::vector<MultiExp> near{MultiExp(n_)};
  for (int j = 0; j < n_; ++j) {
    near.push_back(MultiExp::unit(n_, j));
    if (loop) near.push_back(-MultiExp::unit(n_, j));
  }
  const int l = rd_->rank();
  for (int i = 0; i < l; ++i) {
    const int b = rd_->simple_root_index(i);
    for (const auto& c : near) {
      if (char0 && !c.is_one()) continue;
      for (int k : powers) {
        left_.push_back(Generator::raise(b, c, k));
        left_.push_back(Generator::lower(b, c, k));
      }
    }
    for (const auto& c : near)
      if (!c.is_one())
        for (int k : powers) left_.push_back(Generator::lambda(i, c, k));
    if (!char0)
      for (int k : powers) left_.push_back(Generator::binom(i, n_, k));
  }
  for (int b = 0; b < rd_->num_positive_roots(); ++b)
    for (const auto& c : monos)
      for (int k : powers) {
        right_.push_back(Generator::lower(b, c, k));
        right_.push_back(Generator::raise(b, c, k));
      }
  for (int i = 0; i < l; ++i) {
    for (int k : powers) right_.push_back(Generator::binom(i, n_, k));
    for (const auto& c : monos)
      if (!c.is_one())
        for (int k : powers) right_.push_back(Generator::lambda(i, c, k));
  }
  auto sorter = [](const Generator& a, const Generator& b) { return compare_generators(a, b) < 0; };
  std::sort(left_.begin(), left_.end(), sorter);
  std::sort(right_.begin(), right_.end(), sorter);
}

bool WeylBuilder::add_relation(SparseVec d) {
  d = mod(std::move(d));
  if (d.empty()) return false;
  const int pivot = d.begin()->first;
  space_.insert(std::move(d));
  queue_.push_back(pivot);
  ++cert_.defects;
  return true;
}

void WeylBuilder::close_queue() {
  while (!queue_.empty()) {
    // the current row of a pivot is shorter than the vector first inserted; rows with
    // distinct pivots form a basis, so checking them covers the whole span
    const SparseVec w = space_.rows().at(queue_.back());
    queue_.pop_back();
    const Weight wt = label_weights_[w.begin()->first];
    for (const auto* set : {&left_, &right_})
      for (const auto& g : *set) {
        if (!in_support(wt + gen_weight(g))) continue;
        add_relation(act_vec(g, w));
      }
  }
}

void WeylBuilder::run() {
  if (variant_ == Variant::Graded && field_.characteristic() == 2)
    fail(ErrorCode::CharTwoUnsupported, "graded local Weyl modules need characteristic != 2");
  for (const auto& w : weight_support(*rd_, lam_)) support_.insert(w);
  for (const auto& [w, pt] : factors_) {
    std::vector<mpq_class> lift;
    for (const auto& a : pt.a) {
      if (a.is_zero()) fail(ErrorCode::ZeroEvalPoint, "evaluation point has a zero entry");
      lift.push_back(field_.is_rational() ? a.rational_value()
                                          : mpq_class(mpz_class(a.residue_value())));
    }
    lifted_.push_back(std::move(lift));
  }
  build_labels();
  build_generators();
  cert_.caps = caps_;

  std::set<Generator, GenLess> closed_ops(left_.begin(), left_.end());
  closed_ops.insert(right_.begin(), right_.end());
  // A check that passed stays valid once K grows when every operator in it preserves K,
  // so later passes only revisit pairs whose normal form leaves the checked operator set.
  for (;;) {
    ++cert_.iterations;
    bool changed = false;
    long checks = 0;
    for (const auto& g1 : left_)
      for (const auto& g2 : right_) {
        const AlgebraElement& nf = normal_pair(g1, g2);
        if (nf.terms.size() == 1 && nf.terms.begin()->second.is_one() &&
            nf.terms.begin()->first.word == std::vector<Generator>{g1, g2})
          continue;
        if (cert_.iterations > 1) {
          bool closed = true;
          for (const auto& [m, c] : nf.terms)
            for (const auto& g : m.word)
              if (!closed_ops.count(g)) closed = false;
          if (closed) continue;
        }
        const Weight shift = gen_weight(g1) + gen_weight(g2);
        for (int id = static_cast<int>(labels_.size()) - 1; id >= 0; --id) {
          if (space_.is_pivot(id)) continue;
          if (!in_support(label_weights_[id] + shift)) continue;
          ++checks;
          SparseVec e{{id, Scalar(field_, 1L)}};
          SparseVec d = op(g1, op(g2, e));
          for (const auto& [m, c] : nf.terms) {
            SparseVec x = e;
            for (auto it = m.word.rbegin(); it != m.word.rend() && !x.empty(); ++it) x = op(*it, x);
            axpy(d, -c, x);
          }
          if (add_relation(std::move(d))) {
            changed = true;
            close_queue();
          }
        }
      }
    cert_.checks += checks;
    if (!changed) break;
  }
}

bool WeylBuilder::preserves_relations(const Generator& g) {
  // the closure fixpoint already applied every generator of left_ and right_ to each row
  for (const auto* set : {&left_, &right_})
    if (std::binary_search(set->begin(), set->end(), g, GenLess{})) return true;
  const Weight shift = gen_weight(g);
  for (const auto& [pivot, w] : space_.rows()) {
    if (!in_support(label_weights_[pivot] + shift)) continue;
    if (!mod(act_vec(g, w)).empty()) return false;
  }
  return true;
}

/// Action source backed by the builder's quotient.
class BuilderSource : public ActionSource {
 public:
  BuilderSource(std::shared_ptr<WeylBuilder> b, std::vector<int> ids)
      : b_(std::move(b)), ids_(std::move(ids)) {
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) pos_.emplace(ids_[i], i);
  }

  Matrix matrix(const Generator& g) const override {
    if (!b_->preserves_relations(g))
      fail(ErrorCode::CapExceeded, "relation span is not stable under the requested generator");
    const int d = static_cast<int>(ids_.size());
    Matrix m(b_->field(), d, d);
    for (int c = 0; c < d; ++c)
      for (const auto& [id, v] : b_->mod(b_->act_vec(g, {{ids_[c], Scalar(b_->field(), 1L)}})))
        m.at(pos_.at(id), c) = v;
    return m;
  }

  std::vector<Scalar> apply(const Generator& g, const std::vector<Scalar>& x) const override {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
      if (!x[i].is_zero()) s.emplace(ids_[i], x[i]);
    std::vector<Scalar> out(ids_.size(), Scalar(b_->field(), 0L));
    for (const auto& [id, v] : b_->mod(b_->act_vec(g, s))) out[pos_.at(id)] = v;
    return out;
  }

 private:
  std::shared_ptr<WeylBuilder> b_;
  std::vector<int> ids_;
  std::map<int, int> pos_;
};

ModulePtr WeylBuilder::emit(std::shared_ptr<WeylBuilder> self) {
  auto m = std::make_shared<ModuleRep>();
  m->field = field_;
  m->rd = rd_;
  m->nvars = n_;
  m->context = variant_ == Variant::Loop ? Context::Loop : Context::Current;
  m->variant = variant_;
  m->kind = "weyl";
  m->highest = lam_;
  std::vector<int> ids;
  for (int id = static_cast<int>(labels_.size()) - 1; id >= 0; --id)
    if (!space_.is_pivot(id)) ids.push_back(id);
  if (variant_ == Variant::Graded) m->degrees.emplace();
  for (int id : ids) {
    const PBWMonomial& l = labels_[id];
    m->basis_labels.push_back(alg_.str(l));
    Weight w = lam_;
    MultiExp deg(n_);
    for (const auto& g : l.word) {
      w = w + factor_weight(g);
      deg = deg + g.mono.scaled(g.power);
    }
    m->weights.push_back(w);
    if (m->degrees) m->degrees->push_back(deg);
  }
  m->cyclic_vector = 0;
  m->exported = left_;

  // certificate: relation families and the highest-weight conditions on v
  cert_.relations.push_back("A(g1) A(g2) = A(normal form of g1 g2) for " +
                            std::to_string(left_.size()) + " x " + std::to_string(right_.size()) +
                            " generator pairs on every basis vector");
  cert_.relations.push_back("operator-invariant relation span under all checked generators");
  SparseVec v{{ids.empty() ? 0 : ids[0], Scalar(field_, 1L)}};
  bool hw = true;
  for (const auto& g : right_) {
    SparseVec y = op(g, v);
    if (g.kind == GenKind::Raise && !y.empty()) hw = false;
    if (g.kind == GenKind::Binom) {
      SparseVec expect = scaled(v, binom_gen(field_, lam_[g.index], g.power));
      axpy(y, Scalar(field_, -1L), expect);
      if (!y.empty()) hw = false;
    }
  }
  if (!hw) fail(ErrorCode::InvalidArgument, "internal: cyclic vector is not highest weight");
  cert_.relations.push_back("U(n+)^0 v = 0 and binom(h_i,k) v = binom(lambda(h_i),k) v within caps");
  for (int i = 0; i < rd_->rank(); ++i) {
    Generator g = Generator::lower(rd_->simple_root_index(i), MultiExp(n_), lam_[i] + 1);
    if (!op(g, v).empty()) fail(ErrorCode::InvalidArgument, "internal: Weyl relation fails on v");
  }
  cert_.relations.push_back("(x_i^-)^(k) v = 0 for k > lambda(h_i)");
  if (variant_ == Variant::Loop) {
    for (int i = 0; i < rd_->rank(); ++i)
      for (int j = 0; j < n_; ++j) {
        auto om = omega_series(rd_->simple_root_index(i), j);
        for (int r = 1; r <= lam_[i] + 1; ++r) {
          SparseVec y = op(Generator::lambda(i, MultiExp::unit(n_, j), r), v);
          Scalar c = r < static_cast<int>(om.size()) ? om[r] : Scalar(field_, 0L);
          axpy(y, -c, v);
          if (!y.empty()) fail(ErrorCode::InvalidArgument, "internal: l-weight of v mismatch");
        }
      }
    cert_.relations.push_back("Lambda_{i,t_j}(u) v = omega_{i,j}(u) v");
  } else if (variant_ == Variant::Graded) {
    cert_.relations.push_back("U(h[n]_+)^0 v = 0 within caps");
  }
  // cyclicity: orbit of v under the checked generators
  EchelonSpace orbit(field_);
  std::vector<SparseVec> q{v};
  orbit.insert(v);
  while (!q.empty()) {
    SparseVec w = std::move(q.back());
    q.pop_back();
    for (const auto* set : {&left_, &right_})
      for (const auto& g : *set) {
        SparseVec y = op(g, w);
        if (orbit.insert(y)) q.push_back(std::move(y));
      }
  }
  cert_.cyclic = orbit.rank() == ids.size();
  if (!cert_.cyclic) fail(ErrorCode::NotCyclic, "constructed module is not generated by v");
  m->certificate = cert_;
  m->set_source(std::make_shared<BuilderSource>(std::move(self), std::move(ids)));
  return m;
}

ModulePtr build(RootDataPtr rd, Variant v, int n, Field f, Weight lam,
                std::vector<std::pair<Weight, EvalPoint>> factors, std::optional<Caps> caps) {
  Caps c = caps ? *caps : Caps::defaults(*rd, lam);
  auto b = std::make_shared<WeylBuilder>(rd, v, n, f, lam, std::move(factors), c);
  b->run();
  return b->emit(b);
}

}  // namespace

ModulePtr construct_weyl(RootDataPtr rd, const Weight& lam, Variant v, int nvars, Field f,
                         std::optional<Caps> caps) {
  if (v == Variant::Loop) fail(ErrorCode::InvalidArgument, "use construct_weyl_loop for loop modules");
  if (lam.rank() != rd->rank()) fail(ErrorCode::InvalidArgument, "weight rank mismatch");
  if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
  return build(std::move(rd), v, nvars, f, lam, {}, caps);
}

ModulePtr construct_weyl_loop(RootDataPtr rd, int nvars,
                              const std::vector<std::pair<Weight, EvalPoint>>& factors, Field f,
                              std::optional<Caps> caps) {
  if (nvars < 1) fail(ErrorCode::InvalidArgument, "loop modules need at least one variable");
  Weight lam = Weight::zero(rd->rank());
  for (const auto& [w, pt] : factors) {
    if (w.rank() != rd->rank() || static_cast<int>(pt.a.size()) != nvars)
      fail(ErrorCode::InvalidArgument, "factor shape does not match rank/variables");
    if (!w.dominant()) fail(ErrorCode::NotDominant, "weight " + w.str() + " is not dominant");
    for (const auto& a : pt.a) {
      if (a.field() != f) fail(ErrorCode::FieldMismatch, "point lies in a different field");
      if (a.is_zero()) fail(ErrorCode::ZeroEvalPoint, "evaluation point has a zero entry");
    }
    lam = lam + w;
  }
  return build(std::move(rd), Variant::Loop, nvars, f, lam, factors, caps);
}

}  // namespace hyper
