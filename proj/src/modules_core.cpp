#include <algorithm>
#include <functional>
#include <set>

#include "hyper/modules.hpp"

namespace hyper {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::FiniteType: return "finite";
    case Variant::Graded: return "graded";
    case Variant::Loop: return "loop";
  }
  return "?";
}

std::string EvalPoint::str() const {
  std::string s = "(";
  for (std::size_t j = 0; j < a.size(); ++j) s += (j ? "," : "") + a[j].str();
  return s + ")";
}

LWeight LWeight::trivial(Field f, int rank, int nvars) {
  LWeight w;
  w.field = f;
  w.rank = rank;
  w.nvars = nvars;
  w.polys.assign(rank, std::vector<std::vector<Scalar>>(nvars, {Scalar(f, 1L)}));
  return w;
}

LWeight LWeight::from_points(Field f, int rank, int nvars,
                             const std::vector<std::pair<Weight, EvalPoint>>& factors) {
  LWeight w = trivial(f, rank, nvars);
  for (const auto& [lam, pt] : factors) {
    if (lam.rank() != rank || static_cast<int>(pt.a.size()) != nvars)
      fail(ErrorCode::InvalidArgument, "factor shape does not match rank/variables");
    if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < nvars; ++j) {
        if (pt.a[j].is_zero()) fail(ErrorCode::ZeroEvalPoint, "evaluation point has a zero entry");
        auto& p = w.polys[i][j];
        for (int e = 0; e < lam[i]; ++e) {
          std::vector<Scalar> q(p.size() + 1, Scalar(f, 0L));
          for (std::size_t d = 0; d < p.size(); ++d) {
            q[d] += p[d];
            q[d + 1] -= p[d] * pt.a[j];
          }
          p = std::move(q);
        }
      }
  }
  return w;
}

Weight LWeight::weight() const {
  Weight out = Weight::zero(rank);
  for (int i = 0; i < rank; ++i) {
    int deg = -1;
    for (int j = 0; j < nvars; ++j) {
      const auto& p = polys[i][j];
      if (p.empty() || !p[0].is_one())
        fail(ErrorCode::InvalidArgument, "Drinfeld polynomial must have constant term 1");
      int d = static_cast<int>(p.size()) - 1;
      while (d > 0 && p[d].is_zero()) --d;
      if (deg >= 0 && d != deg)
        fail(ErrorCode::InvalidArgument, "Drinfeld polynomials of one node must share a degree");
      deg = d;
    }
    out.coords[i] = std::max(deg, 0);
  }
  return out;
}

std::string LWeight::str() const {
  std::string s;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < nvars; ++j) {
      if (!s.empty()) s += "; ";
      s += "w[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]=";
      std::string poly;
      for (std::size_t d = 0; d < polys[i][j].size(); ++d) {
        const Scalar& c = polys[i][j][d];
        if (c.is_zero()) continue;
        if (!poly.empty()) poly += " + ";
        poly += c.str();
        if (d > 0) poly += "u^" + std::to_string(d);
      }
      s += poly.empty() ? "0" : poly;
    }
  return s;
}

bool operator==(const LWeight& a, const LWeight& b) {
  if (a.field != b.field || a.rank != b.rank || a.nvars != b.nvars) return false;
  auto trimmed = [](std::vector<Scalar> p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
  };
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.nvars; ++j)
      if (trimmed(a.polys[i][j]) != trimmed(b.polys[i][j])) return false;
  return true;
}

Caps Caps::defaults(const RootData& rd, const Weight& lam) {
  Caps c;
  c.max_power = rd.pair(lam, rd.theta()) + 1;
  int m = 0;
  for (int i = 0; i < rd.rank(); ++i) m = std::max(m, lam[i]);
  c.max_height = std::max(1, m);
  return c;
}

namespace {

std::string generator_key(const Generator& g) {
  std::string s = std::to_string(static_cast<int>(g.kind)) + ":" + std::to_string(g.index) + ":" +
                  std::to_string(g.power) + ":";
  for (int j = 0; j < g.mono.n; ++j) s += std::to_string(g.mono[j]) + ",";
  return s;
}

}  // namespace

const Matrix& ModuleRep::action(const Generator& g) const {
  const std::string key = generator_key(g);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (!source_) fail(ErrorCode::InvalidArgument, "module has no action source");
  return cache_.emplace(key, source_->matrix(g)).first->second;
}

std::vector<Scalar> ModuleRep::apply(const Generator& g, const std::vector<Scalar>& x) const {
  if (auto it = cache_.find(generator_key(g)); it != cache_.end()) return it->second.apply(x);
  if (!source_) fail(ErrorCode::InvalidArgument, "module has no action source");
  return source_->apply(g, x);
}

std::vector<Scalar> ModuleRep::unit(int i) const {
  std::vector<Scalar> v(dim(), Scalar(field, 0L));
  v.at(i) = Scalar(field, 1L);
  return v;
}

std::map<Weight, std::vector<int>> ModuleRep::weight_decomp() const {
  std::map<Weight, std::vector<int>> out;
  for (int i = 0; i < dim(); ++i) out[weights[i]].push_back(i);
  return out;
}

std::vector<PBWMonomial> enumerate_spanning(const RootData& rd, const Weight& lam, Variant v,
                                            int nvars) {
  if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
  const int n = v == Variant::FiniteType ? 0 : nvars;
  const Weight bound = lam - rd.act(rd.w0(), lam);
  std::vector<int> bound_coords;
  {
    std::vector<mpq_class> c;
    rd.root_coordinates(bound, &c);
    for (auto& x : c) bound_coords.push_back(static_cast<int>(x.get_num().get_si()));
  }
  // slots in PBW order: root index, then exponent
  std::vector<Generator> slots;
  for (int b = 0; b < rd.num_positive_roots(); ++b) {
    const int l = rd.pair(lam, b);
    if (l <= 0) continue;
    MultiExp s(n);
    std::function<void(int)> rec = [&](int j) {
      if (j == n) {
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
  std::vector<PBWMonomial> out;
  std::vector<Generator> word;
  std::vector<int> used(rd.rank(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(PBWMonomial{word});
    for (std::size_t i = from; i < slots.size(); ++i) {
      const auto& root = rd.root(slots[i].index);
      for (int k = 1;; ++k) {
        bool ok = true;
        for (int c = 0; c < rd.rank(); ++c)
          if (used[c] + k * root[c] > bound_coords[c]) ok = false;
        if (!ok) break;
        for (int c = 0; c < rd.rank(); ++c) used[c] += k * root[c];
        Generator g = slots[i];
        g.power = k;
        word.push_back(g);
        rec(i + 1);
        word.pop_back();
        for (int c = 0; c < rd.rank(); ++c) used[c] -= k * root[c];
      }
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const PBWMonomial& a, const PBWMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return PBWLess{}(a, b);
  });
  return out;
}

std::map<Weight, long> character(const ModuleRep& m) {
  std::map<Weight, long> out;
  for (const auto& w : m.weights) ++out[w];
  return out;
}

std::map<std::pair<Weight, MultiExp>, long> graded_character(const ModuleRep& m) {
  if (!m.degrees) fail(ErrorCode::InvalidArgument, "module carries no grading");
  std::map<std::pair<Weight, MultiExp>, long> out;
  for (int i = 0; i < m.dim(); ++i) ++out[{m.weights[i], (*m.degrees)[i]}];
  return out;
}

int orbit_dimension(const ModuleRep& m, const std::vector<Scalar>& x,
                    const std::vector<Generator>& gens) {
  auto to_sparse = [&](const std::vector<Scalar>& v) {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      if (!v[i].is_zero()) s.emplace(i, v[i]);
    return s;
  };
  auto to_dense = [&](const SparseVec& s) {
    std::vector<Scalar> v(m.dim(), Scalar(m.field, 0L));
    for (const auto& [i, c] : s) v[i] = c;
    return v;
  };
  EchelonSpace span(m.field);
  std::vector<SparseVec> queue;
  if (span.insert(to_sparse(x))) queue.push_back(to_sparse(x));
  while (!queue.empty()) {
    SparseVec w = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : gens) {
      SparseVec y = to_sparse(m.action(g).apply(to_dense(w)));
      if (span.insert(y)) queue.push_back(y);
    }
  }
  return static_cast<int>(span.rank());
}

}  // namespace hyper
