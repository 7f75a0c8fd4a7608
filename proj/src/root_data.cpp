#include "hyper/root_data.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace hyper {

bool Weight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

Weight Weight::operator+(const Weight& o) const {
  if (o.rank() != rank()) fail(ErrorCode::ContextMismatch, "weights of different rank");
  Weight r(*this);
  for (int i = 0; i < rank(); ++i) r.coords[i] += o.coords[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const {
  Weight r(*this);
  for (auto& c : r.coords) c = -c;
  return r;
}

Weight Weight::scaled(int k) const {
  Weight r(*this);
  for (auto& c : r.coords) c *= k;
  return r;
}

std::string Weight::str() const {
  std::string s = "[";
  for (int i = 0; i < rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords[i]);
  }
  return s + "]";
}

namespace {

using IntMatrix = std::vector<std::vector<int>>;

IntMatrix mat_zero(int n) { return IntMatrix(n, std::vector<int>(n, 0)); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix c = mat_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k])
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix mat_sub(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

// Rational inverse by Gauss-Jordan.
std::vector<std::vector<mpq_class>> invert(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<mpq_class>> out(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

}  // namespace

std::shared_ptr<const RootData> RootData::build(char letter, int rank) {
  if (letter != 'A')
    fail(ErrorCode::UnsupportedType, std::string("type ") + letter + " is not implemented");
  if (rank < 1 || rank > 3)
    fail(ErrorCode::UnsupportedType, "type A rank must be 1, 2 or 3");

  std::shared_ptr<RootData> rd(new RootData());
  rd->letter_ = letter;
  rd->rank_ = rank;
  const int N = rank + 1;

  // Positive root e_a - e_b (a < b) has simple-root coordinates 1 on [a, b).
  struct RootInfo {
    std::vector<int> coords;
    int a, b;
  };
  std::vector<RootInfo> info;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      std::vector<int> c(rank, 0);
      for (int k = a; k < b; ++k) c[k] = 1;
      info.push_back({c, a, b});
    }
  std::sort(info.begin(), info.end(), [](const RootInfo& x, const RootInfo& y) {
    int hx = 0, hy = 0;
    for (int v : x.coords) hx += v;
    for (int v : y.coords) hy += v;
    if (hx != hy) return hx < hy;
    return x.coords > y.coords;  // a1 before a2
  });
  for (const auto& r : info) rd->roots_.push_back(r.coords);

  rd->cartan_ = mat_zero(rank);
  for (int i = 0; i < rank; ++i) {
    rd->cartan_[i][i] = 2;
    if (i > 0) rd->cartan_[i][i - 1] = -1;
    if (i + 1 < rank) rd->cartan_[i][i + 1] = -1;
  }
  rd->cartan_inverse_ = invert(rd->cartan_);

  const int P = rd->num_positive_roots();
  rd->simple_index_.assign(rank, -1);
  for (int r = 0; r < P; ++r) {
    rd->root_weights_.push_back(rd->root_lattice_weight(rd->roots_[r]));
    if (rd->root_height(r) == 1)
      for (int i = 0; i < rank; ++i)
        if (rd->roots_[r][i] == 1) rd->simple_index_[i] = r;
    if (rd->root_height(r) > rd->root_height(rd->theta_)) rd->theta_ = r;
  }

  // Matrix realization in sl_N: x_b^+ = E_ab, x_b^- = E_ba, h_i = E_ii - E_{i+1,i+1}.
  const int D = rd->dim();
  std::vector<IntMatrix> mats(D);
  for (int r = 0; r < P; ++r) {
    IntMatrix up = mat_zero(N), dn = mat_zero(N);
    up[info[r].a][info[r].b] = 1;
    dn[info[r].b][info[r].a] = 1;
    mats[rd->raise_index(r)] = up;
    mats[rd->lower_index(r)] = dn;
  }
  for (int i = 0; i < rank; ++i) {
    IntMatrix h = mat_zero(N);
    h[i][i] = 1;
    h[i + 1][i + 1] = -1;
    mats[rd->cartan_index(i)] = h;
  }

  // Decompose a commutator back into the basis: off-diagonal entries are root
  // vectors, the diagonal is a combination of h_i (cumulative sums).
  auto decompose = [&](const IntMatrix& m) {
    BasisCombination out;
    for (int r = 0; r < P; ++r) {
      int u = m[info[r].a][info[r].b];
      int d = m[info[r].b][info[r].a];
      if (u) out.emplace_back(rd->raise_index(r), u);
      if (d) out.emplace_back(rd->lower_index(r), d);
    }
    int running = 0;
    for (int i = 0; i < rank; ++i) {
      running += m[i][i];
      if (running) out.emplace_back(rd->cartan_index(i), running);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  rd->brackets_.assign(D, std::vector<BasisCombination>(D));
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y)
      rd->brackets_[x][y] =
          decompose(mat_sub(mat_mul(mats[x], mats[y]), mat_mul(mats[y], mats[x])));

  // Weyl group by breadth-first search over simple reflections.
  IntMatrix id = mat_zero(rank);
  for (int i = 0; i < rank; ++i) id[i][i] = 1;
  std::vector<IntMatrix> simple(rank);
  for (int i = 0; i < rank; ++i) {
    // s_i(mu)_k = mu_k - mu_i * A[k][i]
    IntMatrix s = id;
    for (int k = 0; k < rank; ++k) s[k][i] -= rd->cartan_[k][i];
    simple[i] = s;
  }
  std::map<IntMatrix, int> seen{{id, 0}};
  rd->weyl_.push_back(id);
  rd->weyl_length_.push_back(0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      IntMatrix m = mat_mul(simple[i], rd->weyl_[w]);
      if (seen.count(m)) continue;
      int idx = static_cast<int>(rd->weyl_.size());
      seen.emplace(m, idx);
      rd->weyl_.push_back(m);
      rd->weyl_length_.push_back(rd->weyl_length_[w] + 1);
      queue.push_back(idx);
    }
  }
  rd->w0_ = static_cast<int>(
      std::max_element(rd->weyl_length_.begin(), rd->weyl_length_.end()) -
      rd->weyl_length_.begin());

  rd->verify();
  return rd;
}

void RootData::verify() const {
  const int D = dim();
  auto coeff = [&](const BasisCombination& c, int b) {
    for (auto [k, v] : c)
      if (k == b) return v;
    return 0;
  };
  // Jacobi identity on all triples.
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y)
      for (int z = 0; z < D; ++z) {
        std::vector<int> acc(D, 0);
        auto add_nested = [&](int a, int b, int c) {
          for (auto [k, v] : bracket(b, c))
            for (auto [m, u] : bracket(a, k)) acc[m] += v * u;
        };
        add_nested(x, y, z);
        add_nested(y, z, x);
        add_nested(z, x, y);
        for (int v : acc)
          if (v) fail(ErrorCode::InvalidArgument, "structure constants violate Jacobi");
      }
  // [x_a^+, x_a^-] = h_a and [h_i, x_a^+] = a(h_i) x_a^+.
  for (int r = 0; r < num_positive_roots(); ++r) {
    const auto& c = bracket(raise_index(r), lower_index(r));
    for (int i = 0; i < rank_; ++i)
      if (coeff(c, cartan_index(i)) != roots_[r][i])
        fail(ErrorCode::InvalidArgument, "coroot mismatch");
    for (int i = 0; i < rank_; ++i)
      if (coeff(bracket(cartan_index(i), raise_index(r)), raise_index(r)) !=
          root_weights_[r][i])
        fail(ErrorCode::InvalidArgument, "root weight mismatch");
  }
}

int RootData::root_height(int r) const {
  int h = 0;
  for (int v : roots_[r]) h += v;
  return h;
}

int RootData::find_root(const std::vector<int>& coords) const {
  for (int r = 0; r < num_positive_roots(); ++r)
    if (roots_[r] == coords) return r;
  return -1;
}

int RootData::pair(const Weight& lam, int r) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += roots_[r][i] * lam[i];
  return s;
}

BasisKind RootData::kind(int b) const {
  const int P = num_positive_roots();
  if (b < P) return BasisKind::Lower;
  if (b < P + rank_) return BasisKind::Cartan;
  return BasisKind::Raise;
}

int RootData::sub_index(int b) const {
  const int P = num_positive_roots();
  switch (kind(b)) {
    case BasisKind::Lower: return b;
    case BasisKind::Cartan: return b - P;
    case BasisKind::Raise: return b - P - rank_;
  }
  return -1;
}

Weight RootData::basis_weight(int b) const {
  switch (kind(b)) {
    case BasisKind::Lower: return -root_weights_[sub_index(b)];
    case BasisKind::Cartan: return Weight::zero(rank_);
    case BasisKind::Raise: return root_weights_[sub_index(b)];
  }
  return Weight::zero(rank_);
}

std::string RootData::root_name(int r) const {
  std::string s;
  for (int i = 0; i < rank_; ++i) {
    if (!roots_[r][i]) continue;
    if (!s.empty()) s += '+';
    if (roots_[r][i] != 1) s += std::to_string(roots_[r][i]);
    s += "a" + std::to_string(i + 1);
  }
  return s;
}

std::string RootData::basis_name(int b) const {
  switch (kind(b)) {
    case BasisKind::Lower: return "xm[" + root_name(sub_index(b)) + "]";
    case BasisKind::Cartan: return "h[" + std::to_string(sub_index(b) + 1) + "]";
    case BasisKind::Raise: return "xp[" + root_name(sub_index(b)) + "]";
  }
  return "?";
}

Weight RootData::act(int w, const Weight& mu) const {
  const auto& m = weyl_[w];
  Weight out = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out.coords[i] += m[i][j] * mu[j];
  return out;
}

Weight RootData::reflect(int i, const Weight& mu) const {
  Weight out(mu);
  for (int k = 0; k < rank_; ++k) out.coords[k] -= mu[i] * cartan_[k][i];
  return out;
}

Weight RootData::dominant_conjugate(const Weight& mu) const {
  Weight cur(mu);
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < rank_; ++i)
      if (cur[i] < 0) {
        cur = reflect(i, cur);
        changed = true;
      }
  }
  return cur;
}

Weight RootData::rho() const { return Weight(std::vector<int>(rank_, 1)); }

Weight RootData::simple_root_weight(int i) const {
  Weight w = Weight::zero(rank_);
  for (int k = 0; k < rank_; ++k) w.coords[k] = cartan_[k][i];
  return w;
}

Weight RootData::root_lattice_weight(const std::vector<int>& coeffs) const {
  Weight w = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int k = 0; k < rank_; ++k) w.coords[k] += coeffs[i] * cartan_[k][i];
  return w;
}

bool RootData::root_coordinates(const Weight& diff, std::vector<mpq_class>* coords) const {
  std::vector<mpq_class> c(rank_, 0);
  bool integral = true;
  for (int i = 0; i < rank_; ++i) {
    for (int k = 0; k < rank_; ++k) c[i] += cartan_inverse_[i][k] * diff[k];
    c[i].canonicalize();
    if (c[i].get_den() != 1) integral = false;
  }
  if (coords) *coords = c;
  return integral;
}

mpq_class RootData::inner(const Weight& mu, const Weight& nu) const {
  mpq_class s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += mu[i] * cartan_inverse_[i][j] * nu[j];
  return s;
}

bool dominance_leq(const RootData& rd, const Weight& mu, const Weight& lam) {
  std::vector<mpq_class> c;
  if (!rd.root_coordinates(lam - mu, &c)) return false;
  return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x >= 0; });
}

std::vector<Weight> weight_support(const RootData& rd, const Weight& lam) {
  if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
  std::set<Weight> seen{lam};
  std::deque<Weight> queue{lam};
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    for (int i = 0; i < rd.rank(); ++i) {
      Weight nu = mu - rd.simple_root_weight(i);
      if (seen.count(nu)) continue;
      if (!dominance_leq(rd, rd.dominant_conjugate(nu), lam)) continue;
      seen.insert(nu);
      queue.push_back(nu);
    }
  }
  return {seen.rbegin(), seen.rend()};
}

Character weyl_character(const RootData& rd, const Weight& lam) {
  std::vector<Weight> support = weight_support(rd, lam);
  // Process by increasing depth below lam.
  auto depth = [&](const Weight& mu) {
    std::vector<mpq_class> c;
    rd.root_coordinates(lam - mu, &c);
    mpq_class s = 0;
    for (auto& x : c) s += x;
    return s;
  };
  std::sort(support.begin(), support.end(),
            [&](const Weight& a, const Weight& b) { return depth(a) < depth(b); });
  const Weight rho = rd.rho();
  const mpq_class top = rd.inner(lam + rho, lam + rho);
  std::map<Weight, mpq_class> mult{{lam, 1}};
  for (const Weight& mu : support) {
    if (mu == lam) continue;
    mpq_class rhs = 0;
    for (int r = 0; r < rd.num_positive_roots(); ++r) {
      const Weight& a = rd.root_weight(r);
      for (Weight nu = mu + a;; nu = nu + a) {
        auto it = mult.find(nu);
        if (it == mult.end()) break;
        rhs += 2 * it->second * rd.inner(nu, a);
      }
    }
    mpq_class denom = top - rd.inner(mu + rho, mu + rho);
    mult[mu] = rhs / denom;
  }
  Character out;
  for (auto& [mu, m] : mult) {
    if (m.get_den() != 1 || m < 0)
      fail(ErrorCode::NonIntegral, "Freudenthal produced a non-integral multiplicity");
    if (m != 0) out[mu] = m.get_num().get_si();
  }
  return out;
}

Character weyl_character_kostant(const RootData& rd, const Weight& lam) {
  if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
  const int P = rd.num_positive_roots();
  // Kostant partition function on simple-root coordinates.
  std::map<std::pair<int, std::vector<int>>, mpz_class> memo;
  std::function<mpz_class(int, const std::vector<int>&)> partitions =
      [&](int r, const std::vector<int>& v) -> mpz_class {
    for (int x : v)
      if (x < 0) return 0;
    if (r == P) return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; }) ? 1 : 0;
    auto key = std::make_pair(r, v);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    mpz_class total = 0;
    std::vector<int> cur(v);
    for (;;) {
      total += partitions(r + 1, cur);
      bool ok = true;
      for (int i = 0; i < rd.rank(); ++i) {
        cur[i] -= rd.root(r)[i];
        if (cur[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    memo.emplace(key, total);
    return total;
  };
  const Weight rho = rd.rho();
  Character out;
  for (const Weight& mu : weight_support(rd, lam)) {
    mpz_class m = 0;
    for (int w = 0; w < rd.weyl_order(); ++w) {
      Weight diff = rd.act(w, lam + rho) - (mu + rho);
      std::vector<mpq_class> c;
      if (!rd.root_coordinates(diff, &c)) continue;
      std::vector<int> v;
      for (auto& x : c) v.push_back(static_cast<int>(x.get_num().get_si()));
      mpz_class p = partitions(0, v);
      m += (rd.weyl_length(w) % 2 ? -1 : 1) * p;
    }
    if (m != 0) out[mu] = m.get_si();
  }
  return out;
}

mpz_class weyl_dimension(const RootData& rd, const Weight& lam) {
  if (!lam.dominant()) fail(ErrorCode::NotDominant, "weight " + lam.str() + " is not dominant");
  mpq_class d = 1;
  const Weight rho = rd.rho();
  for (int r = 0; r < rd.num_positive_roots(); ++r)
  {
    mpq_class f(rd.pair(lam + rho, r), rd.pair(rho, r));
    f.canonicalize();
    d *= f;
  }
  return d.get_num();
}

}  // namespace hyper
