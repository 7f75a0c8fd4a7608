#include "hyper/linalg.hpp"

#include <algorithm>

namespace hyper {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, v * a);
    if (!inserted) {
      it->second += v * a;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
  SparseVec out;
  if (a.is_zero()) return out;
  for (const auto& [i, v] : x) out.emplace(i, v * a);
  return out;
}

SparseVec EchelonSpace::reduce(SparseVec v) const {
  if (rows_.empty()) return v;
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const int key = it->first;
    const Scalar c = -it->second;
    axpy(v, c, row->second);
    it = v.upper_bound(key);
  }
  return v;
}

bool EchelonSpace::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const int piv = v.begin()->first;
  const Scalar inv = v.begin()->second.inverse();
  for (auto& [i, c] : v) c *= inv;
  // keep existing rows reduced with respect to the new pivot
  for (auto& [p, row] : rows_) {
    auto hit = row.find(piv);
    if (hit != row.end()) {
      const Scalar c = -hit->second;
      axpy(row, c, v);
    }
  }
  rows_.emplace(piv, std::move(v));
  return true;
}

Matrix::Matrix(Field f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * cols, Scalar(f, 0L)) {}

Matrix Matrix::identity(Field f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(f, 1L);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(field_, -1L)); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(*this);
  for (auto& x : r.a_) x *= c;
  return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  std::vector<Scalar> out(rows_, Scalar(field_, 0L));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    const Scalar inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      const Scalar f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Scalar>> kernel(const Matrix& m) {
  Matrix e(m);
  auto piv = rref(e);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar(m.field(), 0L));
    v[f] = Scalar(m.field(), 1L);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -e.at(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const int n = m.rows();
  Scalar det(m.field(), 1L);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Scalar(m.field(), 0L);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    const Scalar inv = m.at(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      const Scalar f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

namespace {

using Poly = std::vector<Scalar>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace

std::vector<Scalar> char_poly(const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::InvalidArgument, "char_poly of a non-square matrix");
  const int n = a.rows();
  const Field f = a.field();
  Matrix h(a);
  // similarity reduction to upper Hessenberg form
  for (int j = 0; j + 2 < n; ++j) {
    int p = -1;
    for (int i = j + 1; i < n; ++i)
      if (!h.at(i, j).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(h.at(p, k), h.at(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(h.at(k, p), h.at(k, j + 1));
    }
    const Scalar inv = h.at(j + 1, j).inverse();
    for (int i = j + 2; i < n; ++i) {
      if (h.at(i, j).is_zero()) continue;
      const Scalar m = h.at(i, j) * inv;
      for (int k = 0; k < n; ++k) h.at(i, k) -= m * h.at(j + 1, k);
      for (int k = 0; k < n; ++k) h.at(k, j + 1) += m * h.at(k, i);
    }
  }
  std::vector<Poly> p(n + 1);
  p[0] = {Scalar(f, 1L)};
  for (int k = 0; k < n; ++k) {
    Poly next(k + 2, Scalar(f, 0L));
    for (int d = 0; d <= k; ++d) {
      next[d + 1] += p[k][d];
      next[d] -= h.at(k, k) * p[k][d];
    }
    Scalar prod(f, 1L);
    for (int i = k - 1; i >= 0; --i) {
      prod *= h.at(i + 1, i);
      if (prod.is_zero()) break;
      const Scalar c = prod * h.at(i, k);
      for (int d = 0; d <= i; ++d) next[d] -= c * p[i][d];
    }
    p[k + 1] = std::move(next);
  }
  return p[n];
}

namespace {

Scalar eval_poly(const Poly& c, const Scalar& x) {
  Scalar acc(x.field(), 0L);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& c) {
  Poly d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Scalar(c[i].field(), static_cast<long>(i)));
  trim(d);
  return d;
}

// remainder of a by b (b nonzero, trimmed)
Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  const Scalar inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const Scalar q = a.back() * inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    trim(a);
  }
  return a;
}

Poly poly_div(Poly a, const Poly& b) {
  trim(a);
  const Scalar inv = b.back().inverse();
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1, Scalar(b[0].field(), 0L));
  while (a.size() >= b.size()) {
    const Scalar c = a.back() * inv;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Scalar inv = a.back().inverse();
    for (auto& x : a) x *= inv;
  }
  return a;
}

std::vector<mpz_class> integer_poly(const Poly& c) {
  mpz_class l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rational_value().get_den_mpz_t());
  std::vector<mpz_class> out;
  for (const auto& x : c) out.push_back(mpz_class(x.rational_value() * l));
  return out;
}

std::uint64_t eval_mod(const std::vector<mpz_class>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    mpz_class r = *it % p;
    if (r < 0) r += p;
    acc = (acc * x + r.get_ui()) % p;
  }
  return acc;
}

mpz_class eval_mpz_mod(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % m;
  if (acc < 0) acc += m;
  return acc;
}

// a/b = r mod m with |a|, |b| <= sqrt(m/2)
std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m) {
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

std::vector<Scalar> rational_roots(const Poly& sqfree) {
  const Field q = Field::rationals();
  std::vector<Scalar> roots;
  Poly s = sqfree;
  if (s.size() >= 2 && s[0].is_zero()) {
    roots.push_back(Scalar(q, 0L));
    s.erase(s.begin());
  }
  if (s.size() < 2) return roots;
  auto c = integer_poly(s);
  auto dc = integer_poly(derivative(s));
  mpz_class bound = 1;
  for (const auto& x : c) bound = std::max(bound, mpz_class(abs(x)));
  const mpz_class target = 2 * bound * bound + 1;
  for (std::uint64_t p = 101;; p += 2) {
    if (!is_prime(p)) continue;
    if (c.back() % p == 0) continue;
    // squarefree mod p: no common root with the derivative
    std::vector<std::uint64_t> mod_roots;
    bool ok = true;
    for (std::uint64_t x = 0; x < p && ok; ++x)
      if (eval_mod(c, x, p) == 0) {
        if (eval_mod(dc, x, p) == 0) ok = false;
        mod_roots.push_back(x);
      }
    if (!ok) continue;
    for (std::uint64_t r0 : mod_roots) {
      mpz_class m = p, r = r0;
      while (m < target) {
        mpz_class m2 = m * m;
        mpz_class fv = eval_mpz_mod(c, r, m2);
        mpz_class dv = eval_mpz_mod(dc, r, m2);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m2.get_mpz_t());
        r = (r - fv * inv) % m2;
        if (r < 0) r += m2;
        m = m2;
      }
      auto cand = rational_reconstruct(r, m);
      if (!cand) continue;
      Scalar x(q, *cand);
      if (eval_poly(s, x).is_zero()) roots.push_back(x);
    }
    break;
  }
  return roots;
}

}  // namespace

std::vector<Scalar> poly_roots(const std::vector<Scalar>& coeffs) {
  Poly c(coeffs);
  trim(c);
  if (c.size() < 2) return {};
  const Field f = c[0].field();
  std::vector<Scalar> roots;
  if (f.is_rational()) {
    Poly g = poly_gcd(c, derivative(c));
    Poly sq = g.size() > 1 ? poly_div(c, g) : c;
    roots = rational_roots(sq);
  } else {
    for (std::uint64_t x = 0; x < f.p; ++x) {
      Scalar s(f, static_cast<long>(x));
      if (eval_poly(c, s).is_zero()) roots.push_back(s);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) {
    if (a.field().is_rational()) return a.rational_value() < b.rational_value();
    return a.residue_value() < b.residue_value();
  });
  return roots;
}

int root_multiplicity(const std::vector<Scalar>& coeffs, const Scalar& r) {
  Poly c(coeffs);
  trim(c);
  int m = 0;
  while (c.size() >= 2 && eval_poly(c, r).is_zero()) {
    // synthetic division by (x - r)
    Poly q(c.size() - 1, Scalar(r.field(), 0L));
    Scalar acc(r.field(), 0L);
    for (std::size_t i = c.size(); i-- > 1;) {
      acc = acc * r + c[i];
      q[i - 1] = acc;
    }
    c = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace hyper
