#include "hyper/laurent.hpp"

#include <numeric>

namespace hyper {

MultiExp::MultiExp(int nvars) {
  if (nvars < 0 || nvars > kMaxVars)
    fail(ErrorCode::InvalidArgument, "variable count must be in [0, " +
                                         std::to_string(kMaxVars) + "]");
  n = static_cast<std::uint8_t>(nvars);
}

MultiExp::MultiExp(std::initializer_list<int> exps) : MultiExp(static_cast<int>(exps.size())) {
  int j = 0;
  for (int x : exps) e[j++] = static_cast<std::int16_t>(x);
}

MultiExp MultiExp::unit(int nvars, int j) {
  MultiExp m(nvars);
  m.e[j] = 1;
  return m;
}

bool MultiExp::is_one() const noexcept {
  for (int j = 0; j < n; ++j)
    if (e[j] != 0) return false;
  return true;
}

bool MultiExp::nonnegative() const noexcept {
  for (int j = 0; j < n; ++j)
    if (e[j] < 0) return false;
  return true;
}

int MultiExp::max() const noexcept {
  int m = n ? e[0] : 0;
  for (int j = 1; j < n; ++j) m = std::max<int>(m, e[j]);
  return m;
}

int MultiExp::min() const noexcept {
  int m = n ? e[0] : 0;
  for (int j = 1; j < n; ++j) m = std::min<int>(m, e[j]);
  return m;
}

int MultiExp::abs_sum() const noexcept {
  int s = 0;
  for (int j = 0; j < n; ++j) s += std::abs(e[j]);
  return s;
}

int MultiExp::sum() const noexcept {
  int s = 0;
  for (int j = 0; j < n; ++j) s += e[j];
  return s;
}

MultiExp MultiExp::operator+(const MultiExp& o) const {
  if (n != o.n) fail(ErrorCode::ContextMismatch, "exponent vectors of different length");
  MultiExp r(*this);
  for (int j = 0; j < n; ++j) r.e[j] = static_cast<std::int16_t>(e[j] + o.e[j]);
  return r;
}

MultiExp MultiExp::operator-(const MultiExp& o) const { return *this + (-o); }

MultiExp MultiExp::operator-() const {
  MultiExp r(*this);
  for (int j = 0; j < n; ++j) r.e[j] = static_cast<std::int16_t>(-e[j]);
  return r;
}

MultiExp MultiExp::scaled(int k) const {
  MultiExp r(*this);
  for (int j = 0; j < n; ++j) r.e[j] = static_cast<std::int16_t>(e[j] * k);
  return r;
}

std::string MultiExp::str() const {
  std::string out;
  for (int j = 0; j < n; ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += "t" + std::to_string(j + 1);
    if (e[j] != 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

Scalar eval_monomial(const MultiExp& b, std::span<const Scalar> a) {
  if (static_cast<int>(a.size()) != b.n)
    fail(ErrorCode::InvalidArgument, "evaluation point has wrong length");
  if (a.empty()) return Scalar(Field::rationals(), 1L);
  Scalar out(a[0].field(), 1L);
  for (int j = 0; j < b.n; ++j) {
    if (b.e[j] < 0 && a[j].is_zero())
      fail(ErrorCode::ZeroAtNegativeExponent,
           "t" + std::to_string(j + 1) + " has negative exponent but a_" + std::to_string(j + 1) +
               " = 0");
    out *= a[j].pow(b.e[j]);
  }
  return out;
}

bool is_primitive(const MultiExp& b) {
  if (b.is_one()) fail(ErrorCode::NotAMonomial, "the monomial 1 has no primitivity");
  int g = 0;
  for (int j = 0; j < b.n; ++j) g = std::gcd(g, std::abs(b.e[j]));
  return g == 1;
}

int primitive_root(const MultiExp& b, MultiExp* root) {
  if (b.is_one()) fail(ErrorCode::NotAMonomial, "the monomial 1 has no primitive root");
  int g = 0;
  for (int j = 0; j < b.n; ++j) g = std::gcd(g, std::abs(b.e[j]));
  if (root) {
    *root = b;
    for (int j = 0; j < b.n; ++j) root->e[j] = static_cast<std::int16_t>(b.e[j] / g);
  }
  return g;
}

LaurentPoly LaurentPoly::monomial(Field f, const MultiExp& m, RingKind kind) {
  LaurentPoly p(f, m.n, kind);
  p.add_term(m, Scalar(f, 1L));
  return p;
}

void LaurentPoly::add_term(const MultiExp& m, const Scalar& c) {
  if (m.n != nvars_) fail(ErrorCode::ContextMismatch, "monomial has wrong variable count");
  if (kind_ == RingKind::Poly && !m.nonnegative())
    fail(ErrorCode::ContextMismatch, "negative exponent in polynomial context");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r(field_, nvars_, kind_ == RingKind::Laurent || o.kind_ == RingKind::Laurent
                                    ? RingKind::Laurent
                                    : RingKind::Poly);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 + m2, c1 * c2);
  return r;
}

Scalar LaurentPoly::eval(std::span<const Scalar> a) const {
  Scalar s(field_, 0L);
  for (const auto& [m, c] : terms_) s += c * eval_monomial(m, a);
  return s;
}

bool LaurentPoly::in_augmentation() const {
  for (const auto& [m, c] : terms_)
    if (m.is_one()) return false;
  return true;
}

bool LaurentPoly::nonconstant() const {
  for (const auto& [m, c] : terms_)
    if (!m.is_one()) return true;
  return false;
}

TruncSeries<Scalar> series_exp(const TruncSeries<Scalar>& x) {
  const Field f = x[0].field();
  if (!x[0].is_zero()) fail(ErrorCode::InvalidArgument, "exp needs zero constant term");
  const int N = x.order();
  TruncSeries<Scalar> y(N, Scalar(f, 0L));
  y[0] = Scalar(f, 1L);
  // r y_r = sum_{s=1}^r s x_s y_{r-s}
  for (int r = 1; r <= N; ++r) {
    Scalar acc(f, 0L);
    for (int s = 1; s <= r; ++s) acc += Scalar(f, static_cast<long>(s)) * x[s] * y[r - s];
    y[r] = acc / Scalar(f, static_cast<long>(r));
  }
  return y;
}

TruncSeries<Scalar> series_log(const TruncSeries<Scalar>& y) {
  const Field f = y[0].field();
  if (!y[0].is_one()) fail(ErrorCode::InvalidArgument, "log needs constant term 1");
  const int N = y.order();
  TruncSeries<Scalar> x(N, Scalar(f, 0L));
  // r x_r = r y_r - sum_{s=1}^{r-1} s x_s y_{r-s}
  for (int r = 1; r <= N; ++r) {
    Scalar acc = Scalar(f, static_cast<long>(r)) * y[r];
    for (int s = 1; s < r; ++s) acc -= Scalar(f, static_cast<long>(s)) * x[s] * y[r - s];
    x[r] = acc / Scalar(f, static_cast<long>(r));
  }
  return x;
}

}  // namespace hyper
