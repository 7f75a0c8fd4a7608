#include "hyper/scalar.hpp"

#include <array>
#include <climits>
#include <cstdint>

namespace hyper {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroAtNegativeExponent: return "ZeroAtNegativeExponent";
    case ErrorCode::NotAMonomial: return "NotAMonomial";
    case ErrorCode::NonIntegralDenominator: return "NonIntegralDenominator";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::NotDominant: return "NotDominant";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::CharTwoUnsupported: return "CharTwoUnsupported";
    case ErrorCode::CharPositiveUnsupported: return "CharPositiveUnsupported";
    case ErrorCode::ZeroEvalPoint: return "ZeroEvalPoint";
    case ErrorCode::NotHighestLWeight: return "NotHighestLWeight";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::EigenvalueOutsideField: return "EigenvalueOutsideField";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  thread_local std::uint64_t last_checked = 0;
  if (p == last_checked) return Field{static_cast<std::uint32_t>(p)};
  if (p > (1ULL << 31) || !is_prime(p))
    fail(ErrorCode::InvalidArgument, "field characteristic must be a prime <= 2^31, got " +
                                         std::to_string(p));
  last_checked = p;
  return Field{static_cast<std::uint32_t>(p)};
}

std::string Field::name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

namespace {

std::uint64_t mod_reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return r.get_ui();
}

// Inverse by the extended Euclidean algorithm.
std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = static_cast<std::int64_t>(a % p);
  if (new_r == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(p));
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(__int128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(__int128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

mpz_class mpz_from(__int128 v) {
  const bool neg = v < 0;
  u128 a = abs128(v);
  mpz_class hi(static_cast<unsigned long>(a >> 64)), lo(static_cast<unsigned long>(a & ~0ULL));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

}  // namespace

void Scalar::set(const mpq_class& q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_shared<const mpq_class>(q);
  }
}

void Scalar::set(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
  } else {
    const u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<__int128>(g);
      den /= static_cast<__int128>(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    big_ = std::make_shared<const mpq_class>(mpz_from(num), mpz_from(den));
  }
}

Scalar::Scalar(Field f, long v) : field_(f) {
  if (f.is_rational()) {
    n_ = v;
  } else {
    const long r = v % static_cast<long>(f.p);
    r_ = static_cast<std::uint64_t>(r < 0 ? r + f.p : r);
  }
}

Scalar::Scalar(Field f, const mpz_class& v) : field_(f) {
  if (f.is_rational())
    set(mpq_class(v));
  else
    r_ = mod_reduce(v, f.p);
}

Scalar::Scalar(Field f, const mpq_class& v) : field_(f) {
  if (f.is_rational()) {
    mpq_class q(v);
    q.canonicalize();
    set(q);
  } else {
    *this = specialize_scalar(v, f.p);
  }
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  Scalar s(Field::rationals());
  s.set(num, den);
  return s;
}

Scalar Scalar::residue(std::uint32_t p, std::int64_t v) {
  return Scalar(Field::prime(p), static_cast<long>(v));
}

bool Scalar::is_zero() const noexcept {
  if (!field_.is_rational()) return r_ == 0;
  return big_ ? *big_ == 0 : n_ == 0;
}
bool Scalar::is_one() const noexcept {
  if (!field_.is_rational()) return r_ == 1;
  return big_ ? *big_ == 1 : (n_ == 1 && d_ == 1);
}

mpq_class Scalar::rational_value() const {
  if (!field_.is_rational()) fail(ErrorCode::FieldMismatch, "rational_value on " + field_.name());
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

std::uint64_t Scalar::residue_value() const {
  if (field_.is_rational()) fail(ErrorCode::FieldMismatch, "residue_value on Q");
  return r_;
}

bool Scalar::is_integer() const {
  if (!field_.is_rational()) return true;
  return big_ ? big_->get_den() == 1 : d_ == 1;
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    fail(ErrorCode::FieldMismatch, "mixing " + field_.name() + " and " + o.field_.name());
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (!field_.is_rational())
    s.r_ = r_ == 0 ? 0 : field_.p - r_;
  else if (big_)
    s.set(mpq_class(-*big_));
  else
    s.set(-static_cast<__int128>(n_), d_);
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (!field_.is_rational())
    r_ = (r_ + o.r_) % field_.p;
  else if (!big_ && !o.big_)
    set(static_cast<__int128>(n_) * o.d_ + static_cast<__int128>(o.n_) * d_,
        static_cast<__int128>(d_) * o.d_);
  else
    set(mpq_class(rational_value() + o.rational_value()));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (!field_.is_rational())
    r_ = (r_ + field_.p - o.r_) % field_.p;
  else if (!big_ && !o.big_)
    set(static_cast<__int128>(n_) * o.d_ - static_cast<__int128>(o.n_) * d_,
        static_cast<__int128>(d_) * o.d_);
  else
    set(mpq_class(rational_value() - o.rational_value()));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (!field_.is_rational())
    r_ = (r_ * o.r_) % field_.p;
  else if (!big_ && !o.big_)
    set(static_cast<__int128>(n_) * o.n_, static_cast<__int128>(d_) * o.d_);
  else
    set(mpq_class(rational_value() * o.rational_value()));
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar s(*this);
  if (!field_.is_rational())
    s.r_ = mod_inverse(r_, field_.p);
  else if (big_)
    s.set(mpq_class(1 / *big_));
  else
    s.set(d_, n_);
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(field_, 1L), base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (!a.field_.is_rational()) return a.r_ == b.r_;
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  return a.rational_value() == b.rational_value();
}

std::string Scalar::str() const {
  if (!field_.is_rational()) return std::to_string(r_);
  if (big_) return big_->get_str();
  return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

mpz_class factorial(long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

mpz_class binom_gen(const mpz_class& m, long k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "binom_gen with negative k");
  mpz_class num = 1;
  for (long j = 0; j < k; ++j) num *= (m - j);
  return num / factorial(k);
}

Scalar binom_gen(Field f, const mpz_class& m, long k) { return Scalar(f, binom_gen(m, k)); }

Scalar specialize_scalar(const mpq_class& q, std::uint32_t p) {
  Field f = Field::prime(p);
  mpq_class c(q);
  c.canonicalize();
  if (c.get_den() % p == 0)
    fail(ErrorCode::NonIntegralDenominator,
         "denominator of " + c.get_str() + " is divisible by " + std::to_string(p));
  Scalar num(f, c.get_num());
  if (c.get_den() == 1) return num;
  Scalar den(f, c.get_den());
  return num / den;
}

Scalar to_field(const mpq_class& q, Field f) {
  if (f.is_rational()) return Scalar(f, q);
  return specialize_scalar(q, f.p);
}

}  // namespace hyper
