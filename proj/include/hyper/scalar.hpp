#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <memory>
#include <string>

#include "hyper/error.hpp"

namespace hyper {

/// The coefficient field: the rationals (p == 0) or the prime field F_p.
struct Field {
  std::uint32_t p = 0;

  static Field rationals() { return Field{0}; }
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p == 0; }
  std::uint32_t characteristic() const noexcept { return p; }
  std::string name() const;

  friend bool operator==(Field a, Field b) noexcept { return a.p == b.p; }
  friend bool operator!=(Field a, Field b) noexcept { return a.p != b.p; }
};

bool is_prime(std::uint64_t n);

/// Exact scalar: a reduced rational, or a residue in [0, p).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Field f) : field_(f) {}
  Scalar(Field f, long v);
  Scalar(Field f, const mpz_class& v);
  /// Rational value; must have a p-integral denominator when f is a prime field.
  Scalar(Field f, const mpq_class& v);

  static Scalar rational(const mpq_class& v) { return Scalar(Field::rationals(), v); }
  static Scalar rational(long num, long den = 1);
  static Scalar residue(std::uint32_t p, std::int64_t v);

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Rational value (Q only).
  mpq_class rational_value() const;
  /// Residue value (F_p only).
  std::uint64_t residue_value() const;

  bool is_integer() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(long e) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text: "a", "a/b", or the residue.
  std::string str() const;

 private:
  void check_same(const Scalar& o) const;
  void set(const mpq_class& q);
  void set(__int128 num, __int128 den);

  // Rationals are n_/d_ (d_ > 0, reduced) unless they overflow 64 bits, then big_.
  Field field_{};
  std::int64_t n_ = 0, d_ = 1;
  std::shared_ptr<const mpq_class> big_;
  std::uint64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Generalized binomial m(m-1)...(m-k+1)/k!.
mpz_class binom_gen(const mpz_class& m, long k);
Scalar binom_gen(Field f, const mpz_class& m, long k);
mpz_class factorial(long k);

/// Image of a p-integral rational in F_p. Throws NonIntegralDenominator.
Scalar specialize_scalar(const mpq_class& q, std::uint32_t p);

/// Image of a rational scalar in field f (identity when f is Q).
Scalar to_field(const mpq_class& q, Field f);

}  // namespace hyper
