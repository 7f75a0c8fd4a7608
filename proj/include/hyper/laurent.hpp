#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyper/scalar.hpp"

namespace hyper {

inline constexpr int kMaxVars = 4;

/// Exponent vector t^s in n <= kMaxVars variables.
struct MultiExp {
  std::array<std::int16_t, kMaxVars> e{};
  std::uint8_t n = 0;

  MultiExp() = default;
  explicit MultiExp(int nvars);
  MultiExp(std::initializer_list<int> exps);
  static MultiExp unit(int nvars, int j);  // t_j, 0-based j

  int size() const noexcept { return n; }
  int operator[](int j) const { return e[j]; }
  std::int16_t& operator[](int j) { return e[j]; }

  bool is_one() const noexcept;
  bool nonnegative() const noexcept;
  int max() const noexcept;
  int min() const noexcept;
  int abs_sum() const noexcept;  // sum of |s_j|
  int sum() const noexcept;

  MultiExp operator+(const MultiExp& o) const;
  MultiExp operator-(const MultiExp& o) const;
  MultiExp operator-() const;
  MultiExp scaled(int k) const;

  friend bool operator==(const MultiExp&, const MultiExp&) = default;
  friend auto operator<=>(const MultiExp&, const MultiExp&) = default;

  /// "1", "t1", "t1^2*t2^-1".
  std::string str() const;
};

enum class RingKind { Poly, Laurent };

/// b(a) = a_1^{s_1} ... a_n^{s_n}.
Scalar eval_monomial(const MultiExp& b, std::span<const Scalar> a);

/// gcd of the exponents equals 1. Throws NotAMonomial for b = 1.
bool is_primitive(const MultiExp& b);

/// Largest k with b = c^k; c is then primitive.
int primitive_root(const MultiExp& b, MultiExp* root);

/// Sparse (Laurent) polynomial in n variables.
class LaurentPoly {
 public:
  LaurentPoly(Field f, int nvars, RingKind kind) : field_(f), nvars_(nvars), kind_(kind) {}

  static LaurentPoly monomial(Field f, const MultiExp& m, RingKind kind);

  Field field() const { return field_; }
  int nvars() const { return nvars_; }
  RingKind kind() const { return kind_; }
  const std::map<MultiExp, Scalar>& terms() const { return terms_; }

  void add_term(const MultiExp& m, const Scalar& c);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  Scalar eval(std::span<const Scalar> a) const;
  bool is_zero() const { return terms_.empty(); }

  /// f(0,...,0) = 0; only meaningful in the polynomial ring.
  bool in_augmentation() const;
  /// Non-constant.
  bool nonconstant() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  Field field_;
  int nvars_;
  RingKind kind_;
  std::map<MultiExp, Scalar> terms_;
};

/// Truncated series sum_{r=0}^{N} c_r u^r over a coefficient ring T.
/// T must provide +, *, and a zero/one supplied by the caller.
template <class T>
class TruncSeries {
 public:
  TruncSeries(int order, const T& zero)
      : coeffs_(static_cast<std::size_t>(order) + 1, zero), zero_(zero) {}

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int r) const { return coeffs_.at(static_cast<std::size_t>(r)); }
  T& operator[](int r) { return coeffs_.at(static_cast<std::size_t>(r)); }
  const std::vector<T>& coefficients() const { return coeffs_; }

  TruncSeries operator+(const TruncSeries& o) const {
    TruncSeries out(*this);
    for (int r = 0; r <= order(); ++r) out[r] = out[r] + o[r];
    return out;
  }

  TruncSeries operator*(const TruncSeries& o) const {
    TruncSeries out(order(), zero_);
    for (int a = 0; a <= order(); ++a)
      for (int b = 0; a + b <= order(); ++b) out[a + b] = out[a + b] + coeffs_[a] * o[b];
    return out;
  }

  TruncSeries scaled(const Scalar& c) const {
    TruncSeries out(*this);
    for (auto& x : out.coeffs_) x = x * c;
    return out;
  }

 private:
  std::vector<T> coeffs_;
  T zero_;
};

/// exp(x) truncated at order N for a series with zero constant term (over Q).
TruncSeries<Scalar> series_exp(const TruncSeries<Scalar>& x);
/// log(1 + x) for a series with constant term 1 (over Q).
TruncSeries<Scalar> series_log(const TruncSeries<Scalar>& y);

}  // namespace hyper
