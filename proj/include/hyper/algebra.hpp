#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "hyper/lie.hpp"
#include "hyper/scalar.hpp"

namespace hyper {

enum class GenKind : std::uint8_t { Lower = 0, Binom = 1, Lambda = 2, Raise = 3 };

/// Generator of the integral form:
///   Lower  (x_a^- (x) t^s)^(k)   index = root, mono = s, power = k
///   Raise  (x_a^+ (x) t^s)^(k)   index = root, mono = s, power = k
///   Binom  binom(h_i (x) 1, k)   index = i,    power = k
///   Lambda Lambda_{i,c,r}        index = i,    mono = c != 1, power = r
struct Generator {
  GenKind kind = GenKind::Lower;
  int index = 0;
  MultiExp mono;
  int power = 1;

  static Generator lower(int root, const MultiExp& s, int k = 1) { return {GenKind::Lower, root, s, k}; }
  static Generator raise(int root, const MultiExp& s, int k = 1) { return {GenKind::Raise, root, s, k}; }
  static Generator binom(int i, int nvars, int k) { return {GenKind::Binom, i, MultiExp(nvars), k}; }
  static Generator lambda(int i, const MultiExp& c, int r) { return {GenKind::Lambda, i, c, r}; }

  bool is_root() const { return kind == GenKind::Lower || kind == GenKind::Raise; }
  bool is_cartan() const { return kind == GenKind::Binom || kind == GenKind::Lambda; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Global PBW order; ignores the power when `ignore_power`.
int compare_generators(const Generator& a, const Generator& b, bool ignore_power = false);
inline bool same_slot(const Generator& a, const Generator& b) {
  return compare_generators(a, b, true) == 0;
}

/// Sorted, merged word of generators; empty = identity.
struct PBWMonomial {
  std::vector<Generator> word;

  int degree() const;  // sum of powers of root factors
  bool has_raise() const;
  bool has_lambda() const;
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;
};

struct PBWLess {
  bool operator()(const PBWMonomial& a, const PBWMonomial& b) const;
};

/// Element of the hyperalgebra in the divided-power PBW basis.
struct AlgebraElement {
  Field field;
  std::map<PBWMonomial, Scalar, PBWLess> terms;

  explicit AlgebraElement(Field f = Field::rationals()) : field(f) {}
  static AlgebraElement identity(Field f);
  static AlgebraElement single(Field f, const Generator& g);

  bool is_zero() const { return terms.empty(); }
  void add(const PBWMonomial& m, const Scalar& c);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement scaled(const Scalar& c) const;
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
};

/// Rational coordinates in the divided-power basis.
using DPRational = std::map<PBWMonomial, mpq_class, PBWLess>;

/// Lambda_{i,f,1}^{n_1} ... written as (s -> n_s).
using LambdaProduct = std::map<int, int>;

struct GarlandResult {
  AlgebraElement residual;          // first display of the identity
  AlgebraElement residual_current;  // second display (only when applicable)
  bool current_applicable = false;
  bool in_raise_ideal = false;          // every monomial contains a raising factor
  bool current_classification = false;  // raising or Lambda factor in each monomial
  bool passes = false;
  std::string classification;
};

/// Straightening kernel over a fixed g (x) A.
class Hyperalgebra {
 public:
  Hyperalgebra(RootDataPtr rd, int nvars, Context ctx);

  LieEngine& engine() { return engine_; }
  const RootData& root_data() const { return engine_.root_data(); }
  int nvars() const { return engine_.nvars(); }
  Context context() const { return engine_.context(); }

  void validate(const Generator& g) const;

  /// Generator and monomial images in the ordinary PBW basis over Q.
  OrdElem to_ord(const Generator& g);
  OrdElem to_ord(const PBWMonomial& m);
  OrdElem to_ord(const AlgebraElement& x);
  /// Rational divided-power coordinates of an ordinary element.
  DPRational from_ord(const OrdElem& e);

  /// Rational element to field f (throws NonIntegralDenominator on bad denominators).
  AlgebraElement to_field(const DPRational& x, Field f) const;
  DPRational lift(const AlgebraElement& x) const;

  AlgebraElement pbw_normal_form(const std::vector<Generator>& word, Field f);
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

  /// h_i (x) c as an ordinary key element; for a root index, h_alpha.
  OrdElem cartan_element(int i, const MultiExp& c) const;
  OrdElem coroot_element(int root, const MultiExp& c) const;
  /// Coefficient of u^r in Lambda_{alpha_i, f}(u), in the ordinary basis.
  OrdElem lambda_expand(int i, const MultiExp& f, int r);
  /// Same for a positive root alpha.
  OrdElem lambda_expand_root(int root, const MultiExp& f, int r);
  OrdElem binom_expand(int i, int k);

  /// Lambda_{i, f^k, r} as an integer polynomial in Lambda_{i,f,s}.
  std::map<LambdaProduct, mpq_class> lambda_power_reduce(int i, const MultiExp& f, int k, int r);
  /// Expand a Lambda_{i,f,s} polynomial back to the ordinary basis.
  OrdElem expand_lambda_products(int i, const MultiExp& f,
                                 const std::map<LambdaProduct, mpq_class>& p);

  GarlandResult garland_residual(int root, int r, int s, const MultiExp& a, const MultiExp& b);

  /// Integer coordinates or NonIntegral naming the offending coordinate.
  std::map<PBWMonomial, mpz_class, PBWLess> integral_coordinates(const AlgebraElement& x) const;
  AlgebraElement specialize(const AlgebraElement& x, std::uint32_t p) const;

  std::string str(const Generator& g) const;
  std::string str(const PBWMonomial& m) const;
  std::string str(const AlgebraElement& x) const;

 private:
  OrdElem cartan_block_poly(const std::vector<Generator>& cartan);
  std::vector<std::pair<std::vector<Generator>, mpq_class>> cartan_to_dp(OrdElem poly);

  LieEngine engine_;
  std::map<std::tuple<int, MultiExp, int>, OrdElem> lambda_cache_;
  std::map<std::pair<int, int>, OrdElem> binom_cache_;
};

}  // namespace hyper
