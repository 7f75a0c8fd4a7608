#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyper/laurent.hpp"
#include "hyper/root_data.hpp"

namespace hyper {

/// Pure tensor (basis element of g) x t^m. Ordered by (basis index, exponent),
/// which is the PBW block order of RootData followed by exponent lex order.
struct LieKey {
  int b = 0;
  MultiExp m;

  friend bool operator==(const LieKey&, const LieKey&) = default;
  friend auto operator<=>(const LieKey&, const LieKey&) = default;
};

struct OrdFactor {
  LieKey key;
  int exp = 1;

  friend bool operator==(const OrdFactor&, const OrdFactor&) = default;
  friend auto operator<=>(const OrdFactor&, const OrdFactor&) = default;
};

/// Ordered monomial in the ordinary PBW basis of U(g (x) A): keys strictly increasing.
using OrdMono = std::vector<OrdFactor>;
/// Element of U(g (x) A) in the ordinary PBW basis.
using OrdElem = std::map<OrdMono, mpq_class>;

struct OrdMonoHash {
  std::size_t operator()(const OrdMono& m) const noexcept;
};

int ord_degree(const OrdMono& m);
void ord_add(OrdElem& e, const OrdMono& m, const mpq_class& c);
void ord_add(OrdElem& e, const OrdElem& f, const mpq_class& scale = 1);

/// Which ring A the loop variable lives in.
enum class Context { Current, Loop };

/// g (x) A for a fixed root datum and variable count, with memoized straightening.
class LieEngine {
 public:
  LieEngine(RootDataPtr rd, int nvars, Context ctx);

  const RootData& root_data() const { return *rd_; }
  RootDataPtr root_data_ptr() const { return rd_; }
  int nvars() const { return nvars_; }
  Context context() const { return ctx_; }

  /// Validates exponents against the context.
  void check_key(const LieKey& k) const;

  /// [x (x) a, y (x) b] in the Lie basis.
  std::vector<std::pair<LieKey, int>> bracket(const LieKey& x, const LieKey& y) const;

  /// x * m in normal form.
  const OrdElem& left_mul(const LieKey& x, const OrdMono& m);
  OrdElem left_mul(const LieKey& x, const OrdElem& e);
  OrdElem multiply(const OrdElem& a, const OrdElem& b);
  /// Normal form of a free word of keys.
  OrdElem word(const std::vector<LieKey>& keys);

  std::string key_name(const LieKey& k) const;
  std::string str(const OrdElem& e) const;

  std::size_t cache_size() const { return cache_.size(); }

 private:
  RootDataPtr rd_;
  int nvars_;
  Context ctx_;
  struct CacheKeyHash {
    std::size_t operator()(const std::pair<LieKey, OrdMono>& k) const noexcept;
  };
  std::unordered_map<std::pair<LieKey, OrdMono>, OrdElem, CacheKeyHash> cache_;
};

}  // namespace hyper
