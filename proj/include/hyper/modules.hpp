#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyper/algebra.hpp"
#include "hyper/linalg.hpp"

namespace hyper {

enum class Variant { FiniteType, Graded, Loop };
std::string variant_name(Variant v);

/// Point a in F^n.
struct EvalPoint {
  std::vector<Scalar> a;
  std::string str() const;
};

/// n-Drinfeld polynomial: polys[i][j] = coefficients of omega_{i,j}(u), constant term first.
struct LWeight {
  Field field;
  int rank = 0;
  int nvars = 0;
  std::vector<std::vector<std::vector<Scalar>>> polys;

  /// Product over factors of (1 - a_{k,j} u)^{lambda_k(h_i)}.
  static LWeight from_points(Field f, int rank, int nvars,
                             const std::vector<std::pair<Weight, EvalPoint>>& factors);
  static LWeight trivial(Field f, int rank, int nvars);

  /// Checks constant terms and equal degrees; returns wt.
  Weight weight() const;
  std::string str() const;
  friend bool operator==(const LWeight& a, const LWeight& b);
};

/// Relation caps of the closure algorithm.
struct Caps {
  int max_power = 0;   // divided-power order k
  int max_height = 0;  // max |s_j| of exponents

  static Caps defaults(const RootData& rd, const Weight& lam);
};

struct Certificate {
  Caps caps;
  std::vector<std::string> relations;  // verified relation families
  long checks = 0;                      // relation instances evaluated at the fixpoint
  int defects = 0;                      // independent defect vectors found
  int iterations = 0;
  int spanning = 0;                     // size of the admissible spanning set
  bool cyclic = false;
};

/// Source of generator actions for a ModuleRep.
class ActionSource {
 public:
  virtual ~ActionSource() = default;
  virtual Matrix matrix(const Generator& g) const = 0;
  virtual std::vector<Scalar> apply(const Generator& g, const std::vector<Scalar>& x) const {
    return matrix(g).apply(x);
  }
};

/// Finite-dimensional module with lazily computed generator matrices.
class ModuleRep {
 public:
  Field field;
  RootDataPtr rd;
  int nvars = 0;
  Context context = Context::Current;
  Variant variant = Variant::FiniteType;
  std::string kind;  // "weyl", "evaluation", "quotient", "pullback", ...
  Weight highest;
  std::vector<std::string> basis_labels;
  std::vector<Weight> weights;
  std::optional<std::vector<MultiExp>> degrees;  // Z_+^n grading when graded
  int cyclic_vector = 0;
  Certificate certificate;
  std::vector<Generator> exported;  // generators serialized with the module

  int dim() const { return static_cast<int>(basis_labels.size()); }
  const Matrix& action(const Generator& g) const;
  std::vector<Scalar> apply(const Generator& g, const std::vector<Scalar>& x) const;
  std::vector<Scalar> unit(int i) const;

  std::map<Weight, std::vector<int>> weight_decomp() const;

  void set_source(std::shared_ptr<const ActionSource> s) { source_ = std::move(s); }
  std::shared_ptr<const ActionSource> source() const { return source_; }

 private:
  std::shared_ptr<const ActionSource> source_;
  mutable std::map<std::string, Matrix> cache_;
};

using ModulePtr = std::shared_ptr<const ModuleRep>;

/// Admissible labels: max(s) < lambda(h_beta), s >= 0, sum k beta <= lambda - w0 lambda.
std::vector<PBWMonomial> enumerate_spanning(const RootData& rd, const Weight& lam, Variant v,
                                            int nvars);

/// FiniteType (nvars ignored) or Graded local Weyl module.
ModulePtr construct_weyl(RootDataPtr rd, const Weight& lam, Variant v, int nvars, Field f,
                         std::optional<Caps> caps = std::nullopt);
/// Loop local Weyl module with highest l-weight given by (weight, point) factors.
ModulePtr construct_weyl_loop(RootDataPtr rd, int nvars,
                              const std::vector<std::pair<Weight, EvalPoint>>& factors, Field f,
                              std::optional<Caps> caps = std::nullopt);

enum class EvalBase { WeylOfG, IrreducibleOfG };
ModulePtr evaluation_module(RootDataPtr rd, const Weight& lam, const EvalPoint& a, EvalBase base,
                            Field f);
ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);

/// Highest-l-weight data read off the Lambda action on v.
LWeight extract_drinfeld(const ModuleRep& m, int v);
/// omega_{i,f,r} by the recursion on sum |a_k|.
Scalar drinfeld_general_coeff(const ModuleRep& m, int v, int i, const MultiExp& f, int r);
/// Eigenvalue of Lambda_{i,f,r} on v computed directly.
Scalar lambda_eigenvalue(const ModuleRep& m, int v, int i, const MultiExp& f, int r);

struct FdPropEntry {
  std::string part;
  std::string instance;
  bool pass = false;
};
struct FdPropReport {
  std::vector<FdPropEntry> entries;
  bool all_pass() const;
  int failures() const;
};
FdPropReport verify_fdprop(const ModuleRep& m, int v, int max_height = 2);

struct LWeightBlock {
  LWeight germ;  // eigenvalue series truncated at the module's order
  Weight weight;
  int dim = 0;
  std::vector<std::vector<Scalar>> basis;
};
std::vector<LWeightBlock> lweight_decomposition(const ModuleRep& m);

ModulePtr irreducible_quotient(const ModulePtr& m);
/// ev_0 of a FiniteType module placed in degree r.
ModulePtr tau_shift_ev0(const ModulePtr& v, int nvars, const MultiExp& r);
/// Pullback of a loop module along t -> t - a (char 0).
ModulePtr pullback_phi(const ModulePtr& m, const EvalPoint& a);

struct GradedRelationReport {
  std::vector<FdPropEntry> entries;
  int cyclic_dim = 0;  // dimension of the submodule generated by the vector
  bool all_pass() const;
};
/// Checks the defining relations of the graded local Weyl module on vector v.
GradedRelationReport check_graded_weyl_relations(const ModuleRep& m, int v, int max_height);

std::map<Weight, long> character(const ModuleRep& m);
std::map<std::pair<Weight, MultiExp>, long> graded_character(const ModuleRep& m);

/// Span of the orbit of x under the given generators.
int orbit_dimension(const ModuleRep& m, const std::vector<Scalar>& x,
                    const std::vector<Generator>& gens);

}  // namespace hyper
