#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hyper/error.hpp"

namespace hyper {

/// Integral weight, stored as the values lambda(h_i) for i in I.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

  int rank() const { return static_cast<int>(coords.size()); }
  int operator[](int i) const { return coords[i]; }
  bool dominant() const;
  bool is_zero() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight scaled(int k) const;

  std::string str() const;  // "[1,0]"

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

/// Role of a Chevalley basis element.
enum class BasisKind { Lower, Cartan, Raise };

/// Linear combination of Chevalley basis indices with integer coefficients.
using BasisCombination = std::vector<std::pair<int, int>>;

/// Chevalley-basis data of a simple Lie algebra of type A_l (l <= 3 shipped).
///
/// Basis indices are laid out so that integer order is the PBW block order:
/// lowering root vectors by (height, root index), then h_1..h_l, then raising
/// root vectors by (height, root index).
class RootData {
 public:
  static std::shared_ptr<const RootData> build(char letter, int rank);

  char letter() const { return letter_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, letter_) + std::to_string(rank_); }

  int num_positive_roots() const { return static_cast<int>(roots_.size()); }
  /// Root in simple-root coordinates, sorted by height then lexicographically.
  const std::vector<int>& root(int r) const { return roots_[r]; }
  int root_height(int r) const;
  /// Index of the root with the given simple-root coordinates, or -1.
  int find_root(const std::vector<int>& coords) const;
  int simple_root_index(int i) const { return simple_index_[i]; }
  /// alpha(h_i) for all i.
  const Weight& root_weight(int r) const { return root_weights_[r]; }
  /// Coefficients c_i with h_alpha = sum c_i h_i.
  const std::vector<int>& coroot(int r) const { return roots_[r]; }
  int theta() const { return theta_; }
  /// lambda(h_alpha).
  int pair(const Weight& lam, int r) const;

  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int dim() const { return 2 * num_positive_roots() + rank_; }
  int lower_index(int r) const { return r; }
  int cartan_index(int i) const { return num_positive_roots() + i; }
  int raise_index(int r) const { return num_positive_roots() + rank_ + r; }
  BasisKind kind(int b) const;
  /// Root index for root vectors, Cartan index for h_i.
  int sub_index(int b) const;
  /// Weight of a basis element (0 for Cartan).
  Weight basis_weight(int b) const;
  std::string basis_name(int b) const;
  /// Root label "a1", "a1+a2".
  std::string root_name(int r) const;

  /// [b1, b2] in the Chevalley basis.
  const BasisCombination& bracket(int b1, int b2) const { return brackets_[b1][b2]; }

  /// Weyl group acting on weight coordinates.
  int weyl_order() const { return static_cast<int>(weyl_.size()); }
  const std::vector<std::vector<int>>& weyl_element(int w) const { return weyl_[w]; }
  int weyl_length(int w) const { return weyl_length_[w]; }
  int w0() const { return w0_; }
  Weight act(int w, const Weight& mu) const;
  Weight reflect(int i, const Weight& mu) const;
  Weight dominant_conjugate(const Weight& mu) const;
  Weight rho() const;

  /// alpha_i as a weight.
  Weight simple_root_weight(int i) const;
  /// Weight of a Q-combination of simple roots.
  Weight root_lattice_weight(const std::vector<int>& coeffs) const;
  /// Simple-root coordinates of a weight; false if they are not all integers.
  bool root_coordinates(const Weight& diff, std::vector<mpq_class>* coords) const;

  /// (mu, nu) for the form with (alpha, alpha) = 2.
  mpq_class inner(const Weight& mu, const Weight& nu) const;

 private:
  RootData() = default;
  void verify() const;

  char letter_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<int>> roots_;
  std::vector<Weight> root_weights_;
  std::vector<int> simple_index_;
  int theta_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<mpq_class>> cartan_inverse_;
  std::vector<std::vector<BasisCombination>> brackets_;
  std::vector<std::vector<std::vector<int>>> weyl_;
  std::vector<int> weyl_length_;
  int w0_ = 0;
};

using RootDataPtr = std::shared_ptr<const RootData>;

/// mu <= lam in dominance order (lam - mu in Q^+).
bool dominance_leq(const RootData& rd, const Weight& mu, const Weight& lam);

/// All mu with sigma(mu) <= lam for every sigma in W.
std::vector<Weight> weight_support(const RootData& rd, const Weight& lam);

using Character = std::map<Weight, long>;

/// Character of the Weyl module of highest weight lam (Freudenthal recursion).
Character weyl_character(const RootData& rd, const Weight& lam);
/// Same character through Kostant's alternating-sum formula; independent oracle.
Character weyl_character_kostant(const RootData& rd, const Weight& lam);
/// Weyl dimension formula.
mpz_class weyl_dimension(const RootData& rd, const Weight& lam);

}  // namespace hyper
