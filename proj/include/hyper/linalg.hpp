#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hyper/scalar.hpp"

namespace hyper {

/// Sparse vector over a field, index -> nonzero scalar.
using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Scalar& a);

/// Incrementally built echelon basis of a subspace of F^N (sparse rows).
/// Rows are normalized (pivot coefficient 1) and fully reduced against each other.
class EchelonSpace {
 public:
  explicit EchelonSpace(Field f = Field::rationals()) : field_(f) {}

  Field field() const { return field_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(int i) const { return rows_.count(i) != 0; }
  const std::map<int, SparseVec>& rows() const { return rows_; }

  /// Remainder of v modulo the space (only non-pivot indices survive).
  SparseVec reduce(SparseVec v) const;
  /// Adds v; returns false when v already lies in the space.
  bool insert(SparseVec v);

 private:
  Field field_;
  std::map<int, SparseVec> rows_;
};

/// Dense matrix over a field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, int rows, int cols);
  static Matrix identity(Field f, int n);

  Field field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  bool is_zero() const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_{};
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& m);
int rank(Matrix m);
/// Basis of the right null space {x : m x = 0}.
std::vector<std::vector<Scalar>> kernel(const Matrix& m);
Scalar determinant(Matrix m);

/// Coefficients c_0..c_n (monic) of det(x I - m).
std::vector<Scalar> char_poly(const Matrix& m);
/// Distinct roots in the field of a polynomial c_0 + c_1 x + ...
/// Over Q only rational roots are returned.
std::vector<Scalar> poly_roots(const std::vector<Scalar>& coeffs);
/// Multiplicity of r as a root.
int root_multiplicity(const std::vector<Scalar>& coeffs, const Scalar& r);

}  // namespace hyper
