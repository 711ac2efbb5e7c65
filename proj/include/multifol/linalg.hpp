#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "multifol/rational.hpp"

namespace multifol {

/// Dense row-major matrix of exact rationals. Zero-sized shapes are valid
/// and model maps into or out of the zero space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  /// Throws ShapeMismatch on ragged input; `cols` is used when `rows` is empty.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const { return Vector(row(r).begin(), row(r).end()); }
  Vector column(std::size_t c) const;
  std::vector<Vector> row_list() const;

  Matrix transpose() const;
  Vector apply(std::span<const Rational> v) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix hstack(const Matrix& left, const Matrix& right);
Matrix block_diagonal(const Matrix& a, const Matrix& b);

/// Canonical reduced row-echelon form with zero rows dropped.
Matrix rref(const Matrix& m);
/// As rref(), also reporting the pivot column of each row.
Matrix rref(const Matrix& m, std::vector<std::size_t>& pivots);
std::size_t rank(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);
/// A right inverse R (m * R = identity) built on pivot columns.
/// Throws NotEpimorphism when m is not surjective.
Matrix right_inverse(const Matrix& m);

bool is_epimorphism(const Matrix& m);
bool is_isomorphism(const Matrix& m);

/// Subspace of Q^n represented by the canonical RREF of a basis, so equal
/// subspaces compare equal as data.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_; }
  bool contains(std::span<const Rational> v) const;
  /// Subspace inclusion: other ⊆ *this.
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);
/// Column space of m inside Q^rows.
Subspace image(const Matrix& m);
/// Throws DimensionMismatch for different ambient dimensions.
Subspace sum(const Subspace& s, const Subspace& t);
Subspace intersect(const Subspace& s, const Subspace& t);
/// {phi : phi(v) = 0 for all v in s}, in dual coordinates of the same ambient.
Subspace annihilator(const Subspace& s);

/// Surjection Q^n -> Q^(n - dim s) with kernel exactly s: subtract the s-part
/// read off at the pivot coordinates of s, keep the non-pivot coordinates.
Matrix quotient_map(std::size_t ambient_dim, const Subspace& s);
/// The matching section: inserts a vector at the non-pivot coordinates.
Matrix quotient_section(std::size_t ambient_dim, const Subspace& s);

/// Vectors B with t = (s ∩ t) ⊕ span B, drawn greedily from t's RREF basis.
std::vector<Vector> extend_basis(const Subspace& s, const Subspace& t);

}  // namespace multifol
