#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "multifol/linalg.hpp"
#include "multifol/poset.hpp"
#include "multifol/projsys.hpp"

namespace multifol {

/// A surjective labelling p : {0..n-1} -> poset of coordinates by levels.
/// Coordinates are 0-based here; the JSON form is 1-based.
class MultifoliateStructure {
 public:
  MultifoliateStructure() = default;

  /// Throws NotSurjective, BadIndex.
  static MultifoliateStructure create(Poset poset, std::size_t n, std::vector<std::size_t> p);

  const Poset& poset() const noexcept { return poset_; }
  std::size_t n() const noexcept { return p_.size(); }
  const std::vector<std::size_t>& p() const noexcept { return p_; }
  std::size_t level(std::size_t i) const { return p_.at(i); }

  /// |p^-1(x)| for every element x.
  std::vector<std::size_t> fiber_sizes() const;
  /// H_x = {i : p(i) <= x}, ascending.
  std::vector<std::size_t> coordinates_below(std::size_t x) const;

  friend bool operator==(const MultifoliateStructure& a, const MultifoliateStructure& b) {
    return a.poset_ == b.poset_ && a.p_ == b.p_;
  }

 private:
  Poset poset_;
  std::vector<std::size_t> p_;
};

/// Sparsity pattern of GL(poset, p): entry (i, j) may be nonzero iff p(i) >= p(j).
class GLPattern {
 public:
  GLPattern() = default;
  GLPattern(std::size_t n, std::vector<bool> allowed) : n_(n), allowed_(std::move(allowed)) {}

  std::size_t n() const noexcept { return n_; }
  bool allowed(std::size_t i, std::size_t j) const { return allowed_.at(i * n_ + j); }
  std::size_t allowed_count() const;

  friend bool operator==(const GLPattern&, const GLPattern&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> allowed_;
};

GLPattern gl_pattern(const MultifoliateStructure& s);

/// Invertible and zero outside the pattern. Non-square or wrongly sized
/// matrices are not members.
bool pattern_member(const GLPattern& pattern, const Matrix& m);

/// Whether a Jacobian (target.n rows, source.n cols) vanishes wherever
/// target level p'(a) is not >= source level p(i). Throws ShapeMismatch,
/// PosetMismatch.
bool jacobian_check(const MultifoliateStructure& source, const MultifoliateStructure& target,
                    const Matrix& jacobian);

/// The coordinate projective system: L_x = Q^{H_x}, maps are coordinate
/// projections, the limit is Q^n with its own coordinates.
ProjectiveSystem system_of(const MultifoliateStructure& s);
/// Same construction for an arbitrary level map (not necessarily onto).
ProjectiveSystem coordinate_system(const Poset& poset, const std::vector<std::size_t>& levels);

/// Concatenated labelling over a shared poset. Throws PosetMismatch.
MultifoliateStructure product_structure(const MultifoliateStructure& a,
                                        const MultifoliateStructure& b);

struct Equivalence {
  Bijection omega;                 // poset of s -> poset of t
  std::vector<std::size_t> sigma;  // omega(p(sigma[i])) == q(i)
};

/// Decides equivalence by fiber-size-labelled poset isomorphism and returns
/// an explicit coordinate permutation, certified by exact pattern
/// conjugation and a sample of group elements. Throws SizeMismatch.
std::optional<Equivalence> equivalent(const MultifoliateStructure& s, const MultifoliateStructure& t);

/// Permutation matrix P with (P x)_i = x_sigma(i).
Matrix permutation_matrix(const std::vector<std::size_t>& sigma);

}  // namespace multifol
