#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "multifol/linalg.hpp"
#include "multifol/polynomial.hpp"
#include "multifol/poset.hpp"
#include "multifol/projsys.hpp"

namespace multifol {

/// Finite-dimensional commutative local Q-algebra A = Q·1 ⊕ N with N
/// nilpotent, given by structure constants in a basis whose first vector is
/// the unit and whose remaining vectors span N.
class WeilAlgebra {
 public:
  WeilAlgebra() = default;

  /// table[i][j] = e_i * e_j in coordinates. Throws DimensionMismatch,
  /// NotUnital, NotCommutative, NotAssociative, NotNilpotent.
  static WeilAlgebra create(std::vector<std::vector<Vector>> table,
                            std::vector<std::string> labels = {});
  /// Skips every check; for fault injection and for re-validation tests.
  static WeilAlgebra unchecked(std::vector<std::vector<Vector>> table,
                               std::vector<std::string> labels = {});

  /// Q[x_1..x_k] modulo monomials with x_v^e, e > max_exponents[v], or of
  /// total degree > max_total. Basis: monomials in graded-lex order.
  static WeilAlgebra monomial(const std::vector<unsigned>& max_exponents, unsigned max_total);
  /// The exponent vectors of monomial()'s basis, in basis order.
  static std::vector<Exponents> monomial_basis(const std::vector<unsigned>& max_exponents,
                                               unsigned max_total);
  static WeilAlgebra rationals() { return monomial({}, 0); }
  static WeilAlgebra dual_numbers() { return monomial({1}, 1); }
  /// Q[t]/(t^{order+1}).
  static WeilAlgebra truncated(unsigned order) { return monomial({order}, order); }

  std::size_t dim() const noexcept { return table_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<Vector>>& table() const noexcept { return table_; }
  /// Smallest k with N^k = 0 (1 for Q).
  std::size_t nilpotency_order() const;

  Vector one() const;
  Vector scalar(const Rational& c) const;
  Vector basis_vector(std::size_t i) const;
  Vector multiply(const Vector& a, const Vector& b) const;
  Vector add(const Vector& a, const Vector& b) const;
  /// Throws the code of the first failed axiom; the witness names basis indices.
  void validate() const;

  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<Vector>> table_;
  std::vector<std::string> labels_;
};

/// Throws NotUnital, NotMultiplicative or DimensionMismatch unless `m` (dim B x dim A)
/// is a unital algebra homomorphism A -> B.
void check_algebra_hom(const WeilAlgebra& a, const WeilAlgebra& b, const Matrix& m);

/// A_lower -> A_upper for lower <= upper.
struct IndexedHom {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Matrix matrix;
};

/// Functor from a poset to Weil algebras: homs go up the order.
class WeilSystem {
 public:
  WeilSystem() = default;

  /// Homs are needed on covering pairs; composites along covering paths must
  /// agree. Throws MissingMap, CoherenceError, NotMultiplicative,
  /// DimensionMismatch.
  static WeilSystem create(Poset poset, std::vector<WeilAlgebra> algebras,
                           const std::vector<IndexedHom>& homs);
  /// Every element gets `a`, every hom is the identity.
  static WeilSystem constant(Poset poset, const WeilAlgebra& a);

  const Poset& poset() const noexcept { return poset_; }
  const WeilAlgebra& algebra(std::size_t x) const { return algebras_.at(x); }
  const std::vector<WeilAlgebra>& algebras() const noexcept { return algebras_; }
  /// A_lower -> A_upper; lower <= upper required.
  const Matrix& hom(std::size_t lower, std::size_t upper) const;
  std::vector<IndexedHom> cover_homs() const;

 private:
  Poset poset_;
  std::vector<WeilAlgebra> algebras_;
  std::vector<std::optional<Matrix>> homs_;  // index lower * n + upper
};

struct MorphismReport {
  bool ok = true;
  std::string failure;  // error code name when !ok
  nlohmann::json witness;
};

/// Whether nu_x : A_x -> B_x is a family of algebra homs commuting with both
/// systems' homs. Never throws on a failed law; reports it.
MorphismReport validate_system_morphism(const WeilSystem& source, const WeilSystem& target,
                                        const std::vector<Matrix>& nu);

/// Applies a polynomial map coordinatewise in the algebra: A^m -> A^k.
/// Throws ArityMismatch.
std::vector<Vector> weil_apply(const WeilAlgebra& a, const PolyMap& f,
                               const std::vector<Vector>& point);

/// Cartesian multifibered object over a poset: coordinates 0..n-1 with levels
/// p(i), which need not cover the poset; the fiber over x is Q^{H_x} with
/// H_x = {i : p(i) <= x}.
class CartesianMultifibered {
 public:
  CartesianMultifibered() = default;

  /// Throws BadIndex.
  static CartesianMultifibered create(Poset poset, std::vector<std::size_t> levels);
  /// Q^m placed at alpha: p constantly alpha.
  static CartesianMultifibered at_level(Poset poset, std::size_t alpha, std::size_t m);
  /// Concatenated levels. Throws PosetMismatch.
  static CartesianMultifibered product(const CartesianMultifibered& a,
                                       const CartesianMultifibered& b);

  const Poset& poset() const noexcept { return poset_; }
  std::size_t n() const noexcept { return levels_.size(); }
  const std::vector<std::size_t>& levels() const noexcept { return levels_; }
  const std::vector<std::size_t>& coordinates(std::size_t x) const { return h_.at(x); }
  std::size_t fiber_dim(std::size_t x) const { return h_.at(x).size(); }
  /// alpha when n >= 1 and every level equals alpha.
  std::optional<std::size_t> single_level() const;
  ProjectiveSystem system() const;

 private:
  Poset poset_;
  std::vector<std::size_t> levels_;
  std::vector<std::vector<std::size_t>> h_;
};

/// Polynomial map between Cartesian objects: one PolyMap per element, from
/// Q^{H_x} to Q^{H'_x}, commuting with the coordinate projections.
class PolyMultifiberedMap {
 public:
  PolyMultifiberedMap() = default;

  /// Throws PosetMismatch, ArityMismatch, CoherenceError.
  static PolyMultifiberedMap create(CartesianMultifibered source, CartesianMultifibered target,
                                    std::vector<PolyMap> components);
  /// i_alpha(f) : i_alpha(Q^m) -> i_alpha(Q^k).
  static PolyMultifiberedMap lift(const Poset& poset, std::size_t alpha, const PolyMap& f);

  const CartesianMultifibered& source() const noexcept { return source_; }
  const CartesianMultifibered& target() const noexcept { return target_; }
  const PolyMap& component(std::size_t x) const { return components_.at(x); }

 private:
  CartesianMultifibered source_;
  CartesianMultifibered target_;
  std::vector<PolyMap> components_;
};

/// The fiber product T^mu(pi) realized as a linear subspace of
/// prod_x A_x^{H_x}: tuples with x_y[i] = mu(x_x[i]) for every cover x < y
/// and every i in H_x. Points are flat vectors laid out element by element,
/// coordinate by coordinate, algebra basis by algebra basis.
class FiberProduct {
 public:
  /// Throws PosetMismatch.
  FiberProduct(const WeilSystem& mu, const CartesianMultifibered& pi);

  const WeilSystem& weil() const noexcept { return mu_; }
  const CartesianMultifibered& object() const noexcept { return pi_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  const Subspace& space() const noexcept { return space_; }
  /// Offset of x_x[H_x[r]] in a flat point.
  std::size_t offset(std::size_t x, std::size_t r) const { return offsets_.at(x).at(r); }

  bool contains(const Vector& point) const { return space_.contains(point); }
  /// x_x as a list of algebra elements, one per coordinate of H_x.
  std::vector<Vector> component(const Vector& point, std::size_t x) const;
  /// Inverse of component(): one list per element. Throws DimensionMismatch.
  Vector assemble(const std::vector<std::vector<Vector>>& components) const;

  /// n x ambient: real part of x_{p(i)}[i].
  const Matrix& base_projection() const noexcept { return base_; }
  bool base_surjective() const;

 private:
  WeilSystem mu_;
  CartesianMultifibered pi_;
  std::size_t ambient_ = 0;
  std::vector<std::vector<std::size_t>> offsets_;
  Subspace space_;
  Matrix base_;
};

/// T^mu(f) on a point of the source fiber product. Throws
/// CompatibilityViolation when the input is not in the source.
Vector t_mu_apply(const FiberProduct& source, const FiberProduct& target,
                  const PolyMultifiberedMap& f, const Vector& point);

/// T^mu(pi) with its identification I_pi to the fiber product: for
/// pi = i_alpha(Q^m) the model is A_alpha^m, otherwise it is the fiber
/// product itself.
class TMu {
 public:
  TMu(const WeilSystem& mu, const CartesianMultifibered& pi);

  const FiberProduct& fiber_product() const noexcept { return fp_; }
  std::optional<std::size_t> alpha() const noexcept { return alpha_; }
  std::size_t dim() const;
  /// I_pi. Throws DimensionMismatch.
  Vector to_fiber_product(const Vector& model_point) const;
  /// I_pi^{-1}. Throws CompatibilityViolation.
  Vector from_fiber_product(const Vector& point) const;

 private:
  FiberProduct fp_;
  std::optional<std::size_t> alpha_;
};

/// T^mu(f) in the models of source and target.
Vector t_mu_map(const TMu& source, const TMu& target, const PolyMultifiberedMap& f,
                const Vector& model_point);

struct ProductReport {
  bool passed = false;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t dim_product = 0;
  std::string failure;
};

/// Checks T^mu(a x b) = T^mu(a) x T^mu(b): dimensions add and the coordinate
/// shuffle is a linear isomorphism commuting with base projections.
ProductReport product_preservation_check(const WeilSystem& mu, const CartesianMultifibered& a,
                                         const CartesianMultifibered& b);

}  // namespace multifol
