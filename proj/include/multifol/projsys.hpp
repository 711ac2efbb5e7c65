#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multifol/linalg.hpp"
#include "multifol/poset.hpp"

namespace multifol {

/// A linear epimorphism L_upper -> L_lower for lower <= upper.
struct IndexedMap {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Matrix matrix;
};

/// Same, addressed by element names ("from" is the upper element).
struct NamedMap {
  std::string from;
  std::string to;
  Matrix matrix;
};

/// Finite projective system of rational vector spaces over a poset.
///
/// Maps are supplied at least on covering pairs; composites along every
/// covering path are synthesized and required to agree. The limit and its
/// canonical projections are computed at construction (or taken from the
/// caller and verified), together with the kernels K_x = ker(projection x).
class ProjectiveSystem {
 public:
  ProjectiveSystem() = default;

  /// Throws MissingMap, CoherenceError, NotEpimorphism, DimensionMismatch.
  /// When `limit_projections` is given it must realize the limit: jointly
  /// injective, compatible with every map, and of the limit's dimension.
  static ProjectiveSystem create(Poset poset, std::vector<std::size_t> dims,
                                 const std::vector<IndexedMap>& maps,
                                 std::optional<std::vector<Matrix>> limit_projections = std::nullopt);
  static ProjectiveSystem create(Poset poset, std::vector<std::size_t> dims,
                                 const std::vector<NamedMap>& maps,
                                 std::optional<std::vector<Matrix>> limit_projections = std::nullopt);

  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t x) const { return dims_.at(x); }

  /// The map L_upper -> L_lower; lower <= upper is required.
  const Matrix& map(std::size_t lower, std::size_t upper) const;

  std::size_t limit_dim() const noexcept { return limit_dim_; }
  const Matrix& projection(std::size_t x) const { return projections_.at(x); }
  const std::vector<Matrix>& projections() const noexcept { return projections_; }
  const Subspace& kernel(std::size_t x) const { return kernels_.at(x); }
  const std::vector<Subspace>& kernels() const noexcept { return kernels_; }

  /// Maps on covering pairs, the defining data of the system.
  std::vector<IndexedMap> cover_maps() const;

  /// Equality of the defining data (poset, dims, maps); the limit is derived.
  friend bool operator==(const ProjectiveSystem& a, const ProjectiveSystem& b) {
    return a.poset_ == b.poset_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
  }

 private:
  Poset poset_;
  std::vector<std::size_t> dims_;
  std::vector<std::optional<Matrix>> maps_;  // index lower * n + upper
  std::size_t limit_dim_ = 0;
  std::vector<Matrix> projections_;
  std::vector<Subspace> kernels_;
};

struct Limit {
  std::size_t dim = 0;
  std::vector<Matrix> projections;
};

Limit limit(const ProjectiveSystem& system);

/// Basis of {X in End(L) : X(K_x) ⊆ K_x for every x}.
std::vector<Matrix> stabilizer_algebra(const ProjectiveSystem& system);

/// Invariance of k under the automorphism group of the system, decided by the
/// stabilizer algebra plus a deterministic sample of group elements.
bool is_invariant(const ProjectiveSystem& system, const Subspace& k);
bool is_invariant(const ProjectiveSystem& system, const std::vector<Matrix>& algebra,
                  const Subspace& k);

struct Completion {
  ProjectiveSystem system;
  /// Original element -> completion element; empty when K_x is the whole limit.
  std::vector<std::optional<std::size_t>> index_map;
  /// For each completion element, the antichain of original elements whose
  /// kernel intersection it is: the maximal x with K_x containing it.
  std::vector<Antichain> generators;
};

/// Enlarges the index set by all proper kernel intersections, ordered by
/// reverse inclusion. The limit coordinates are kept, so the completion's
/// kernels are literally the intersections. Throws InvarianceFailure if a
/// computed intersection fails is_invariant.
Completion completion(const ProjectiveSystem& system);

bool is_complete(const ProjectiveSystem& system);

struct SystemIsomorphism {
  Bijection omega;
  std::vector<Matrix> psi;  // psi[x] : L_x -> L'_omega(x)
  Matrix limit_map;         // L -> L'
};

/// First isomorphism found over dimension-labelled poset isomorphisms, or
/// nothing. Invertible solutions are searched with exact rational sampling of
/// the linear solution space.
std::optional<SystemIsomorphism> system_isomorphic(const ProjectiveSystem& a,
                                                   const ProjectiveSystem& b);

/// Block-diagonal product over a shared poset. Throws PosetMismatch.
ProjectiveSystem product_system(const ProjectiveSystem& a, const ProjectiveSystem& b);

}  // namespace multifol
