#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "multifol/multifoliate.hpp"
#include "multifol/polynomial.hpp"
#include "multifol/poset.hpp"
#include "multifol/weil.hpp"

/// Seeded random instances for property tests and the acceptance suite.
namespace multifol::checks {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
Rational small_rational(Rng& rng, bool allow_zero = true);

/// Between 1 and max_size elements named "a", "b", ...; random order relation.
Poset random_poset(Rng& rng, std::size_t max_size = 5);
/// Surjective structure with poset size <= max_poset and poset size <= n <= max_n.
MultifoliateStructure random_structure(Rng& rng, std::size_t max_poset = 5, std::size_t max_n = 8);
MultifoliateStructure random_structure_over(Rng& rng, const Poset& poset, std::size_t n);

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);
/// The structure q = p ∘ sigma.
MultifoliateStructure permuted(const MultifoliateStructure& s, const std::vector<std::size_t>& sigma);

/// Invertible integer matrix supported on the pattern.
Matrix random_pattern_member(Rng& rng, const GLPattern& pattern);

Polynomial random_polynomial(Rng& rng, std::size_t vars, unsigned max_degree);
PolyMap random_polymap(Rng& rng, std::size_t inputs, std::size_t outputs, unsigned max_degree);
/// A monomial algebra in at most two variables with nilpotency order <= max_order.
WeilAlgebra random_weil_algebra(Rng& rng, unsigned max_order = 4);
std::vector<Vector> random_algebra_point(Rng& rng, const WeilAlgebra& a, std::size_t m);

/// Monomial algebras over the poset whose homs are either variable
/// inclusions (variable sets growing up the order) or truncations (variable
/// sets and degree bounds shrinking up the order), twisted by random
/// variable rescalings.
WeilSystem random_weil_system(Rng& rng, const Poset& poset);
CartesianMultifibered random_object(Rng& rng, const Poset& poset, std::size_t max_n = 4);

}  // namespace multifol::checks
