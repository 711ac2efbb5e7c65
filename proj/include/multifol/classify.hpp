#pragma once

#include <cstddef>
#include <vector>

#include "multifol/linalg.hpp"
#include "multifol/multifoliate.hpp"
#include "multifol/projsys.hpp"

namespace multifol {

/// The dual inductive system: each dual space L*_x sits inside L* as the
/// annihilator of K_x.
struct DualSystem {
  ProjectiveSystem base;
  std::vector<Subspace> duals;
};

/// Requires a greatest element and a complete system.
/// Throws NoGreatestElement, NotComplete.
DualSystem dual_system(const ProjectiveSystem& system);

struct Classification {
  MultifoliateStructure structure;        // over the distinguished elements
  Matrix basis;                           // rows e^1..e^n of L*
  std::vector<std::size_t> distinguished; // indices into the base poset, ascending
  std::vector<std::size_t> floors;        // floor of every base element
  std::vector<std::size_t> contributed;   // s(x): basis vectors chosen at x
};

/// Floor-by-floor basis extraction. Each element's dual space is compared
/// with the span of the vectors chosen on strictly lower floors; a proper
/// excess makes the element distinguished and contributes a complement.
/// Throws NotComplete (chosen vectors dependent), BasisIncomplete (they do
/// not span L*), AmbiguousMinimal.
Classification extract_structure(const DualSystem& dual);

/// completion -> dual_system -> extract_structure.
Classification classify(const ProjectiveSystem& system);

}  // namespace multifol
