#pragma once

#include "helpers.hpp"
#include "multifol/multifoliate.hpp"

// Exhaustive equivalence: some order isomorphism carries fiber sizes of s to those of t.
inline bool brute_force_equivalent(const mf::MultifoliateStructure& s, const mf::MultifoliateStructure& t) {
  const auto& P = s.poset();
  const auto& R = t.poset();
  if (P.size() != R.size() || s.n() != t.n()) return false;
  const auto fs = s.fiber_sizes(), ft = t.fiber_sizes();
  std::vector<std::size_t> w(P.size());
  std::iota(w.begin(), w.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < P.size() && ok; ++x) {
      ok = fs[x] == ft[w[x]];
      for (std::size_t y = 0; y < P.size() && ok; ++y) ok = P.leq(x, y) == R.leq(w[x], w[y]);
    }
    if (ok) return true;
  } while (std::next_permutation(w.begin(), w.end()));
  return false;
}
