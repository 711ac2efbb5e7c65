#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multifol {

/// Sorted element indices of pairwise incomparable elements.
using Antichain = std::vector<std::size_t>;

/// A bijection given as image indices: map[i] is the image of element i.
using Bijection = std::vector<std::size_t>;

inline constexpr std::size_t kMaxPosetElements = 64;
inline constexpr std::size_t kDefaultAntichainLimit = 20;

/// Finite partially ordered set over opaque string identifiers.
///
/// Elements are stored in lexicographic identifier order; every index-based
/// query refers to that order. The relation is held as one bitmask per
/// element, so at most 64 elements are supported.
class Poset {
 public:
  Poset() = default;

  /// Builds the reflexive-transitive closure of `leq_pairs`.
  /// Throws CycleError when antisymmetry fails, UnknownElement for pairs naming
  /// unlisted elements, PosetTooLarge above 64 elements.
  static Poset create(std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  /// Same as create() but with index pairs into the sorted element list.
  static Poset from_relation(std::vector<std::string> elements,
                             const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& elements() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  /// Throws UnknownElement.
  std::size_t require(const std::string& name) const;

  bool leq(std::size_t x, std::size_t y) const noexcept { return (up_[x] >> y) & 1U; }
  bool less(std::size_t x, std::size_t y) const noexcept { return x != y && leq(x, y); }
  bool comparable(std::size_t x, std::size_t y) const noexcept { return leq(x, y) || leq(y, x); }

  /// Bitmask of all y with x <= y.
  std::uint64_t up_set(std::size_t x) const noexcept { return up_[x]; }
  /// Bitmask of all y with y <= x.
  std::uint64_t down_set(std::size_t x) const noexcept { return down_[x]; }

  /// Pairs (x, y) with x < y and nothing strictly between, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Covering predecessors of y, ascending.
  std::vector<std::size_t> lower_covers(std::size_t y) const;

  /// Length of the longest covering chain ending at x (1 for minimal x).
  std::size_t floor(std::size_t x) const;
  std::vector<std::size_t> floors() const;

  std::optional<std::size_t> greatest() const;
  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;
  /// Maximal elements of a subset given as a bitmask, ascending.
  std::vector<std::size_t> maximal_of(std::uint64_t subset) const;

  bool is_antichain(std::uint64_t subset) const;

  /// All nonempty antichains in colexicographic order (ascending bitmask).
  /// Throws PosetTooLarge if size() exceeds `limit`.
  std::vector<Antichain> antichains(std::size_t limit = kDefaultAntichainLimit) const;

  /// Subposet on the given (ascending) indices with the induced order.
  Poset induced(const std::vector<std::size_t>& indices) const;

  /// All comparable pairs (x, y) with x <= y, including x == y.
  std::vector<std::pair<std::size_t, std::size_t>> relation() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
};

/// Visits order-isomorphisms w: P -> Q with label_q[w(x)] == label_p[x], in
/// lexicographic order of the image vector. The visitor returns false to stop.
void for_each_labeled_isomorphism(const Poset& p, const Poset& q,
                                  const std::vector<std::int64_t>& label_p,
                                  const std::vector<std::int64_t>& label_q,
                                  const std::function<bool(const Bijection&)>& visit);

std::vector<Bijection> labeled_isomorphisms(const Poset& p, const Poset& q,
                                            const std::vector<std::int64_t>& label_p,
                                            const std::vector<std::int64_t>& label_q);

}  // namespace multifol
