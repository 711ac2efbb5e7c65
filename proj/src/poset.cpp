#include "multifol/poset.hpp"

#include <algorithm>
#include <bit>

#include "multifol/error.hpp"

namespace multifol {

namespace {

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

std::vector<std::size_t> bits_of(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

Poset Poset::create(std::vector<std::string> elements,
                    const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  std::sort(elements.begin(), elements.end());
  if (auto dup = std::adjacent_find(elements.begin(), elements.end()); dup != elements.end())
    throw Error(ErrorCode::SchemaError, "duplicate poset element '" + *dup + "'", *dup);
  auto lookup = [&](const std::string& s) -> std::size_t {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    if (it == elements.end() || *it != s)
      throw Error(ErrorCode::UnknownElement, "unknown poset element '" + s + "'", s);
    return static_cast<std::size_t>(it - elements.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(leq_pairs.size());
  for (const auto& [x, y] : leq_pairs) pairs.emplace_back(lookup(x), lookup(y));
  return from_relation(std::move(elements), pairs);
}

Poset Poset::from_relation(std::vector<std::string> elements,
                           const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs) {
  if (elements.size() > kMaxPosetElements)
    throw Error(ErrorCode::PosetTooLarge,
                "poset has " + std::to_string(elements.size()) + " elements; at most 64 supported",
                elements.size());
  if (!std::is_sorted(elements.begin(), elements.end()))
    throw Error(ErrorCode::SchemaError, "poset elements must be sorted");
  const std::size_t n = elements.size();
  Poset p;
  p.names_ = std::move(elements);
  p.up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) p.up_[i] = bit(i);
  for (const auto& [x, y] : leq_pairs) {
    if (x >= n || y >= n) throw Error(ErrorCode::BadIndex, "relation index out of range");
    p.up_[x] |= bit(y);
  }
  // Warshall closure on bitmasks.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.up_[i] & bit(k)) p.up_[i] |= p.up_[k];
  p.down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : bits_of(p.up_[i])) p.down_[j] |= bit(i);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t both = p.up_[i] & p.down_[i] & ~bit(i);
    if (both != 0) {
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(both));
      throw Error(ErrorCode::CycleError,
                  "order relation has a cycle through '" + p.names_[i] + "' and '" + p.names_[j] + "'",
                  nlohmann::json::array({p.names_[i], p.names_[j]}));
    }
  }
  return p;
}

std::optional<std::size_t> Poset::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Poset::require(const std::string& name) const {
  if (auto i = index_of(name)) return *i;
  throw Error(ErrorCode::UnknownElement, "unknown poset element '" + name + "'", name);
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t y = 0; y < size(); ++y)
    for (std::size_t x : lower_covers(y)) out.emplace_back(x, y);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> Poset::lower_covers(std::size_t y) const {
  std::vector<std::size_t> out;
  const std::uint64_t below = down_[y] & ~bit(y);
  for (std::size_t x : bits_of(below)) {
    // x is covered by y iff no z strictly between.
    const std::uint64_t between = up_[x] & below & ~bit(x);
    if (between == 0) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> Poset::floors() const {
  const std::size_t n = size();
  std::vector<std::size_t> result(n, 0);
  // Process by size of the strict down-set, which is a linear extension.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(down_[a]) < std::popcount(down_[b]);
  });
  for (std::size_t y : order) {
    std::size_t best = 0;
    for (std::size_t x : lower_covers(y)) best = std::max(best, result[x]);
    result[y] = best + 1;
  }
  return result;
}

std::size_t Poset::floor(std::size_t x) const { return floors().at(x); }

std::optional<std::size_t> Poset::greatest() const {
  const std::uint64_t all = size() == 64 ? ~std::uint64_t{0} : bit(size()) - 1;
  for (std::size_t i = 0; i < size(); ++i)
    if (down_[i] == all) return i;
  return std::nullopt;
}

std::vector<std::size_t> Poset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (down_[i] == bit(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Poset::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (up_[i] == bit(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Poset::maximal_of(std::uint64_t subset) const {
  std::vector<std::size_t> out;
  for (std::size_t i : bits_of(subset))
    if ((up_[i] & subset) == bit(i)) out.push_back(i);
  return out;
}

bool Poset::is_antichain(std::uint64_t subset) const {
  for (std::size_t i : bits_of(subset))
    if (((up_[i] | down_[i]) & subset) != bit(i)) return false;
  return true;
}

std::vector<Antichain> Poset::antichains(std::size_t limit) const {
  if (size() > limit)
    throw Error(ErrorCode::PosetTooLarge,
                "antichain enumeration is capped at " + std::to_string(limit) + " elements",
                size());
  // Extend antichains by larger indices only; each mask is produced once and
  // the result is then sorted by mask value.
  std::vector<std::uint64_t> masks;
  std::vector<std::pair<std::uint64_t, std::size_t>> stack;
  for (std::size_t i = 0; i < size(); ++i) stack.emplace_back(bit(i), i);
  while (!stack.empty()) {
    auto [mask, last] = stack.back();
    stack.pop_back();
    masks.push_back(mask);
    std::uint64_t blocked = 0;
    for (std::size_t i : bits_of(mask)) blocked |= up_[i] | down_[i];
    for (std::size_t j = last + 1; j < size(); ++j)
      if (!(blocked & bit(j))) stack.emplace_back(mask | bit(j), j);
  }
  std::sort(masks.begin(), masks.end());
  std::vector<Antichain> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(bits_of(m));
  return out;
}

Poset Poset::induced(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> names;
  for (std::size_t i : indices) names.push_back(names_.at(i));
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b)
      if (a != b && leq(indices[a], indices[b])) rel.emplace_back(a, b);
  return from_relation(std::move(names), rel);
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y : bits_of(up_[x])) out.emplace_back(x, y);
  return out;
}

void for_each_labeled_isomorphism(const Poset& p, const Poset& q,
                                  const std::vector<std::int64_t>& label_p,
                                  const std::vector<std::int64_t>& label_q,
                                  const std::function<bool(const Bijection&)>& visit) {
  const std::size_t n = p.size();
  if (q.size() != n || label_p.size() != n || label_q.size() != n) return;
  // Cheap per-element invariants that any isomorphism must preserve.
  auto signature = [](const Poset& s, const std::vector<std::int64_t>& lab, std::size_t i) {
    return std::tuple{lab[i], std::popcount(s.up_set(i)), std::popcount(s.down_set(i))};
  };
  std::vector<Bijection::value_type> image(n);
  std::vector<bool> used(n, false);
  bool stop = false;
  std::function<void(std::size_t)> extend = [&](std::size_t x) {
    if (stop) return;
    if (x == n) {
      if (!visit(image)) stop = true;
      return;
    }
    const auto sig = signature(p, label_p, x);
    for (std::size_t y = 0; y < n && !stop; ++y) {
      if (used[y] || signature(q, label_q, y) != sig) continue;
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z)
        ok = p.leq(z, x) == q.leq(image[z], y) && p.leq(x, z) == q.leq(y, image[z]);
      if (!ok) continue;
      used[y] = true;
      image[x] = y;
      extend(x + 1);
      used[y] = false;
    }
  };
  extend(0);
}

std::vector<Bijection> labeled_isomorphisms(const Poset& p, const Poset& q,
                                            const std::vector<std::int64_t>& label_p,
                                            const std::vector<std::int64_t>& label_q) {
  std::vector<Bijection> out;
  for_each_labeled_isomorphism(p, q, label_p, label_q, [&](const Bijection& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace multifol
