#include "multifol/classify.hpp"

#include <algorithm>
#include <map>

#include "multifol/error.hpp"

namespace multifol {

using nlohmann::json;

DualSystem dual_system(const ProjectiveSystem& system) {
  const Poset& P = system.poset();
  if (!P.greatest())
    throw Error(ErrorCode::NoGreatestElement, "dual system needs a greatest element");
  if (!is_complete(system)) throw Error(ErrorCode::NotComplete, "system is not complete");
  DualSystem dual{system, {}};
  for (std::size_t x = 0; x < P.size(); ++x) dual.duals.push_back(annihilator(system.kernel(x)));
  for (const auto& [x, y] : P.covers())
    if (!dual.duals[y].contains(dual.duals[x]))
      throw Error(ErrorCode::NotComplete, "dual inclusions are not monotone",
                  json{{"lower", P.name(x)}, {"upper", P.name(y)}});
  return dual;
}

Classification extract_structure(const DualSystem& dual) {
  const Poset& P = dual.base.poset();
  const std::size_t n = dual.base.limit_dim();
  const std::size_t size = P.size();

  Classification out;
  out.floors = P.floors();
  out.contributed.assign(size, 0);
  std::map<std::size_t, std::vector<std::size_t>> by_floor;
  for (std::size_t x = 0; x < size; ++x) by_floor[out.floors[x]].push_back(x);  // ascending names

  std::vector<Vector> chosen;
  std::vector<std::size_t> source;  // element that contributed each vector
  Subspace lower_span(n);
  for (const auto& [floor, elements] : by_floor) {
    for (std::size_t x : elements) {
      const Subspace& space = dual.duals[x];
      if (lower_span.contains(space)) continue;
      for (auto& v : extend_basis(lower_span, space)) {
        chosen.push_back(std::move(v));
        source.push_back(x);
        ++out.contributed[x];
      }
      out.distinguished.push_back(x);
    }
    lower_span = Subspace::span(n, chosen);
    if (lower_span.dim() != chosen.size())
      throw Error(ErrorCode::NotComplete, "vectors chosen up to this floor are dependent",
                  json{{"floor", floor}, {"chosen", chosen.size()}, {"rank", lower_span.dim()}});
  }
  if (chosen.size() != n)
    throw Error(ErrorCode::BasisIncomplete, "chosen vectors do not span the dual of the limit",
                json{{"chosen", chosen.size()}, {"dim", n}});
  std::sort(out.distinguished.begin(), out.distinguished.end());
  out.basis = Matrix::from_rows(chosen, n);

  std::vector<std::size_t> position(size, size);
  for (std::size_t k = 0; k < out.distinguished.size(); ++k) position[out.distinguished[k]] = k;
  std::vector<std::size_t> p(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::uint64_t containing = 0;
    for (std::size_t x : out.distinguished)
      if (dual.duals[x].contains(chosen[m])) containing |= std::uint64_t{1} << x;
    std::vector<std::size_t> minimal;
    for (std::size_t x : out.distinguished)
      if ((containing >> x) & 1U) {
        const std::uint64_t below = P.down_set(x) & containing & ~(std::uint64_t{1} << x);
        if (below == 0) minimal.push_back(x);
      }
    if (minimal.size() != 1) {
      json names = json::array();
      for (auto x : minimal) names.push_back(P.name(x));
      throw Error(ErrorCode::AmbiguousMinimal, "basis vector has no unique minimal level",
                  json{{"vector", m + 1}, {"minimal", names}});
    }
    p[m] = position[minimal.front()];
  }
  out.structure = MultifoliateStructure::create(P.induced(out.distinguished), n, std::move(p));
  return out;
}

Classification classify(const ProjectiveSystem& system) {
  return extract_structure(dual_system(completion(system).system));
}

}  // namespace multifol
