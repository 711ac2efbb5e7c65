#include "multifol/projsys.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "multifol/error.hpp"

namespace multifol {

namespace {

using nlohmann::json;

json shape_of(const Matrix& m) { return json::array({m.rows(), m.cols()}); }

/// Accumulates homogeneous linear equations, compressing by row reduction
/// whenever the buffer outgrows the number of unknowns.
class EquationSystem {
 public:
  explicit EquationSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  void add(Vector row) {
    rows_.push_back(std::move(row));
    if (rows_.size() > 2 * unknowns_ + 8) compress();
  }

  Subspace solutions() {
    compress();
    return kernel(Matrix::from_rows(rows_, unknowns_));
  }

 private:
  void compress() { rows_ = rref(Matrix::from_rows(rows_, unknowns_)).row_list(); }

  std::size_t unknowns_;
  std::vector<Vector> rows_;
};

/// Basis of {X : rows x cols | X(source[i]) ⊆ target[i] for all i}.
std::vector<Matrix> solve_inclusions(std::size_t rows, std::size_t cols,
                                     const std::vector<Subspace>& source,
                                     const std::vector<Subspace>& target) {
  EquationSystem eqs(rows * cols);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Subspace ann = annihilator(target[i]);
    for (std::size_t a = 0; a < ann.dim(); ++a)
      for (std::size_t b = 0; b < source[i].dim(); ++b) {
        Vector eq(rows * cols);
        bool nonzero = false;
        for (std::size_t r = 0; r < rows; ++r) {
          const Rational& phi = ann.basis()(a, r);
          if (sgn(phi) == 0) continue;
          for (std::size_t c = 0; c < cols; ++c) {
            const Rational& k = source[i].basis()(b, c);
            if (sgn(k) == 0) continue;
            eq[r * cols + c] = phi * k;
            nonzero = true;
          }
        }
        if (nonzero) eqs.add(std::move(eq));
      }
  }
  const Subspace sol = eqs.solutions();
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < sol.dim(); ++s) {
    Matrix x(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) x(r, c) = sol.basis()(s, r * cols + c);
    out.push_back(std::move(x));
  }
  return out;
}

bool maps_into(const Matrix& x, const Subspace& from, const Subspace& to) {
  for (std::size_t r = 0; r < from.dim(); ++r)
    if (!to.contains(x.apply(from.basis().row(r)))) return false;
  return true;
}

}  // namespace

ProjectiveSystem ProjectiveSystem::create(Poset poset, std::vector<std::size_t> dims,
                                          const std::vector<NamedMap>& maps,
                                          std::optional<std::vector<Matrix>> limit_projections) {
  std::vector<IndexedMap> indexed;
  indexed.reserve(maps.size());
  for (const auto& m : maps)
    indexed.push_back({poset.require(m.to), poset.require(m.from), m.matrix});
  return create(std::move(poset), std::move(dims), indexed, std::move(limit_projections));
}

ProjectiveSystem ProjectiveSystem::create(Poset poset, std::vector<std::size_t> dims,
                                          const std::vector<IndexedMap>& maps,
                                          std::optional<std::vector<Matrix>> limit_projections) {
  const std::size_t n = poset.size();
  if (dims.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "one dimension per poset element is required",
                json::array({dims.size(), n}));
  ProjectiveSystem sys;
  sys.poset_ = std::move(poset);
  sys.dims_ = std::move(dims);
  const Poset& P = sys.poset_;
  auto name = [&](std::size_t i) { return P.name(i); };

  std::vector<std::optional<Matrix>> given(n * n);
  for (const auto& m : maps) {
    if (m.lower >= n || m.upper >= n) throw Error(ErrorCode::BadIndex, "map index out of range");
    if (!P.leq(m.lower, m.upper))
      throw Error(ErrorCode::CoherenceError,
                  "map between non-comparable or wrongly ordered elements",
                  json{{"from", name(m.upper)}, {"to", name(m.lower)}});
    if (m.matrix.rows() != sys.dims_[m.lower] || m.matrix.cols() != sys.dims_[m.upper])
      throw Error(ErrorCode::DimensionMismatch, "map shape does not match dimensions",
                  json{{"from", name(m.upper)}, {"to", name(m.lower)}, {"shape", shape_of(m.matrix)},
                       {"expected", json::array({sys.dims_[m.lower], sys.dims_[m.upper]})}});
    if (m.lower == m.upper && m.matrix != Matrix::identity(sys.dims_[m.lower]))
      throw Error(ErrorCode::CoherenceError, "self map must be the identity",
                  json{{"element", name(m.lower)}});
    if (!is_epimorphism(m.matrix))
      throw Error(ErrorCode::NotEpimorphism, "map is not surjective",
                  json{{"from", name(m.upper)}, {"to", name(m.lower)}});
    auto& slot = given[m.lower * n + m.upper];
    if (slot && *slot != m.matrix)
      throw Error(ErrorCode::CoherenceError, "conflicting duplicate maps",
                  json{{"from", name(m.upper)}, {"to", name(m.lower)}});
    slot = m.matrix;
  }
  for (const auto& [x, y] : P.covers())
    if (!given[x * n + y])
      throw Error(ErrorCode::MissingMap, "no map on covering pair",
                  json{{"from", name(y)}, {"to", name(x)}});

  // Composite along covering paths; every path through a lower cover of the
  // upper element must agree (which by induction covers all paths).
  sys.maps_.assign(n * n, std::nullopt);
  std::function<const Matrix&(std::size_t, std::size_t)> composite =
      [&](std::size_t x, std::size_t y) -> const Matrix& {
    auto& slot = sys.maps_[x * n + y];
    if (slot) return *slot;
    if (x == y) {
      slot = Matrix::identity(sys.dims_[x]);
      return *slot;
    }
    std::optional<Matrix> value;
    std::size_t via = x;
    for (std::size_t k : P.lower_covers(y)) {
      if (!P.leq(x, k)) continue;
      Matrix candidate = composite(x, k) * *given[k * n + y];
      if (!value) {
        value = std::move(candidate);
        via = k;
      } else if (*value != candidate) {
        throw Error(ErrorCode::CoherenceError, "composites along different covering paths disagree",
                    json{{"from", name(y)}, {"to", name(x)}, {"via", json::array({name(via), name(k)})}});
      }
    }
    if (const auto& direct = given[x * n + y]; direct && *direct != *value)
      throw Error(ErrorCode::CoherenceError, "supplied map differs from the composite of covers",
                  json{{"from", name(y)}, {"to", name(x)}});
    slot = std::move(value);
    return *slot;
  };
  for (const auto& [x, y] : P.relation()) composite(x, y);

  if (limit_projections) {
    auto& proj = *limit_projections;
    if (proj.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "one limit projection per element is required");
    const std::size_t d = n == 0 ? 0 : proj.front().cols();
    Matrix stacked(0, d);
    for (std::size_t x = 0; x < n; ++x) {
      if (proj[x].rows() != sys.dims_[x] || proj[x].cols() != d)
        throw Error(ErrorCode::DimensionMismatch, "limit projection has the wrong shape",
                    json{{"element", name(x)}, {"shape", shape_of(proj[x])}});
      stacked = vstack(stacked, proj[x]);
    }
    for (const auto& [x, y] : P.covers())
      if (*sys.maps_[x * n + y] * proj[y] != proj[x])
        throw Error(ErrorCode::CoherenceError, "limit projections do not commute with the maps",
                    json{{"from", name(y)}, {"to", name(x)}});
    if (rank(stacked) != d)
      throw Error(ErrorCode::CoherenceError, "limit projections are not jointly injective");
    sys.projections_ = std::move(proj);
    sys.limit_dim_ = d;
  } else if (auto top = P.greatest()) {
    sys.limit_dim_ = sys.dims_[*top];
    for (std::size_t x = 0; x < n; ++x) sys.projections_.push_back(*sys.maps_[x * n + *top]);
  } else {
    // Compatible tuples inside the product of all spaces.
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) offset[x + 1] = offset[x] + sys.dims_[x];
    const std::size_t total = offset[n];
    std::vector<Vector> eqs;
    for (const auto& [x, y] : P.covers()) {
      const Matrix& m = *sys.maps_[x * n + y];
      for (std::size_t r = 0; r < sys.dims_[x]; ++r) {
        Vector eq(total);
        for (std::size_t c = 0; c < sys.dims_[y]; ++c) eq[offset[y] + c] = m(r, c);
        eq[offset[x] + r] -= 1;
        eqs.push_back(std::move(eq));
      }
    }
    const Subspace w = multifol::kernel(Matrix::from_rows(eqs, total));
    sys.limit_dim_ = w.dim();
    for (std::size_t x = 0; x < n; ++x) {
      Matrix p(sys.dims_[x], w.dim());
      for (std::size_t r = 0; r < sys.dims_[x]; ++r)
        for (std::size_t k = 0; k < w.dim(); ++k) p(r, k) = w.basis()(k, offset[x] + r);
      sys.projections_.push_back(std::move(p));
    }
  }
  // The product-based limit can differ in dimension from a supplied one only
  // if the supplied projections miss compatible tuples.
  if (limit_projections && n > 0) {
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) offset[x + 1] = offset[x] + sys.dims_[x];
    std::vector<Vector> eqs;
    for (const auto& [x, y] : P.covers()) {
      const Matrix& m = *sys.maps_[x * n + y];
      for (std::size_t r = 0; r < sys.dims_[x]; ++r) {
        Vector eq(offset[n]);
        for (std::size_t c = 0; c < sys.dims_[y]; ++c) eq[offset[y] + c] = m(r, c);
        eq[offset[x] + r] -= 1;
        eqs.push_back(std::move(eq));
      }
    }
    const std::size_t w_dim = multifol::kernel(Matrix::from_rows(eqs, offset[n])).dim();
    if (w_dim != sys.limit_dim_)
      throw Error(ErrorCode::CoherenceError, "supplied limit has the wrong dimension",
                  json{{"supplied", sys.limit_dim_}, {"limit", w_dim}});
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!is_epimorphism(sys.projections_[x]))
      throw Error(ErrorCode::NotEpimorphism, "canonical projection is not surjective",
                  json{{"element", name(x)}});
    sys.kernels_.push_back(multifol::kernel(sys.projections_[x]));
  }
  return sys;
}

const Matrix& ProjectiveSystem::map(std::size_t lower, std::size_t upper) const {
  const auto& slot = maps_.at(lower * size() + upper);
  if (!slot)
    throw Error(ErrorCode::BadIndex, "no map between non-comparable elements",
                json{{"from", poset_.name(upper)}, {"to", poset_.name(lower)}});
  return *slot;
}

std::vector<IndexedMap> ProjectiveSystem::cover_maps() const {
  std::vector<IndexedMap> out;
  for (const auto& [x, y] : poset_.covers()) out.push_back({x, y, map(x, y)});
  return out;
}

Limit limit(const ProjectiveSystem& system) {
  return {system.limit_dim(), system.projections()};
}

std::vector<Matrix> stabilizer_algebra(const ProjectiveSystem& system) {
  const std::size_t d = system.limit_dim();
  return solve_inclusions(d, d, system.kernels(), system.kernels());
}

bool is_invariant(const ProjectiveSystem& system, const Subspace& k) {
  return is_invariant(system, stabilizer_algebra(system), k);
}

bool is_invariant(const ProjectiveSystem& system, const std::vector<Matrix>& algebra,
                  const Subspace& k) {
  const std::size_t d = system.limit_dim();
  if (k.ambient_dim() != d)
    throw Error(ErrorCode::DimensionMismatch, "subspace does not live in the limit",
                json::array({k.ambient_dim(), d}));
  for (const auto& x : algebra)
    if (!maps_into(x, k, k)) return false;
  // Group samples: I + X for algebra basis elements, when invertible.
  const Matrix id = Matrix::identity(d);
  for (const auto& x : algebra) {
    const Matrix g = id + x;
    if (!is_isomorphism(g)) continue;
    if (!maps_into(g, k, k)) return false;
  }
  // Coordinate sign flips that preserve every kernel.
  for (std::size_t i = 0; i < d; ++i) {
    Matrix flip = id;
    flip(i, i) = -1;
    bool in_group = true;
    for (const auto& kx : system.kernels())
      if (!maps_into(flip, kx, kx)) {
        in_group = false;
        break;
      }
    if (in_group && !maps_into(flip, k, k)) return false;
  }
  return true;
}

Completion completion(const ProjectiveSystem& system) {
  const std::size_t n = system.size();
  const std::size_t d = system.limit_dim();
  const Poset& P = system.poset();

  // Closure of the proper kernels under pairwise intersection; equals the set
  // of intersections over nonempty antichains.
  std::vector<Subspace> spaces;
  auto find = [&](const Subspace& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < spaces.size(); ++i)
      if (spaces[i] == s) return i;
    return std::nullopt;
  };
  for (std::size_t x = 0; x < n; ++x)
    if (!system.kernel(x).is_full() && !find(system.kernel(x))) spaces.push_back(system.kernel(x));
  for (std::size_t i = 0; i < spaces.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Subspace meet = intersect(spaces[i], spaces[j]);
      if (!find(meet)) spaces.push_back(std::move(meet));
    }

  const auto algebra = stabilizer_algebra(system);
  struct Entry {
    std::string name;
    Subspace space;
    Antichain generator;
    bool original = false;
  };
  std::vector<Entry> entries;
  for (const auto& s : spaces) {
    if (!is_invariant(system, algebra, s))
      throw Error(ErrorCode::InvarianceFailure, "kernel intersection failed the invariance test",
                  json{{"dim", s.dim()}});
    std::uint64_t containing = 0;
    std::optional<std::size_t> exact;
    for (std::size_t x = 0; x < n; ++x) {
      if (system.kernel(x).contains(s)) containing |= std::uint64_t{1} << x;
      if (!exact && system.kernel(x) == s) exact = x;
    }
    Antichain gen = P.maximal_of(containing);
    std::string name;
    if (exact) {
      name = P.name(*exact);
    } else {
      name = "{";
      for (std::size_t i = 0; i < gen.size(); ++i) name += (i ? "," : "") + P.name(gen[i]);
      name += "}";
    }
    entries.push_back({std::move(name), s, std::move(gen), exact.has_value()});
  }
  // Original names first, then generated ones, in name order; later
  // duplicates are primed until unique.
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.original != b.original ? a.original : a.name < b.name;
  });
  std::set<std::string> used;
  for (auto& e : entries) {
    while (used.count(e.name)) e.name += "'";
    used.insert(e.name);
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });

  const std::size_t m = entries.size();
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(entries[a].name);
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && entries[a].space.contains(entries[b].space)) order.emplace_back(a, b);
  }
  Poset tilde = Poset::from_relation(std::move(names), order);

  std::vector<std::size_t> dims;
  std::vector<Matrix> quotients, sections;
  for (const auto& e : entries) {
    quotients.push_back(quotient_map(d, e.space));
    sections.push_back(quotient_section(d, e.space));
    dims.push_back(quotients.back().rows());
  }
  std::vector<IndexedMap> maps;
  for (const auto& [a, b] : tilde.covers()) maps.push_back({a, b, quotients[a] * sections[b]});

  Completion out;
  out.system = ProjectiveSystem::create(std::move(tilde), std::move(dims), maps, quotients);
  out.index_map.assign(n, std::nullopt);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < m; ++a)
      if (entries[a].space == system.kernel(x)) out.index_map[x] = a;
  for (auto& e : entries) out.generators.push_back(std::move(e.generator));
  return out;
}

bool is_complete(const ProjectiveSystem& system) {
  const Completion c = completion(system);
  const std::size_t n = system.size();
  if (c.system.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (const auto& img : c.index_map) {
    if (!img || hit[*img]) return false;
    hit[*img] = true;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (system.poset().leq(x, y) != c.system.poset().leq(*c.index_map[x], *c.index_map[y]))
        return false;
  return true;
}

std::optional<SystemIsomorphism> system_isomorphic(const ProjectiveSystem& a,
                                                   const ProjectiveSystem& b) {
  if (a.size() != b.size() || a.limit_dim() != b.limit_dim()) return std::nullopt;
  const std::size_t d = a.limit_dim();
  const std::size_t n = a.size();
  std::vector<std::int64_t> la(a.dims().begin(), a.dims().end());
  std::vector<std::int64_t> lb(b.dims().begin(), b.dims().end());
  std::optional<SystemIsomorphism> found;
  for_each_labeled_isomorphism(a.poset(), b.poset(), la, lb, [&](const Bijection& omega) {
    // psi on the limits with psi(K_x) ⊆ K'_omega(x); equal codimensions then
    // make these equalities and psi descends to every level.
    std::vector<Subspace> targets;
    for (std::size_t x = 0; x < n; ++x) targets.push_back(b.kernel(omega[x]));
    const auto solutions = solve_inclusions(d, d, a.kernels(), targets);
    if (solutions.empty() && d > 0) return true;

    std::optional<Matrix> psi;
    const Matrix id = Matrix::identity(d);
    bool identity_ok = true;
    for (std::size_t x = 0; x < n && identity_ok; ++x) identity_ok = a.kernel(x) == targets[x];
    if (identity_ok) psi = id;
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<long> coeff(-1000, 1000);
    for (int attempt = 0; attempt < 24 && !psi; ++attempt) {
      Matrix candidate(d, d);
      for (const auto& s : solutions) candidate = candidate + Rational(coeff(rng)) * s;
      if (is_isomorphism(candidate)) psi = std::move(candidate);
    }
    if (!psi) return true;

    SystemIsomorphism iso;
    iso.omega = omega;
    iso.limit_map = *psi;
    for (std::size_t x = 0; x < n; ++x)
      iso.psi.push_back(b.projection(omega[x]) * *psi * right_inverse(a.projection(x)));
    found = std::move(iso);
    return false;
  });
  return found;
}

ProjectiveSystem product_system(const ProjectiveSystem& a, const ProjectiveSystem& b) {
  if (!(a.poset() == b.poset()))
    throw Error(ErrorCode::PosetMismatch, "product requires the same index poset");
  const std::size_t n = a.size();
  std::vector<std::size_t> dims(n);
  std::vector<Matrix> proj;
  for (std::size_t x = 0; x < n; ++x) {
    dims[x] = a.dim(x) + b.dim(x);
    proj.push_back(block_diagonal(a.projection(x), b.projection(x)));
  }
  std::vector<IndexedMap> maps;
  for (const auto& [x, y] : a.poset().covers())
    maps.push_back({x, y, block_diagonal(a.map(x, y), b.map(x, y))});
  return ProjectiveSystem::create(a.poset(), std::move(dims), maps, std::move(proj));
}

}  // namespace multifol
