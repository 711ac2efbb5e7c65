#include "multifol/multifoliate.hpp"

#include <random>

#include "multifol/error.hpp"

namespace multifol {

namespace {

using nlohmann::json;

void require_same_poset(const Poset& a, const Poset& b) {
  if (!(a == b)) throw Error(ErrorCode::PosetMismatch, "structures live over different posets");
}

/// Deterministic pseudo-random invertible member of the pattern.
Matrix sample_member(const GLPattern& pattern, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  for (;;) {
    Matrix m(pattern.n(), pattern.n());
    for (std::size_t i = 0; i < pattern.n(); ++i)
      for (std::size_t j = 0; j < pattern.n(); ++j)
        if (pattern.allowed(i, j)) m(i, j) = entry(rng);
    if (is_isomorphism(m)) return m;
  }
}

}  // namespace

MultifoliateStructure MultifoliateStructure::create(Poset poset, std::size_t n,
                                                    std::vector<std::size_t> p) {
  if (p.size() != n)
    throw Error(ErrorCode::BadIndex, "labelling must assign a level to each coordinate",
                json::array({p.size(), n}));
  std::vector<bool> hit(poset.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] >= poset.size())
      throw Error(ErrorCode::BadIndex, "coordinate labelled with an unknown element",
                  json{{"coordinate", i + 1}});
    hit[p[i]] = true;
  }
  for (std::size_t x = 0; x < poset.size(); ++x)
    if (!hit[x])
      throw Error(ErrorCode::NotSurjective, "labelling misses element '" + poset.name(x) + "'",
                  poset.name(x));
  MultifoliateStructure s;
  s.poset_ = std::move(poset);
  s.p_ = std::move(p);
  return s;
}

std::vector<std::size_t> MultifoliateStructure::fiber_sizes() const {
  std::vector<std::size_t> out(poset_.size(), 0);
  for (auto x : p_) ++out[x];
  return out;
}

std::vector<std::size_t> MultifoliateStructure::coordinates_below(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p_.size(); ++i)
    if (poset_.leq(p_[i], x)) out.push_back(i);
  return out;
}

std::size_t GLPattern::allowed_count() const {
  std::size_t c = 0;
  for (bool b : allowed_) c += b;
  return c;
}

GLPattern gl_pattern(const MultifoliateStructure& s) {
  const std::size_t n = s.n();
  std::vector<bool> allowed(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) allowed[i * n + j] = s.poset().leq(s.level(j), s.level(i));
  return {n, std::move(allowed)};
}

bool pattern_member(const GLPattern& pattern, const Matrix& m) {
  if (m.rows() != pattern.n() || m.cols() != pattern.n()) return false;
  for (std::size_t i = 0; i < pattern.n(); ++i)
    for (std::size_t j = 0; j < pattern.n(); ++j)
      if (!pattern.allowed(i, j) && sgn(m(i, j)) != 0) return false;
  return is_isomorphism(m);
}

bool jacobian_check(const MultifoliateStructure& source, const MultifoliateStructure& target,
                    const Matrix& jacobian) {
  require_same_poset(source.poset(), target.poset());
  if (jacobian.rows() != target.n() || jacobian.cols() != source.n())
    throw Error(ErrorCode::ShapeMismatch, "Jacobian must be target.n x source.n",
                json{{"shape", json::array({jacobian.rows(), jacobian.cols()})},
                     {"expected", json::array({target.n(), source.n()})}});
  for (std::size_t a = 0; a < target.n(); ++a)
    for (std::size_t i = 0; i < source.n(); ++i)
      if (!source.poset().leq(source.level(i), target.level(a)) && sgn(jacobian(a, i)) != 0)
        return false;
  return true;
}

ProjectiveSystem coordinate_system(const Poset& P, const std::vector<std::size_t>& levels) {
  const std::size_t n = levels.size();
  std::vector<std::vector<std::size_t>> h(P.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < P.size(); ++x)
      if (P.leq(levels[i], x)) h[x].push_back(i);
  std::vector<std::size_t> dims;
  std::vector<Matrix> proj;
  for (std::size_t x = 0; x < P.size(); ++x) {
    dims.push_back(h[x].size());
    Matrix m(h[x].size(), n);
    for (std::size_t r = 0; r < h[x].size(); ++r) m(r, h[x][r]) = 1;
    proj.push_back(std::move(m));
  }
  std::vector<IndexedMap> maps;
  for (const auto& [x, y] : P.covers()) {
    Matrix m(h[x].size(), h[y].size());
    for (std::size_t r = 0; r < h[x].size(); ++r)
      for (std::size_t c = 0; c < h[y].size(); ++c)
        if (h[y][c] == h[x][r]) m(r, c) = 1;
    maps.push_back({x, y, std::move(m)});
  }
  return ProjectiveSystem::create(P, std::move(dims), maps, std::move(proj));
}

ProjectiveSystem system_of(const MultifoliateStructure& s) { return coordinate_system(s.poset(), s.p()); }

MultifoliateStructure product_structure(const MultifoliateStructure& a,
                                        const MultifoliateStructure& b) {
  require_same_poset(a.poset(), b.poset());
  std::vector<std::size_t> p = a.p();
  p.insert(p.end(), b.p().begin(), b.p().end());
  const std::size_t n = p.size();
  return MultifoliateStructure::create(a.poset(), n, std::move(p));
}

Matrix permutation_matrix(const std::vector<std::size_t>& sigma) {
  Matrix m(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) m(i, sigma[i]) = 1;
  return m;
}

std::optional<Equivalence> equivalent(const MultifoliateStructure& s, const MultifoliateStructure& t) {
  if (s.n() != t.n())
    throw Error(ErrorCode::SizeMismatch, "structures act on different numbers of coordinates",
                json::array({s.n(), t.n()}));
  const std::size_t n = s.n();
  auto to_labels = [](const std::vector<std::size_t>& v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
  };
  const GLPattern ps = gl_pattern(s);
  const GLPattern pt = gl_pattern(t);
  std::optional<Equivalence> found;
  for_each_labeled_isomorphism(
      s.poset(), t.poset(), to_labels(s.fiber_sizes()), to_labels(t.fiber_sizes()),
      [&](const Bijection& omega) {
        std::vector<std::size_t> inverse_omega(omega.size());
        for (std::size_t x = 0; x < omega.size(); ++x) inverse_omega[omega[x]] = x;
        // Fibers of s in ascending order, consumed as t's coordinates ask.
        std::vector<std::vector<std::size_t>> fibers(s.poset().size());
        for (std::size_t i = n; i-- > 0;) fibers[s.level(i)].push_back(i);
        std::vector<std::size_t> sigma(n);
        for (std::size_t i = 0; i < n; ++i) {
          auto& fiber = fibers[inverse_omega[t.level(i)]];
          sigma[i] = fiber.back();
          fiber.pop_back();
        }
        // Exact certificate: the permutation carries one pattern onto the other.
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (ps.allowed(sigma[i], sigma[j]) != pt.allowed(i, j)) return true;
        const Matrix perm = permutation_matrix(sigma);
        const Matrix perm_inv = perm.transpose();
        std::mt19937_64 rng(0xC0FFEEULL);
        for (int k = 0; k < 8; ++k)
          if (!pattern_member(pt, perm * sample_member(ps, rng) * perm_inv)) return true;
        found = Equivalence{omega, std::move(sigma)};
        return false;
      });
  return found;
}

}  // namespace multifol
