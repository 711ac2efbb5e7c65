#include "multifol/checks/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace multifol::checks {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Rational small_rational(Rng& rng, bool allow_zero) {
  long num = 0;
  do {
    num = static_cast<long>(uniform(rng, 0, 6)) - 3;
  } while (!allow_zero && num == 0);
  const long den = static_cast<long>(uniform(rng, 1, 3));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Poset random_poset(Rng& rng, std::size_t max_size) {
  const std::size_t size = uniform(rng, 1, max_size);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  const auto order = random_permutation(rng, size);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (uniform(rng, 0, 9) < 4) pairs.emplace_back(order[i], order[j]);
  return Poset::from_relation(std::move(names), pairs);
}

MultifoliateStructure random_structure_over(Rng& rng, const Poset& poset, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i < poset.size() ? i : uniform(rng, 0, poset.size() - 1);
  std::shuffle(p.begin(), p.end(), rng);
  return MultifoliateStructure::create(poset, n, std::move(p));
}

MultifoliateStructure random_structure(Rng& rng, std::size_t max_poset, std::size_t max_n) {
  Poset poset = random_poset(rng, max_poset);
  const std::size_t n = uniform(rng, poset.size(), std::max(max_n, poset.size()));
  return random_structure_over(rng, poset, n);
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

MultifoliateStructure permuted(const MultifoliateStructure& s, const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> q(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) q[i] = s.p()[sigma[i]];
  return MultifoliateStructure::create(s.poset(), s.n(), std::move(q));
}

Matrix random_pattern_member(Rng& rng, const GLPattern& pattern) {
  const std::size_t n = pattern.n();
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (pattern.allowed(i, j)) m(i, j) = static_cast<long>(uniform(rng, 0, 6)) - 3;
    if (rank(m) == n) return m;
  }
}

Polynomial random_polynomial(Rng& rng, std::size_t vars, unsigned max_degree) {
  Polynomial p(vars);
  const std::size_t terms = uniform(rng, 0, 4);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(vars, 0);
    const auto degree = static_cast<unsigned>(uniform(rng, 0, max_degree));
    for (unsigned k = 0; k < degree && vars > 0; ++k) ++e[uniform(rng, 0, vars - 1)];
    p.add_term(e, small_rational(rng, false));
  }
  return p;
}

PolyMap random_polymap(Rng& rng, std::size_t inputs, std::size_t outputs, unsigned max_degree) {
  PolyMap f{inputs, {}};
  for (std::size_t c = 0; c < outputs; ++c) f.components.push_back(random_polynomial(rng, inputs, max_degree));
  return f;
}

WeilAlgebra random_weil_algebra(Rng& rng, unsigned max_order) {
  const unsigned top = std::max(1U, max_order) - 1;
  switch (uniform(rng, 0, 2)) {
    case 0:
      return WeilAlgebra::rationals();
    case 1:
      return WeilAlgebra::truncated(static_cast<unsigned>(uniform(rng, std::min(1U, top), top)));
    default: {
      const auto total = static_cast<unsigned>(uniform(rng, std::min(1U, top), top));
      std::vector<unsigned> ex{static_cast<unsigned>(uniform(rng, std::min(1U, total), total)),
                               static_cast<unsigned>(uniform(rng, std::min(1U, total), total))};
      return WeilAlgebra::monomial(ex, total);
    }
  }
}

std::vector<Vector> random_algebra_point(Rng& rng, const WeilAlgebra& a, std::size_t m) {
  std::vector<Vector> point;
  for (std::size_t i = 0; i < m; ++i) {
    Vector v(a.dim());
    for (auto& c : v) c = small_rational(rng);
    point.push_back(std::move(v));
  }
  return point;
}

WeilSystem random_weil_system(Rng& rng, const Poset& poset) {
  const std::size_t n = poset.size();
  const std::size_t vars = uniform(rng, 1, 2);
  const bool inclusion = uniform(rng, 0, 1) == 0;
  std::vector<std::vector<bool>> has(n, std::vector<bool>(vars, false));
  std::vector<unsigned> order(n, 1);
  if (inclusion) {
    const auto r = static_cast<unsigned>(uniform(rng, 1, 2));
    for (std::size_t v = 0; v < vars; ++v) {
      const bool everywhere = uniform(rng, 0, 3) == 0;
      const std::size_t g = uniform(rng, 0, n - 1);
      for (std::size_t x = 0; x < n; ++x) has[x][v] = everywhere || poset.leq(g, x);
    }
    order.assign(n, r);
  } else {
    for (std::size_t v = 0; v < vars; ++v) {
      const std::size_t g = uniform(rng, 0, n - 1);
      for (std::size_t x = 0; x < n; ++x) has[x][v] = poset.leq(x, g);
    }
    const std::size_t g = uniform(rng, 0, n - 1);
    for (std::size_t x = 0; x < n; ++x) order[x] = poset.leq(x, g) ? 2 : 1;
  }
  std::vector<std::vector<Exponents>> bases(n);
  std::vector<WeilAlgebra> algebras;
  std::vector<Vector> scale(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<unsigned> ex(vars);
    for (std::size_t v = 0; v < vars; ++v) ex[v] = has[x][v] ? order[x] : 0;
    bases[x] = WeilAlgebra::monomial_basis(ex, order[x]);
    algebras.push_back(WeilAlgebra::monomial(ex, order[x]));
    Vector w(vars);
    for (auto& c : w) c = small_rational(rng, false);
    for (const auto& e : bases[x]) {
      Rational s = 1;
      for (std::size_t v = 0; v < vars; ++v)
        for (unsigned k = 0; k < e[v]; ++k) s *= w[v];
      scale[x].push_back(s);
    }
  }
  std::vector<IndexedHom> homs;
  for (const auto& [x, y] : poset.covers()) {
    Matrix h(bases[y].size(), bases[x].size());
    for (std::size_t c = 0; c < bases[x].size(); ++c) {
      auto it = std::find(bases[y].begin(), bases[y].end(), bases[x][c]);
      if (it == bases[y].end()) continue;
      const auto r = static_cast<std::size_t>(it - bases[y].begin());
      h(r, c) = scale[y][r] / scale[x][c];
    }
    homs.push_back({x, y, std::move(h)});
  }
  return WeilSystem::create(poset, std::move(algebras), homs);
}

CartesianMultifibered random_object(Rng& rng, const Poset& poset, std::size_t max_n) {
  const std::size_t n = uniform(rng, 0, max_n);
  std::vector<std::size_t> levels(n);
  for (auto& l : levels) l = uniform(rng, 0, poset.size() - 1);
  return CartesianMultifibered::create(poset, std::move(levels));
}

}  // namespace multifol::checks
