#include "multifol/weil.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "multifol/error.hpp"
#include "multifol/multifoliate.hpp"

namespace multifol {

using nlohmann::json;

namespace {

json shape_of(const Matrix& m) { return json::array({m.rows(), m.cols()}); }

void check_vector(const WeilAlgebra& a, const Vector& v) {
  if (v.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "algebra element has the wrong length",
                json::array({v.size(), a.dim()}));
}

std::vector<Exponents> monomials(const std::vector<unsigned>& max_exponents, unsigned max_total) {
  std::vector<Exponents> out;
  Exponents e(max_exponents.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned used) {
    if (v == e.size()) {
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= max_exponents[v] && used + k <= max_total; ++k) {
      e[v] = k;
      rec(v + 1, used + k);
    }
    e[v] = 0;
  };
  rec(0, 0);
  auto total = [](const Exponents& x) { return std::accumulate(x.begin(), x.end(), 0U); };
  std::stable_sort(out.begin(), out.end(), [&](const Exponents& a, const Exponents& b) {
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });
  return out;
}

std::string monomial_label(const Exponents& e) {
  static const char* letters[] = {"x", "y", "z"};
  std::string s;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (e.size() == 1) s += "t";
    else if (e.size() <= 3) s += letters[v];
    else s += "x" + std::to_string(v + 1);
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s.empty() ? "1" : s;
}

// Rewrites p (in the variables of one fiber) into a ring of `vars` variables,
// sending variable s to variable `where[s]`.
Polynomial reindex(const Polynomial& p, std::size_t vars, const std::vector<std::size_t>& where) {
  Polynomial out(vars);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(vars, 0);
    for (std::size_t s = 0; s < e.size(); ++s) f[where[s]] += e[s];
    out.add_term(f, c);
  }
  return out;
}

std::size_t position(const std::vector<std::size_t>& sorted, std::size_t value) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

}  // namespace

WeilAlgebra WeilAlgebra::unchecked(std::vector<std::vector<Vector>> table,
                                   std::vector<std::string> labels) {
  WeilAlgebra a;
  a.table_ = std::move(table);
  if (labels.empty())
    for (std::size_t i = 0; i < a.table_.size(); ++i) labels.push_back(i == 0 ? "1" : "e" + std::to_string(i));
  a.labels_ = std::move(labels);
  return a;
}

WeilAlgebra WeilAlgebra::create(std::vector<std::vector<Vector>> table, std::vector<std::string> labels) {
  WeilAlgebra a = unchecked(std::move(table), std::move(labels));
  a.validate();
  return a;
}

std::vector<Exponents> WeilAlgebra::monomial_basis(const std::vector<unsigned>& max_exponents,
                                                   unsigned max_total) {
  return monomials(max_exponents, max_total);
}

WeilAlgebra WeilAlgebra::monomial(const std::vector<unsigned>& max_exponents, unsigned max_total) {
  const auto basis = monomials(max_exponents, max_total);
  const std::size_t d = basis.size();
  std::vector<std::vector<Vector>> table(d, std::vector<Vector>(d, Vector(d, 0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Exponents e(basis[i].size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = basis[i][v] + basis[j][v];
      auto it = std::find(basis.begin(), basis.end(), e);
      if (it != basis.end()) table[i][j][static_cast<std::size_t>(it - basis.begin())] = 1;
    }
  std::vector<std::string> labels;
  for (const auto& e : basis) labels.push_back(monomial_label(e));
  return unchecked(std::move(table), std::move(labels));
}

Vector WeilAlgebra::one() const { return basis_vector(0); }

Vector WeilAlgebra::scalar(const Rational& c) const {
  Vector v(dim(), 0);
  v[0] = c;
  return v;
}

Vector WeilAlgebra::basis_vector(std::size_t i) const {
  Vector v(dim(), 0);
  v.at(i) = 1;
  return v;
}

Vector WeilAlgebra::multiply(const Vector& a, const Vector& b) const {
  check_vector(*this, a);
  check_vector(*this, b);
  Vector out(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(b[j]) == 0) continue;
      const Rational c = a[i] * b[j];
      const Vector& t = table_[i][j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (sgn(t[k]) != 0) out[k] += c * t[k];
    }
  }
  return out;
}

Vector WeilAlgebra::add(const Vector& a, const Vector& b) const {
  check_vector(*this, a);
  check_vector(*this, b);
  Vector out(a);
  for (std::size_t k = 0; k < dim(); ++k) out[k] += b[k];
  return out;
}

void WeilAlgebra::validate() const {
  const std::size_t d = dim();
  if (d == 0) throw Error(ErrorCode::DimensionMismatch, "algebra must have dimension at least 1");
  if (labels_.size() != d)
    throw Error(ErrorCode::DimensionMismatch, "one label per basis vector is required",
                json::array({labels_.size(), d}));
  for (std::size_t i = 0; i < d; ++i) {
    if (table_[i].size() != d)
      throw Error(ErrorCode::DimensionMismatch, "structure table row has the wrong length",
                  json{{"row", i}, {"length", table_[i].size()}, {"expected", d}});
    for (std::size_t j = 0; j < d; ++j)
      if (table_[i][j].size() != d)
        throw Error(ErrorCode::DimensionMismatch, "structure constant has the wrong length",
                    json{{"pair", json::array({i, j})}, {"length", table_[i][j].size()}, {"expected", d}});
  }
  for (std::size_t j = 0; j < d; ++j) {
    const Vector e = basis_vector(j);
    if (table_[0][j] != e || table_[j][0] != e)
      throw Error(ErrorCode::NotUnital, "first basis vector is not a unit", json{{"pair", json::array({0, j})}});
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (table_[i][j] != table_[j][i])
        throw Error(ErrorCode::NotCommutative, "multiplication is not commutative",
                    json{{"pair", json::array({i, j})}});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (multiply(table_[i][j], basis_vector(k)) != multiply(basis_vector(i), table_[j][k]))
          throw Error(ErrorCode::NotAssociative, "multiplication is not associative",
                      json{{"triple", json::array({i, j, k})}});
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 1; j < d; ++j)
      if (sgn(table_[i][j][0]) != 0)
        throw Error(ErrorCode::NotNilpotent, "product of nilpotent basis vectors has a unit part",
                    json{{"pair", json::array({i, j})}});
  if (nilpotency_order() == 0)
    throw Error(ErrorCode::NotNilpotent, "powers of the maximal ideal do not vanish",
                json{{"dim", d}});
}

std::size_t WeilAlgebra::nilpotency_order() const {
  const std::size_t d = dim();
  std::vector<Vector> gens;
  for (std::size_t i = 1; i < d; ++i) gens.push_back(basis_vector(i));
  Subspace power = Subspace::span(d, gens);
  for (std::size_t k = 1; k <= d; ++k) {
    if (power.is_zero()) return k;
    std::vector<Vector> next;
    for (const auto& v : power.basis().row_list())
      for (const auto& g : gens) next.push_back(multiply(v, g));
    Subspace np = Subspace::span(d, next);
    if (np == power) return 0;
    power = std::move(np);
  }
  return power.is_zero() ? d + 1 : 0;
}

void check_algebra_hom(const WeilAlgebra& a, const WeilAlgebra& b, const Matrix& m) {
  if (m.rows() != b.dim() || m.cols() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "homomorphism shape does not match algebra dimensions",
                json{{"shape", shape_of(m)}, {"expected", json::array({b.dim(), a.dim()})}});
  if (m.apply(a.one()) != b.one())
    throw Error(ErrorCode::NotUnital, "homomorphism does not preserve the unit",
                json{{"pair", json::array({0, 0})}});
  std::vector<Vector> images;
  for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(m.column(i));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (m.apply(a.table()[i][j]) != b.multiply(images[i], images[j]))
        throw Error(ErrorCode::NotMultiplicative, "homomorphism does not preserve products",
                    json{{"pair", json::array({i, j})}});
}

WeilSystem WeilSystem::create(Poset poset, std::vector<WeilAlgebra> algebras,
                              const std::vector<IndexedHom>& homs) {
  const std::size_t n = poset.size();
  if (algebras.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "one algebra per poset element is required",
                json::array({algebras.size(), n}));
  WeilSystem sys;
  sys.poset_ = std::move(poset);
  sys.algebras_ = std::move(algebras);
  const Poset& P = sys.poset_;
  auto name = [&](std::size_t i) { return P.name(i); };

  std::vector<std::optional<Matrix>> given(n * n);
  for (const auto& h : homs) {
    if (h.lower >= n || h.upper >= n) throw Error(ErrorCode::BadIndex, "hom index out of range");
    if (!P.leq(h.lower, h.upper))
      throw Error(ErrorCode::CoherenceError, "hom between non-comparable or wrongly ordered elements",
                  json{{"from", name(h.lower)}, {"to", name(h.upper)}});
    try {
      check_algebra_hom(sys.algebras_[h.lower], sys.algebras_[h.upper], h.matrix);
    } catch (const Error& e) {
      json w = e.witness();
      throw Error(e.code(), e.what(), json{{"from", name(h.lower)}, {"to", name(h.upper)}, {"detail", w}});
    }
    if (h.lower == h.upper && h.matrix != Matrix::identity(sys.algebras_[h.lower].dim()))
      throw Error(ErrorCode::CoherenceError, "self hom must be the identity", json{{"element", name(h.lower)}});
    auto& slot = given[h.lower * n + h.upper];
    if (slot && *slot != h.matrix)
      throw Error(ErrorCode::CoherenceError, "conflicting duplicate homs",
                  json{{"from", name(h.lower)}, {"to", name(h.upper)}});
    slot = h.matrix;
  }
  for (const auto& [x, y] : P.covers())
    if (!given[x * n + y])
      throw Error(ErrorCode::MissingMap, "no hom on covering pair", json{{"from", name(x)}, {"to", name(y)}});

  sys.homs_.assign(n * n, std::nullopt);
  std::function<const Matrix&(std::size_t, std::size_t)> composite =
      [&](std::size_t x, std::size_t y) -> const Matrix& {
    auto& slot = sys.homs_[x * n + y];
    if (slot) return *slot;
    if (x == y) {
      slot = Matrix::identity(sys.algebras_[x].dim());
      return *slot;
    }
    std::optional<Matrix> value;
    std::size_t via = x;
    for (std::size_t k : P.lower_covers(y)) {
      if (!P.leq(x, k)) continue;
      Matrix candidate = *given[k * n + y] * composite(x, k);
      if (!value) {
        value = std::move(candidate);
        via = k;
      } else if (*value != candidate) {
        throw Error(ErrorCode::CoherenceError, "composites along different covering paths disagree",
                    json{{"from", name(x)}, {"to", name(y)}, {"via", json::array({name(via), name(k)})}});
      }
    }
    if (const auto& direct = given[x * n + y]; direct && *direct != *value)
      throw Error(ErrorCode::CoherenceError, "supplied hom differs from the composite of covers",
                  json{{"from", name(x)}, {"to", name(y)}});
    slot = std::move(value);
    return *slot;
  };
  for (const auto& [x, y] : P.relation()) composite(x, y);
  return sys;
}

WeilSystem WeilSystem::constant(Poset poset, const WeilAlgebra& a) {
  std::vector<IndexedHom> homs;
  for (const auto& [x, y] : poset.covers()) homs.push_back({x, y, Matrix::identity(a.dim())});
  std::vector<WeilAlgebra> algebras(poset.size(), a);
  return create(std::move(poset), std::move(algebras), homs);
}

const Matrix& WeilSystem::hom(std::size_t lower, std::size_t upper) const {
  const std::size_t n = poset_.size();
  if (lower >= n || upper >= n || !homs_[lower * n + upper])
    throw Error(ErrorCode::BadIndex, "no hom between these elements",
                json::array({lower, upper}));
  return *homs_[lower * n + upper];
}

std::vector<IndexedHom> WeilSystem::cover_homs() const {
  std::vector<IndexedHom> out;
  for (const auto& [x, y] : poset_.covers()) out.push_back({x, y, hom(x, y)});
  return out;
}

MorphismReport validate_system_morphism(const WeilSystem& source, const WeilSystem& target,
                                        const std::vector<Matrix>& nu) {
  MorphismReport r;
  auto fail = [&](ErrorCode code, json witness) {
    r.ok = false;
    r.failure = std::string(to_string(code));
    r.witness = std::move(witness);
    return r;
  };
  const Poset& P = source.poset();
  if (!(P == target.poset())) return fail(ErrorCode::PosetMismatch, nullptr);
  if (nu.size() != P.size())
    return fail(ErrorCode::DimensionMismatch, json::array({nu.size(), P.size()}));
  for (std::size_t x = 0; x < P.size(); ++x) {
    try {
      check_algebra_hom(source.algebra(x), target.algebra(x), nu[x]);
    } catch (const Error& e) {
      return fail(e.code(), json{{"element", P.name(x)}, {"detail", e.witness()}});
    }
  }
  for (const auto& [x, y] : P.covers())
    if (nu[y] * source.hom(x, y) != target.hom(x, y) * nu[x])
      return fail(ErrorCode::CoherenceError, json{{"from", P.name(x)}, {"to", P.name(y)}});
  return r;
}

std::vector<Vector> weil_apply(const WeilAlgebra& a, const PolyMap& f, const std::vector<Vector>& point) {
  if (point.size() != f.inputs)
    throw Error(ErrorCode::ArityMismatch, "point has the wrong number of coordinates",
                json::array({point.size(), f.inputs}));
  for (const auto& v : point) check_vector(a, v);
  std::vector<std::vector<Vector>> powers(f.inputs, std::vector<Vector>{a.one()});
  auto power = [&](std::size_t v, unsigned e) -> const Vector& {
    auto& list = powers[v];
    while (list.size() <= e) list.push_back(a.multiply(list.back(), point[v]));
    return list[e];
  };
  std::vector<Vector> out;
  for (const auto& c : f.components) {
    if (c.num_vars() != f.inputs)
      throw Error(ErrorCode::ArityMismatch, "component arity differs from the map's",
                  json::array({c.num_vars(), f.inputs}));
    Vector acc(a.dim(), 0);
    for (const auto& [e, coeff] : c.terms()) {
      Vector t = a.scalar(coeff);
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v] > 0) t = a.multiply(t, power(v, e[v]));
      acc = a.add(acc, t);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

CartesianMultifibered CartesianMultifibered::create(Poset poset, std::vector<std::size_t> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] >= poset.size())
      throw Error(ErrorCode::BadIndex, "coordinate level is not a poset element",
                  json{{"coordinate", i + 1}});
  CartesianMultifibered c;
  c.h_.assign(poset.size(), {});
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t x = 0; x < poset.size(); ++x)
      if (poset.leq(levels[i], x)) c.h_[x].push_back(i);
  c.poset_ = std::move(poset);
  c.levels_ = std::move(levels);
  return c;
}

CartesianMultifibered CartesianMultifibered::at_level(Poset poset, std::size_t alpha, std::size_t m) {
  return create(std::move(poset), std::vector<std::size_t>(m, alpha));
}

CartesianMultifibered CartesianMultifibered::product(const CartesianMultifibered& a,
                                                     const CartesianMultifibered& b) {
  if (!(a.poset() == b.poset())) throw Error(ErrorCode::PosetMismatch, "objects live over different posets");
  std::vector<std::size_t> levels = a.levels();
  levels.insert(levels.end(), b.levels().begin(), b.levels().end());
  return create(a.poset(), std::move(levels));
}

std::optional<std::size_t> CartesianMultifibered::single_level() const {
  if (levels_.empty()) return std::nullopt;
  for (std::size_t l : levels_)
    if (l != levels_.front()) return std::nullopt;
  return levels_.front();
}

ProjectiveSystem CartesianMultifibered::system() const { return coordinate_system(poset_, levels_); }

PolyMultifiberedMap PolyMultifiberedMap::create(CartesianMultifibered source, CartesianMultifibered target,
                                                std::vector<PolyMap> components) {
  const Poset& P = source.poset();
  if (!(P == target.poset())) throw Error(ErrorCode::PosetMismatch, "source and target posets differ");
  if (components.size() != P.size())
    throw Error(ErrorCode::ArityMismatch, "one component per poset element is required",
                json::array({components.size(), P.size()}));
  for (std::size_t x = 0; x < P.size(); ++x) {
    const PolyMap& f = components[x];
    bool ok = f.inputs == source.fiber_dim(x) && f.outputs() == target.fiber_dim(x);
    for (const auto& c : f.components) ok = ok && c.num_vars() == f.inputs;
    if (!ok)
      throw Error(ErrorCode::ArityMismatch, "component does not map fiber to fiber",
                  json{{"element", P.name(x)}, {"inputs", f.inputs}, {"outputs", f.outputs()},
                       {"expected", json::array({source.fiber_dim(x), target.fiber_dim(x)})}});
  }
  for (const auto& [x, y] : P.covers()) {
    const auto& sx = source.coordinates(x);
    const auto& sy = source.coordinates(y);
    const auto& tx = target.coordinates(x);
    const auto& ty = target.coordinates(y);
    std::vector<std::size_t> where;
    for (std::size_t i : sx) where.push_back(position(sy, i));
    for (std::size_t r = 0; r < tx.size(); ++r) {
      const Polynomial& upper = components[y].components[position(ty, tx[r])];
      const Polynomial lower = reindex(components[x].components[r], sy.size(), where);
      if (!(upper == lower))
        throw Error(ErrorCode::CoherenceError, "map does not commute with coordinate projections",
                    json{{"from", P.name(y)}, {"to", P.name(x)}, {"coordinate", tx[r] + 1}});
    }
  }
  PolyMultifiberedMap out;
  out.source_ = std::move(source);
  out.target_ = std::move(target);
  out.components_ = std::move(components);
  return out;
}

PolyMultifiberedMap PolyMultifiberedMap::lift(const Poset& poset, std::size_t alpha, const PolyMap& f) {
  if (alpha >= poset.size()) throw Error(ErrorCode::BadIndex, "level is not a poset element");
  std::vector<PolyMap> components;
  for (std::size_t x = 0; x < poset.size(); ++x)
    components.push_back(poset.leq(alpha, x) ? f : PolyMap{});
  return create(CartesianMultifibered::at_level(poset, alpha, f.inputs),
                CartesianMultifibered::at_level(poset, alpha, f.outputs()), std::move(components));
}

FiberProduct::FiberProduct(const WeilSystem& mu, const CartesianMultifibered& pi) : mu_(mu), pi_(pi) {
  const Poset& P = mu.poset();
  if (!(P == pi.poset())) throw Error(ErrorCode::PosetMismatch, "Weil system and object live over different posets");
  offsets_.assign(P.size(), {});
  for (std::size_t x = 0; x < P.size(); ++x)
    for (std::size_t r = 0; r < pi.fiber_dim(x); ++r) {
      offsets_[x].push_back(ambient_);
      ambient_ += mu.algebra(x).dim();
    }
  std::vector<Vector> equations;
  for (const auto& [x, y] : P.covers()) {
    const Matrix& h = mu.hom(x, y);
    const auto& hx = pi.coordinates(x);
    const auto& hy = pi.coordinates(y);
    for (std::size_t r = 0; r < hx.size(); ++r) {
      const std::size_t ox = offsets_[x][r];
      const std::size_t oy = offsets_[y][position(hy, hx[r])];
      for (std::size_t b = 0; b < h.rows(); ++b) {
        Vector eq(ambient_, 0);
        eq[oy + b] = 1;
        for (std::size_t c = 0; c < h.cols(); ++c) eq[ox + c] -= h(b, c);
        equations.push_back(std::move(eq));
      }
    }
  }
  space_ = kernel(Matrix::from_rows(equations, ambient_));
  base_ = Matrix(pi.n(), ambient_);
  for (std::size_t i = 0; i < pi.n(); ++i) {
    const std::size_t l = pi.levels()[i];
    base_(i, offsets_[l][position(pi.coordinates(l), i)]) = 1;
  }
}

std::vector<Vector> FiberProduct::component(const Vector& point, std::size_t x) const {
  if (point.size() != ambient_)
    throw Error(ErrorCode::DimensionMismatch, "point has the wrong length", json::array({point.size(), ambient_}));
  const std::size_t d = mu_.algebra(x).dim();
  std::vector<Vector> out;
  for (std::size_t o : offsets_.at(x))
    out.emplace_back(point.begin() + static_cast<std::ptrdiff_t>(o),
                     point.begin() + static_cast<std::ptrdiff_t>(o + d));
  return out;
}

Vector FiberProduct::assemble(const std::vector<std::vector<Vector>>& components) const {
  const Poset& P = mu_.poset();
  if (components.size() != P.size())
    throw Error(ErrorCode::DimensionMismatch, "one component list per element is required");
  Vector out(ambient_, 0);
  for (std::size_t x = 0; x < P.size(); ++x) {
    const std::size_t d = mu_.algebra(x).dim();
    if (components[x].size() != offsets_[x].size())
      throw Error(ErrorCode::DimensionMismatch, "component list has the wrong length",
                  json{{"element", P.name(x)}, {"length", components[x].size()}, {"expected", offsets_[x].size()}});
    for (std::size_t r = 0; r < offsets_[x].size(); ++r) {
      if (components[x][r].size() != d)
        throw Error(ErrorCode::DimensionMismatch, "algebra element has the wrong length",
                    json{{"element", P.name(x)}, {"coordinate", pi_.coordinates(x)[r] + 1}});
      std::copy(components[x][r].begin(), components[x][r].end(),
                out.begin() + static_cast<std::ptrdiff_t>(offsets_[x][r]));
    }
  }
  return out;
}

bool FiberProduct::base_surjective() const {
  return rank(base_ * space_.basis().transpose()) == pi_.n();
}

Vector t_mu_apply(const FiberProduct& source, const FiberProduct& target, const PolyMultifiberedMap& f,
                  const Vector& point) {
  const Poset& P = source.weil().poset();
  if (point.size() != source.ambient_dim() || !source.contains(point))
    throw Error(ErrorCode::CompatibilityViolation, "point is not in the fiber product");
  std::vector<std::vector<Vector>> out(P.size());
  for (std::size_t x = 0; x < P.size(); ++x)
    out[x] = weil_apply(source.weil().algebra(x), f.component(x), source.component(point, x));
  Vector result = target.assemble(out);
  if (!target.contains(result))
    throw Error(ErrorCode::CompatibilityViolation, "image left the target fiber product");
  return result;
}

TMu::TMu(const WeilSystem& mu, const CartesianMultifibered& pi) : fp_(mu, pi), alpha_(pi.single_level()) {}

std::size_t TMu::dim() const {
  if (!alpha_) return fp_.dim();
  return fp_.object().n() * fp_.weil().algebra(*alpha_).dim();
}

Vector TMu::to_fiber_product(const Vector& model_point) const {
  if (!alpha_) {
    if (model_point.size() != fp_.ambient_dim() || !fp_.contains(model_point))
      throw Error(ErrorCode::CompatibilityViolation, "point is not in the fiber product");
    return model_point;
  }
  if (model_point.size() != dim())
    throw Error(ErrorCode::DimensionMismatch, "model point has the wrong length",
                json::array({model_point.size(), dim()}));
  const WeilSystem& mu = fp_.weil();
  const Poset& P = mu.poset();
  const std::size_t a = *alpha_;
  const std::size_t d = mu.algebra(a).dim();
  std::vector<Vector> base;
  for (std::size_t r = 0; r < fp_.object().n(); ++r)
    base.emplace_back(model_point.begin() + static_cast<std::ptrdiff_t>(r * d),
                      model_point.begin() + static_cast<std::ptrdiff_t>((r + 1) * d));
  std::vector<std::vector<Vector>> comps(P.size());
  for (std::size_t x = 0; x < P.size(); ++x) {
    if (!P.leq(a, x)) continue;
    for (const auto& v : base) comps[x].push_back(mu.hom(a, x).apply(v));
  }
  return fp_.assemble(comps);
}

Vector TMu::from_fiber_product(const Vector& point) const {
  if (point.size() != fp_.ambient_dim() || !fp_.contains(point))
    throw Error(ErrorCode::CompatibilityViolation, "point is not in the fiber product");
  if (!alpha_) return point;
  Vector out;
  for (const auto& v : fp_.component(point, *alpha_)) out.insert(out.end(), v.begin(), v.end());
  return out;
}

Vector t_mu_map(const TMu& source, const TMu& target, const PolyMultifiberedMap& f, const Vector& model_point) {
  return target.from_fiber_product(
      t_mu_apply(source.fiber_product(), target.fiber_product(), f, source.to_fiber_product(model_point)));
}

ProductReport product_preservation_check(const WeilSystem& mu, const CartesianMultifibered& a,
                                         const CartesianMultifibered& b) {
  const CartesianMultifibered ab = CartesianMultifibered::product(a, b);
  const FiberProduct fa(mu, a), fb(mu, b), fab(mu, ab);
  ProductReport r;
  r.dim_a = fa.dim();
  r.dim_b = fb.dim();
  r.dim_product = fab.dim();
  if (r.dim_product != r.dim_a + r.dim_b) {
    r.failure = "dimension";
    return r;
  }
  // Shuffle the product's coordinates into (a-part, b-part).
  const Poset& P = mu.poset();
  const std::size_t na = a.n();
  Matrix shuffle(fa.ambient_dim() + fb.ambient_dim(), fab.ambient_dim());
  for (std::size_t x = 0; x < P.size(); ++x) {
    const std::size_t d = mu.algebra(x).dim();
    const auto& h = ab.coordinates(x);
    for (std::size_t r2 = 0; r2 < h.size(); ++r2) {
      const std::size_t i = h[r2];
      const std::size_t to = i < na ? fa.offset(x, position(a.coordinates(x), i))
                                    : fa.ambient_dim() + fb.offset(x, position(b.coordinates(x), i - na));
      for (std::size_t k = 0; k < d; ++k) shuffle(to + k, fab.offset(x, r2) + k) = 1;
    }
  }
  std::vector<Vector> sum_basis;
  for (const auto& v : fa.space().basis().row_list()) {
    Vector w(v);
    w.resize(fa.ambient_dim() + fb.ambient_dim(), 0);
    sum_basis.push_back(std::move(w));
  }
  for (const auto& v : fb.space().basis().row_list()) {
    Vector w(fa.ambient_dim(), 0);
    w.insert(w.end(), v.begin(), v.end());
    sum_basis.push_back(std::move(w));
  }
  const Subspace direct_sum = Subspace::span(fa.ambient_dim() + fb.ambient_dim(), sum_basis);
  const Subspace image_space = Subspace::span(
      direct_sum.ambient_dim(),
      (shuffle * fab.space().basis().transpose()).transpose().row_list());
  if (!(image_space == direct_sum)) {
    r.failure = "isomorphism";
    return r;
  }
  if (block_diagonal(fa.base_projection(), fb.base_projection()) * shuffle != fab.base_projection()) {
    r.failure = "base projection";
    return r;
  }
  r.passed = true;
  return r;
}

}  // namespace multifol
