#include <map>

#include "helpers.hpp"
#include "multifol/checks/generators.hpp"
#include "multifol/weil.hpp"

namespace {

using mf::CartesianMultifibered;
using mf::ErrorCode;
using mf::Exponents;
using mf::FiberProduct;
using mf::Matrix;
using mf::PolyMap;
using mf::Polynomial;
using mf::Rational;
using mf::Vector;
using mf::WeilAlgebra;
using mf::WeilSystem;
using Table = std::vector<std::vector<Vector>>;

const WeilAlgebra kD = WeilAlgebra::dual_numbers();
const WeilAlgebra kQ = WeilAlgebra::rationals();

PolyMap square() {
  const auto t = Polynomial::variable(1, 0);
  return PolyMap{1, {t * t}};
}

// Truncated power series over the monomials of a monomial algebra.
using Series = std::map<Exponents, Rational>;

Series mul(const Series& a, const Series& b, const std::vector<Exponents>& keep) {
  Series out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      if (std::find(keep.begin(), keep.end(), e) != keep.end()) out[e] += ca * cb;
    }
  return out;
}

Vector series_apply(const Polynomial& p, const std::vector<Series>& args, const std::vector<Exponents>& basis) {
  Series total;
  for (const auto& [exps, coeff] : p.terms()) {
    Series term{{basis[0], coeff}};
    for (std::size_t v = 0; v < exps.size(); ++v)
      for (unsigned k = 0; k < exps[v]; ++k) term = mul(term, args[v], basis);
    for (const auto& [e, c] : term) total[e] += c;
  }
  Vector out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = total.count(basis[i]) ? total[basis[i]] : Rational(0);
  return out;
}

// Taylor coefficients f^(j)(a0)/j! of a univariate polynomial.
std::vector<Rational> taylor(const Polynomial& f, const Rational& a0, unsigned order) {
  std::vector<Rational> out;
  std::map<unsigned, Rational> coeffs;
  for (const auto& [e, c] : f.terms()) coeffs[e[0]] = c;
  Rational fact = 1;
  for (unsigned j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    Rational value = 0;
    for (const auto& [deg, c] : coeffs) {
      if (deg < j) continue;
      Rational falling = 1, power = 1;
      for (unsigned k = 0; k < j; ++k) falling *= deg - k;
      for (unsigned k = 0; k < deg - j; ++k) power *= a0;
      value += c * falling * power;
    }
    out.push_back(value / fact);
  }
  return out;
}

Table dual_table(const Rational& tt) { return {{{1, 0}, {0, 1}}, {{0, 1}, {tt, 0}}}; }

TEST(Algebra, Validate) {
  EXPECT_EQ(WeilAlgebra::create(dual_table(0)).dim(), 2u);
  EXPECT_MF_ERROR(WeilAlgebra::create(dual_table(1)), ErrorCode::NotNilpotent);
  const auto xy = WeilAlgebra::monomial({1, 1}, 2);
  EXPECT_EQ(xy.dim(), 4u);
  EXPECT_NO_THROW(WeilAlgebra::create(xy.table()));
  EXPECT_EQ(xy.labels(), (std::vector<std::string>{"1", "x", "y", "xy"}));
  EXPECT_EQ(kD.labels(), (std::vector<std::string>{"1", "t"}));
  EXPECT_EQ(WeilAlgebra::truncated(3).nilpotency_order(), 4u);
  EXPECT_EQ(kQ.dim(), 1u);
}

TEST(Algebra, ValidationFailures) {
  Table t = dual_table(0);
  t[0][1] = {1, 1};
  EXPECT_MF_ERROR(WeilAlgebra::create(t), ErrorCode::NotUnital);
  Table nc = WeilAlgebra::monomial({1, 1}, 2).table();
  nc[1][2] = {0, 0, 0, 2};
  nc[2][1] = {0, 0, 0, 1};
  EXPECT_MF_ERROR(WeilAlgebra::create(nc), ErrorCode::NotCommutative);
  EXPECT_MF_ERROR(WeilAlgebra::create({{{1, 0}}}), ErrorCode::DimensionMismatch);
}

TEST(Algebra, MonomialTablesAreAssociativeAndNilpotent) {
  for (unsigned total = 0; total <= 3; ++total)
    for (unsigned ex = 0; ex <= total; ++ex) {
      const auto a = WeilAlgebra::monomial({ex, total}, total);
      EXPECT_NO_THROW(a.validate());
      const auto& t = a.table();
      for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
          for (std::size_t k = 0; k < a.dim(); ++k)
            EXPECT_EQ(a.multiply(t[i][j], a.basis_vector(k)), a.multiply(a.basis_vector(i), t[j][k]));
    }
}

TEST(Hom, Examples) {
  EXPECT_NO_THROW(mf::check_algebra_hom(kD, kD, Matrix::identity(2)));
  EXPECT_NO_THROW(mf::check_algebra_hom(kD, kQ, Matrix{{1, 0}}));
  EXPECT_MF_ERROR(mf::check_algebra_hom(kD, kD, Matrix{{1, 1}, {0, 0}}), ErrorCode::NotMultiplicative);
  EXPECT_MF_ERROR(mf::check_algebra_hom(kD, kD, Matrix{{2, 0}, {0, 1}}), ErrorCode::NotUnital);
  EXPECT_MF_ERROR(mf::check_algebra_hom(kD, kQ, Matrix::identity(2)), ErrorCode::DimensionMismatch);
  EXPECT_NO_THROW(mf::check_algebra_hom(kQ, kD, Matrix{{1}, {0}}));
}

TEST(System, Examples) {
  EXPECT_NO_THROW(WeilSystem::constant(diamond(), kD));
  const auto c = WeilSystem::create(chain(2), {kQ, kD}, {{0, 1, Matrix{{1}, {0}}}});
  EXPECT_EQ(c.hom(0, 1), (Matrix{{1}, {0}}));
  const std::vector<mf::IndexedHom> paths{{0, 1, Matrix::identity(2)},
                                          {0, 2, Matrix::identity(2)},
                                          {1, 3, Matrix{{1, 0}, {0, 0}}},
                                          {2, 3, Matrix::identity(2)}};
  EXPECT_MF_ERROR(WeilSystem::create(diamond(), {kD, kD, kD, kD}, paths), ErrorCode::CoherenceError);
  EXPECT_MF_ERROR(WeilSystem::create(chain(2), {kQ, kD}, {}), ErrorCode::MissingMap);
}

TEST(System, ComposesAlongChains) {
  const auto s = WeilSystem::create(chain(3), {kQ, WeilAlgebra::truncated(2), kD},
                                    {{0, 1, Matrix{{1}, {0}, {0}}}, {1, 2, Matrix{{1, 0, 0}, {0, 1, 0}}}});
  EXPECT_EQ(s.hom(0, 2), (Matrix{{1}, {0}}));
  EXPECT_MF_ERROR(WeilSystem::create(chain(2), {kD, WeilAlgebra::truncated(2)}, {{0, 1, Matrix{{1, 0}, {0, 1}, {0, 0}}}}),
                  ErrorCode::NotMultiplicative);
}

TEST(Morphism, Examples) {
  const auto sd = WeilSystem::constant(chain(2), kD);
  const auto sq = WeilSystem::constant(chain(2), kQ);
  EXPECT_TRUE(mf::validate_system_morphism(sd, sd, {Matrix::identity(2), Matrix::identity(2)}).ok);
  EXPECT_TRUE(mf::validate_system_morphism(sd, sq, {Matrix{{1, 0}}, Matrix{{1, 0}}}).ok);
  const auto report = mf::validate_system_morphism(sd, sd, {Matrix::identity(2), Matrix{{1, 0}, {0, 0}}});
  EXPECT_FALSE(report.ok);
}

TEST(Apply, Examples) {
  const auto v = mf::weil_apply(kD, square(), {{3, 5}});
  EXPECT_EQ(v[0], (Vector{9, 30}));
  EXPECT_EQ(mf::weil_apply(kQ, square(), {{Q("2/3")}})[0], (Vector{Q("4/9")}));
  EXPECT_EQ(mf::weil_apply(kD, PolyMap::identity(1), {{3, 5}})[0], (Vector{3, 5}));
  EXPECT_MF_ERROR(mf::weil_apply(kD, square(), {{1, 0}, {1, 0}}), ErrorCode::ArityMismatch);
}

TEST(Apply, MatchesSeriesOracle) {
  mf::checks::Rng rng(51);
  for (int k = 0; k < 60; ++k) {
    const unsigned total = 1 + static_cast<unsigned>(k % 3);
    const std::vector<unsigned> ex{total, static_cast<unsigned>(k % 2 ? total : 1)};
    const auto a = WeilAlgebra::monomial(ex, total);
    const auto basis = WeilAlgebra::monomial_basis(ex, total);
    const auto f = mf::checks::random_polymap(rng, 2, 2, 3);
    const auto pt = mf::checks::random_algebra_point(rng, a, 2);
    std::vector<Series> args;
    for (const auto& v : pt) {
      Series s;
      for (std::size_t i = 0; i < v.size(); ++i) s[basis[i]] = v[i];
      args.push_back(s);
    }
    const auto got = mf::weil_apply(a, f, pt);
    for (std::size_t c = 0; c < f.outputs(); ++c) EXPECT_EQ(got[c], series_apply(f.components[c], args, basis));
  }
}

TEST(Apply, TaylorJets) {
  mf::checks::Rng rng(52);
  for (unsigned order = 1; order <= 4; ++order) {
    const auto a = WeilAlgebra::truncated(order);
    for (int k = 0; k < 10; ++k) {
      const auto f = mf::checks::random_polynomial(rng, 1, 4);
      const Rational a0 = mf::checks::small_rational(rng);
      Vector jet(a.dim());
      jet[0] = a0;
      jet[1] = 1;
      EXPECT_EQ(mf::weil_apply(a, PolyMap{1, {f}}, {jet})[0], taylor(f, a0, order));
    }
  }
}

TEST(Apply, Functoriality) {
  mf::checks::Rng rng(53);
  for (int k = 0; k < 40; ++k) {
    const auto a = mf::checks::random_weil_algebra(rng, 4);
    const auto f = mf::checks::random_polymap(rng, 2, 3, 3);
    const auto g = mf::checks::random_polymap(rng, 3, 2, 3);
    const auto pt = mf::checks::random_algebra_point(rng, a, 2);
    EXPECT_EQ(mf::weil_apply(a, mf::compose(g, f), pt), mf::weil_apply(a, g, mf::weil_apply(a, f, pt)));
    EXPECT_EQ(mf::weil_apply(a, PolyMap::identity(2), pt), pt);
  }
}

TEST(Object, Construction) {
  const auto o = CartesianMultifibered::at_level(chain(2), 1, 1);
  EXPECT_EQ(o.fiber_dim(0), 0u);
  EXPECT_EQ(o.fiber_dim(1), 1u);
  EXPECT_EQ(o.single_level(), std::optional<std::size_t>(1));
  EXPECT_EQ(CartesianMultifibered::at_level(make_poset({"e"}), 0, 3).fiber_dim(0), 3u);
  EXPECT_MF_ERROR(CartesianMultifibered::create(chain(2), {2}), ErrorCode::BadIndex);
  const auto pr = CartesianMultifibered::product(o, CartesianMultifibered::create(chain(2), {0}));
  EXPECT_EQ(pr.levels(), (std::vector<std::size_t>{1, 0}));
  EXPECT_FALSE(pr.single_level());
}

WeilSystem chain_q_d() { return WeilSystem::create(chain(2), {kQ, kD}, {{0, 1, Matrix{{1}, {0}}}}); }

// Every cover equation x_y[i] = mu(x_x[i]) evaluated directly.
bool satisfies_covers(const FiberProduct& fp, const Vector& point) {
  const auto& mu = fp.weil();
  const auto& pi = fp.object();
  for (const auto& [x, y] : pi.poset().covers()) {
    const auto cx = fp.component(point, x), cy = fp.component(point, y);
    const auto& hx = pi.coordinates(x);
    const auto& hy = pi.coordinates(y);
    for (std::size_t r = 0; r < hx.size(); ++r) {
      const auto pos = static_cast<std::size_t>(std::find(hy.begin(), hy.end(), hx[r]) - hy.begin());
      if (cy[pos] != mu.hom(x, y).apply(cx[r])) return false;
    }
  }
  return true;
}

TEST(FiberProduct, Examples) {
  const auto pi = CartesianMultifibered::create(chain(2), {0, 1});
  const FiberProduct fp(chain_q_d(), pi);
  EXPECT_EQ(fp.ambient_dim(), 5u);
  EXPECT_EQ(fp.dim(), 3u);
  EXPECT_TRUE(fp.contains(fp.assemble({{{7}}, {{7, 0}, {2, 3}}})));
  EXPECT_FALSE(fp.contains(fp.assemble({{{7}}, {{7, 1}, {2, 3}}})));
  EXPECT_EQ(FiberProduct(WeilSystem::constant(diamond(), kQ), CartesianMultifibered::create(diamond(), {0, 1, 2, 3})).dim(), 4u);
  EXPECT_EQ(FiberProduct(WeilSystem::constant(make_poset({"e"}), kD), CartesianMultifibered::at_level(make_poset({"e"}), 0, 3)).dim(), 6u);
  EXPECT_MF_ERROR(FiberProduct(chain_q_d(), CartesianMultifibered::create(diamond(), {0})), ErrorCode::PosetMismatch);
}

TEST(FiberProduct, BasisSatisfiesEquationsAndProjectsOnto) {
  mf::checks::Rng rng(54);
  for (int k = 0; k < 30; ++k) {
    const auto P = mf::checks::random_poset(rng, 4);
    const auto mu = mf::checks::random_weil_system(rng, P);
    const auto pi = mf::checks::random_object(rng, P, 3);
    const FiberProduct fp(mu, pi);
    for (std::size_t r = 0; r < fp.dim(); ++r) EXPECT_TRUE(satisfies_covers(fp, fp.space().basis().row_vector(r)));
    EXPECT_TRUE(fp.base_surjective());
    EXPECT_EQ(fp.base_projection().rows(), pi.n());
  }
}

TEST(FiberProduct, AlphaObjects) {
  mf::checks::Rng rng(55);
  for (int k = 0; k < 30; ++k) {
    const auto P = mf::checks::random_poset(rng, 4);
    const auto mu = mf::checks::random_weil_system(rng, P);
    const std::size_t alpha = mf::checks::uniform(rng, 0, P.size() - 1);
    const std::size_t m = mf::checks::uniform(rng, 1, 3);
    const mf::TMu t(mu, CartesianMultifibered::at_level(P, alpha, m));
    EXPECT_EQ(t.fiber_product().dim(), mu.algebra(alpha).dim() * m);
    EXPECT_EQ(t.alpha(), std::optional<std::size_t>(alpha));
    const auto pt = mf::checks::random_algebra_point(rng, mu.algebra(alpha), m);
    Vector flat;
    for (const auto& v : pt) flat.insert(flat.end(), v.begin(), v.end());
    const Vector fpp = t.to_fiber_product(flat);
    EXPECT_TRUE(t.fiber_product().contains(fpp));
    EXPECT_EQ(t.from_fiber_product(fpp), flat);
  }
}

TEST(TMuApply, SquareOnChain) {
  const auto pi = CartesianMultifibered::create(chain(2), {0, 1});
  const FiberProduct fp(chain_q_d(), pi);
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const auto f = mf::PolyMultifiberedMap::create(pi, pi, {square(), PolyMap{2, {x * x, y}}});
  const Vector in = fp.assemble({{{3}}, {{3, 0}, {2, 5}}});
  const Vector out = mf::t_mu_apply(fp, fp, f, in);
  EXPECT_EQ(out, fp.assemble({{{9}}, {{9, 0}, {2, 5}}}));
  EXPECT_EQ(mf::t_mu_apply(fp, fp, mf::PolyMultifiberedMap::create(pi, pi, {PolyMap::identity(1), PolyMap::identity(2)}), in), in);
  EXPECT_MF_ERROR(mf::t_mu_apply(fp, fp, f, fp.assemble({{{3}}, {{4, 0}, {2, 5}}})), ErrorCode::CompatibilityViolation);
}

TEST(TMuApply, IncoherentMapRejected) {
  const auto pi = CartesianMultifibered::create(chain(2), {0, 1});
  const auto x = Polynomial::variable(2, 0);
  EXPECT_MF_ERROR(mf::PolyMultifiberedMap::create(pi, pi, {square(), PolyMap{2, {x, x}}}), ErrorCode::CoherenceError);
}

TEST(TMuApply, CompositionAndAlphaNaturality) {
  mf::checks::Rng rng(56);
  for (int k = 0; k < 20; ++k) {
    const auto P = mf::checks::random_poset(rng, 4);
    const auto mu = mf::checks::random_weil_system(rng, P);
    const std::size_t alpha = mf::checks::uniform(rng, 0, P.size() - 1);
    const auto f = mf::checks::random_polymap(rng, 2, 2, 3);
    const auto g = mf::checks::random_polymap(rng, 2, 1, 3);
    const mf::TMu s2(mu, CartesianMultifibered::at_level(P, alpha, 2));
    const mf::TMu s1(mu, CartesianMultifibered::at_level(P, alpha, 1));
    const auto F = mf::PolyMultifiberedMap::lift(P, alpha, f);
    const auto G = mf::PolyMultifiberedMap::lift(P, alpha, g);
    const auto GF = mf::PolyMultifiberedMap::lift(P, alpha, mf::compose(g, f));
    const auto pt = mf::checks::random_algebra_point(rng, mu.algebra(alpha), 2);
    Vector flat;
    for (const auto& v : pt) flat.insert(flat.end(), v.begin(), v.end());
    const Vector direct = mf::t_mu_map(s2, s1, GF, flat);
    EXPECT_EQ(direct, mf::t_mu_map(s2, s1, G, mf::t_mu_map(s2, s2, F, flat)));
    EXPECT_EQ(direct, mf::weil_apply(mu.algebra(alpha), mf::compose(g, f), pt)[0]);
  }
}

TEST(Products, PreservationReport) {
  const auto pi = CartesianMultifibered::create(chain(2), {0, 1});
  const auto r = mf::product_preservation_check(chain_q_d(), pi, pi);
  EXPECT_TRUE(r.passed) << r.failure;
  EXPECT_EQ(r.dim_a, 3u);
  EXPECT_EQ(r.dim_product, 6u);
  const auto point = CartesianMultifibered::create(chain(2), {});
  const auto t = mf::product_preservation_check(chain_q_d(), pi, point);
  EXPECT_TRUE(t.passed);
  EXPECT_EQ(t.dim_b, 0u);
  const auto q = mf::product_preservation_check(WeilSystem::constant(chain(2), kQ), pi, pi);
  EXPECT_EQ(q.dim_product, 4u);
}

}  // namespace
