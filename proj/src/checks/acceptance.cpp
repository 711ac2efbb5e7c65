#include "multifol/checks/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "multifol/checks/generators.hpp"
#include "multifol/classify.hpp"
#include "multifol/error.hpp"
#include "multifol/multifoliate.hpp"
#include "multifol/projsys.hpp"
#include "multifol/weil.hpp"

namespace multifol::checks {

namespace {

struct Outcome {
  bool holds = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::vector<MultifoliateStructure> roundtrip_structures(std::uint64_t seed) {
  Rng rng(seed ^ 0x1111);
  std::vector<MultifoliateStructure> out;
  for (int k = 0; k < 100; ++k) out.push_back(random_structure(rng, 5, 8));
  return out;
}

std::vector<MultifoliateStructure> pattern_structures(std::uint64_t seed) {
  Rng rng(seed ^ 0x4444);
  std::vector<MultifoliateStructure> out;
  for (int k = 0; k < 10; ++k) out.push_back(random_structure(rng, 5, 8));
  return out;
}

std::string describe(const MultifoliateStructure& s) {
  std::ostringstream os;
  os << "n=" << s.n() << " p=(";
  for (std::size_t i = 0; i < s.n(); ++i) os << (i ? "," : "") << s.poset().name(s.p()[i]);
  os << ")";
  return os.str();
}

Outcome roundtrip(const SuiteOptions& opts) {
  std::size_t k = 0;
  for (const auto& s : roundtrip_structures(opts.seed)) {
    const Classification c = classify(system_of(s));
    if (!equivalent(s, c.structure)) return fail("not equivalent for structure " + std::to_string(k) + " " + describe(s));
    ++k;
  }
  return {true, "100 structures"};
}

Outcome antichain_witness(const SuiteOptions&) {
  const Poset P = Poset::create({"a", "b"}, {});
  const ProjectiveSystem sys = ProjectiveSystem::create(P, {1, 1}, std::vector<IndexedMap>{});
  const Completion c = completion(sys);
  const Poset& Q = c.system.poset();
  const auto top = Q.greatest();
  if (Q.size() != 3 || !top) return fail("completion is not a 3-element poset with a greatest element");
  if (c.system.dim(*top) != 2) return fail("L_eps does not have dimension 2");

  auto key = [](const Subspace& s) { return s.basis().row_list(); };
  std::set<std::vector<Vector>> antichain_kernels;
  for (const auto& a : P.antichains()) {
    Subspace k = sys.kernel(a.front());
    for (std::size_t x : a) k = intersect(k, sys.kernel(x));
    antichain_kernels.insert(key(k));
  }
  std::set<std::vector<Vector>> completion_kernels;
  for (const auto& k : c.system.kernels()) completion_kernels.insert(key(k));
  // Brute force over the coordinate subspaces of Q^2; the whole space is
  // invariant but is not a completion index.
  std::set<std::vector<Vector>> invariant;
  for (unsigned mask = 0; mask < 4; ++mask) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < 2; ++i)
      if ((mask >> i) & 1U) {
        Vector e(2, 0);
        e[i] = 1;
        gens.push_back(e);
      }
    const Subspace s = Subspace::span(2, gens);
    if (is_invariant(sys, s) && !s.is_full()) invariant.insert(key(s));
  }
  if (invariant != antichain_kernels) return fail("invariant coordinate subspaces differ from antichain kernels");
  if (completion_kernels != antichain_kernels) return fail("completion kernels differ from antichain kernels");
  if (is_invariant(sys, Subspace::span(2, {{1, 1}}))) return fail("the diagonal line was judged invariant");
  return {true, "3 elements, dim L_eps = 2, 3 invariant proper subspaces"};
}

Outcome idempotence(const SuiteOptions& opts) {
  std::size_t k = 0;
  for (const auto& s : roundtrip_structures(opts.seed)) {
    const Completion c = completion(system_of(s));
    if (!is_complete(c.system)) return fail("completion not complete for structure " + std::to_string(k));
    const Completion again = completion(c.system);
    if (!system_isomorphic(c.system, again.system))
      return fail("second completion not isomorphic for structure " + std::to_string(k));
    ++k;
  }
  return {true, "100 systems"};
}

Outcome pattern_group(const SuiteOptions& opts) {
  Rng rng(opts.seed ^ 0x4545);
  std::size_t checked = 0;
  for (const auto& s : pattern_structures(opts.seed)) {
    const GLPattern pattern = gl_pattern(s);
    std::vector<Matrix> members;
    for (int k = 0; k < 200; ++k) members.push_back(random_pattern_member(rng, pattern));
    for (std::size_t k = 0; k < members.size(); ++k) {
      const Matrix& m = members[k];
      const Matrix& n = members[(k + 1) % members.size()];
      if (!pattern_member(pattern, m * n)) return fail("product left the pattern for " + describe(s));
      const auto inv = inverse(m);
      if (!inv || !pattern_member(pattern, *inv)) return fail("inverse left the pattern for " + describe(s));
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " members over 10 structures"};
}

Outcome stabilizer_dictionary(const SuiteOptions& opts) {
  for (const auto& s : pattern_structures(opts.seed)) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i < s.n(); ++i)
      for (std::size_t j = 0; j < s.n(); ++j)
        if (s.poset().leq(s.p()[j], s.p()[i])) ++expected;
    const std::size_t got = stabilizer_algebra(system_of(s)).size();
    if (got != expected || gl_pattern(s).allowed_count() != expected)
      return fail("dimension " + std::to_string(got) + " != " + std::to_string(expected) + " for " + describe(s));
  }
  return {true, "10 structures"};
}

// Copy of Q[t]/t^{k+1} whose table claims t*t has an extra t component.
WeilAlgebra corrupted_truncated(unsigned order) {
  const WeilAlgebra a = WeilAlgebra::truncated(order);
  auto table = a.table();
  if (table.size() > 1) table[1][1][1] += 1;
  return WeilAlgebra::unchecked(std::move(table), a.labels());
}

Outcome weil_functoriality(const SuiteOptions& opts) {
  Rng rng(opts.seed ^ 0x6666);
  const bool corrupt = opts.faults.count("weil-table") > 0;
  for (int iter = 0; iter < 100; ++iter) {
    const WeilAlgebra a = random_weil_algebra(rng, 4);
    const std::size_t m = uniform(rng, 1, 3), k = uniform(rng, 1, 3), l = uniform(rng, 1, 3);
    const PolyMap f = random_polymap(rng, m, k, 3);
    const PolyMap g = random_polymap(rng, k, l, 3);
    const auto x = random_algebra_point(rng, a, m);
    if (weil_apply(a, compose(g, f), x) != weil_apply(a, g, weil_apply(a, f, x)))
      return fail("composition law fails at pair " + std::to_string(iter));
    if (weil_apply(a, PolyMap::identity(m), x) != x) return fail("identity law fails at pair " + std::to_string(iter));

    // Univariate Taylor oracle: f(a0 + a1 t) = sum_k f^(k)(a0)/k! (a1 t)^k.
    const auto order = static_cast<unsigned>(uniform(rng, 1, 3));
    const WeilAlgebra t = corrupt ? corrupted_truncated(order) : WeilAlgebra::truncated(order);
    const Polynomial u = random_polynomial(rng, 1, 3);
    const Rational a0 = small_rational(rng), a1 = small_rational(rng);
    Vector point(t.dim(), 0);
    point[0] = a0;
    point[1] = a1;
    const Vector got = weil_apply(t, PolyMap{1, {u}}, {point})[0];
    std::vector<Rational> coeff(4, 0);
    for (const auto& [e, c] : u.terms()) coeff[e[0]] = c;
    for (unsigned kk = 0; kk <= order; ++kk) {
      Rational derivative_over_factorial = 0;
      for (unsigned j = kk; j < coeff.size(); ++j) {
        Rational binom = 1;
        for (unsigned r = 0; r < kk; ++r) binom = binom * (j - r) / (r + 1);
        Rational power = 1;
        for (unsigned r = kk; r < j; ++r) power *= a0;
        derivative_over_factorial += coeff[j] * binom * power;
      }
      Rational expected = derivative_over_factorial;
      for (unsigned r = 0; r < kk; ++r) expected *= a1;
      if (got[kk] != expected) return fail("Taylor oracle mismatch in jet coefficient " + std::to_string(kk));
    }
  }
  return {true, "100 composable pairs and Taylor checks"};
}

Outcome fiber_products(const SuiteOptions& opts) {
  const Poset chain = Poset::create({"a", "b"}, {{"a", "b"}});
  const WeilSystem mu = WeilSystem::create(chain, {WeilAlgebra::rationals(), WeilAlgebra::dual_numbers()},
                                           {{0, 1, Matrix{{1}, {0}}}});
  const auto pi = CartesianMultifibered::create(chain, {0, 1});
  const FiberProduct fp(mu, pi);
  if (fp.dim() != 3) return fail("chain example has dimension " + std::to_string(fp.dim()));
  if (!fp.base_surjective()) return fail("chain example base projection not surjective");
  const ProductReport square = product_preservation_check(mu, pi, pi);
  if (!square.passed || square.dim_product != 6) return fail("product check on pi x pi: " + square.failure);

  Rng rng(opts.seed ^ 0x7777);
  for (int k = 0; k < 20; ++k) {
    const Poset P = random_poset(rng, 4);
    const WeilSystem w = random_weil_system(rng, P);
    const auto a = random_object(rng, P, 3);
    const auto b = random_object(rng, P, 3);
    const ProductReport r = product_preservation_check(w, a, b);
    if (!r.passed) return fail("product check failed on object " + std::to_string(k) + ": " + r.failure);
    if (!FiberProduct(w, CartesianMultifibered::product(a, b)).base_surjective())
      return fail("base projection not surjective on object " + std::to_string(k));
  }
  return {true, "chain dim 3, square dim 6, 20 seeded objects"};
}

Outcome i_alpha_identification(const SuiteOptions& opts) {
  Rng rng(opts.seed ^ 0x8888);
  std::size_t cases = 0;
  for (int k = 0; k < 10; ++k) {
    const Poset P = random_poset(rng, 4);
    const WeilSystem mu = random_weil_system(rng, P);
    for (std::size_t alpha = 0; alpha < P.size(); ++alpha)
      for (std::size_t m = 1; m <= 2; ++m) {
        const auto x = CartesianMultifibered::at_level(P, alpha, m);
        const TMu source(mu, x);
        const std::size_t da = mu.algebra(alpha).dim();
        if (source.fiber_product().dim() != da * m)
          return fail("dimension mismatch at system " + std::to_string(k) + " element " + P.name(alpha));
        const std::size_t out = uniform(rng, 1, 2);
        const PolyMap f = random_polymap(rng, m, out, 3);
        const TMu target(mu, CartesianMultifibered::at_level(P, alpha, out));
        const auto point = random_algebra_point(rng, mu.algebra(alpha), m);
        Vector model;
        for (const auto& v : point) model.insert(model.end(), v.begin(), v.end());
        if (source.from_fiber_product(source.to_fiber_product(model)) != model)
          return fail("identification does not invert at system " + std::to_string(k));
        Vector expected;
        for (const auto& v : weil_apply(mu.algebra(alpha), f, point)) expected.insert(expected.end(), v.begin(), v.end());
        if (t_mu_map(source, target, PolyMultifiberedMap::lift(P, alpha, f), model) != expected)
          return fail("lifted map disagrees with the Weil functor at system " + std::to_string(k));
        ++cases;
      }
  }
  return {true, std::to_string(cases) + " (system, alpha, m) cases"};
}

bool brute_force_equivalent(const MultifoliateStructure& s, const MultifoliateStructure& t) {
  const Poset& P = s.poset();
  const Poset& Q = t.poset();
  if (P.size() != Q.size() || s.n() != t.n()) return false;
  const auto fs = s.fiber_sizes(), ft = t.fiber_sizes();
  std::vector<std::size_t> w(P.size());
  std::iota(w.begin(), w.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < P.size() && ok; ++x) {
      ok = fs[x] == ft[w[x]];
      for (std::size_t y = 0; y < P.size() && ok; ++y) ok = P.leq(x, y) == Q.leq(w[x], w[y]);
    }
    if (ok) return true;
  } while (std::next_permutation(w.begin(), w.end()));
  return false;
}

Outcome equivalence_decision(const SuiteOptions& opts) {
  Rng rng(opts.seed ^ 0x9999);
  for (int k = 0; k < 50; ++k) {
    const MultifoliateStructure s = random_structure(rng, 5, 8);
    const auto sigma = random_permutation(rng, s.n());
    const MultifoliateStructure t = permuted(s, sigma);
    const auto e = equivalent(s, t);
    if (!e) return fail("permuted pair " + std::to_string(k) + " reported not equivalent");
    for (std::size_t x = 0; x < e->omega.size(); ++x)
      if (e->omega[x] != x) return fail("permuted pair " + std::to_string(k) + " got a non-identity omega");
    for (std::size_t i = 0; i < s.n(); ++i)
      if (t.p()[i] != s.p()[e->sigma[i]]) return fail("returned sigma does not satisfy q = p o sigma");
  }
  int negatives = 0;
  for (int attempts = 0; negatives < 50; ++attempts) {
    if (attempts > 10000) return fail("could not generate 50 non-matching profiles");
    const MultifoliateStructure s = random_structure(rng, 5, 8);
    const MultifoliateStructure t = random_structure_over(rng, s.poset(), s.n());
    if (brute_force_equivalent(s, t)) continue;
    if (equivalent(s, t)) return fail("non-matching profile reported equivalent: " + describe(s) + " vs " + describe(t));
    ++negatives;
  }
  return {true, "50 permuted pairs, 50 non-matching profiles"};
}

struct Definition {
  int id;
  const char* name;
  double bound;
  std::function<Outcome(const SuiteOptions&)> run;
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> all = {
      {1, "round-trip classification", 10, roundtrip},
      {2, "antichain completion witness", 1, antichain_witness},
      {3, "completion idempotence and completeness", 20, idempotence},
      {4, "GL pattern group laws", 5, pattern_group},
      {5, "stabilizer dimension dictionary", 5, stabilizer_dictionary},
      {6, "Weil functoriality", 10, weil_functoriality},
      {7, "fiber product and product preservation", 10, fiber_products},
      {8, "i_alpha identification", 5, i_alpha_identification},
      {9, "equivalence decision", 5, equivalence_decision},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& known_faults() {
  static const std::vector<std::string> faults = {"weil-table"};
  return faults;
}

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
  const auto& all = definitions();
  auto it = std::find_if(all.begin(), all.end(), [&](const Definition& s) { return s.id == id; });
  CriterionResult r;
  r.id = id;
  if (it == all.end()) {
    r.detail = "no such criterion";
    return r;
  }
  r.name = it->name;
  r.bound_seconds = it->bound;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = it->run(opts);
    r.holds = o.holds;
    r.detail = o.detail;
  } catch (const Error& e) {
    r.holds = false;
    r.detail = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.holds = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& s : definitions()) out.push_back(run_criterion(s.id, opts));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3fs < %gs", r.seconds, r.bound_seconds);
  std::string line = (r.passed() ? "PASS" : "FAIL");
  line += "  [" + std::to_string(r.id) + "] " + r.name + "  " + timing;
  if (!r.holds) line += "  property violated:";
  else if (!r.passed()) line += "  time bound exceeded:";
  if (!r.detail.empty()) line += "  " + r.detail;
  return line;
}

}  // namespace multifol::checks
