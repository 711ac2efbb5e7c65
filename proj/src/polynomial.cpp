#include "multifol/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "multifol/error.hpp"

namespace multifol {

namespace {

Polynomial power(const Polynomial& base, unsigned e) {
  Polynomial result = Polynomial::constant(base.num_vars(), 1);
  Polynomial b = base;
  while (e > 0) {
    if (e & 1U) result = result * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return result;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorCode::ArityMismatch, "variable index out of range");
  Polynomial p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coeff) {
  if (exponents.size() != num_vars_)
    throw Error(ErrorCode::ArityMismatch, "exponent vector has the wrong length",
                nlohmann::json::array({exponents.size(), num_vars_}));
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(const Vector& point) const {
  if (point.size() != num_vars_)
    throw Error(ErrorCode::ArityMismatch, "point has the wrong number of coordinates",
                nlohmann::json::array({point.size(), num_vars_}));
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < num_vars_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) t *= point[v];
    total += t;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
  if (subs.size() != num_vars_)
    throw Error(ErrorCode::ArityMismatch, "substitution has the wrong number of polynomials",
                nlohmann::json::array({subs.size(), num_vars_}));
  const std::size_t target_vars = subs.empty() ? 0 : subs.front().num_vars();
  for (const auto& s : subs)
    if (s.num_vars() != target_vars)
      throw Error(ErrorCode::ArityMismatch, "substituted polynomials live in different rings");
  Polynomial out(target_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target_vars, c);
    for (std::size_t v = 0; v < num_vars_; ++v)
      if (e[v] > 0) t = t * power(subs[v], e[v]);
    out = out + t;
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw Error(ErrorCode::ArityMismatch, "polynomial rings differ");
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw Error(ErrorCode::ArityMismatch, "polynomial rings differ");
  Polynomial out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  return out;
}

PolyMap PolyMap::identity(std::size_t m) {
  PolyMap f{m, {}};
  for (std::size_t i = 0; i < m; ++i) f.components.push_back(Polynomial::variable(m, i));
  return f;
}

Vector PolyMap::evaluate(const Vector& point) const {
  Vector out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.evaluate(point));
  return out;
}

PolyMap compose(const PolyMap& g, const PolyMap& f) {
  if (g.inputs != f.outputs())
    throw Error(ErrorCode::ArityMismatch, "maps are not composable",
                nlohmann::json::array({g.inputs, f.outputs()}));
  PolyMap out{f.inputs, {}};
  for (const auto& c : g.components) {
    if (c.num_vars() != g.inputs) throw Error(ErrorCode::ArityMismatch, "component arity mismatch");
    out.components.push_back(f.components.empty() ? Polynomial::constant(f.inputs, c.evaluate({}))
                                                  : c.substitute(f.components));
  }
  return out;
}

}  // namespace multifol
