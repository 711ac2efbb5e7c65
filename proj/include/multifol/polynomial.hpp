#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "multifol/rational.hpp"

namespace multifol {

using Exponents = std::vector<unsigned>;

/// Multivariate polynomial with rational coefficients in a fixed number of
/// variables. Terms with zero coefficient are never stored, so equality of
/// polynomials is equality of term maps.
class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  unsigned degree() const;

  /// Throws ArityMismatch if the exponent vector has the wrong length.
  void add_term(const Exponents& exponents, const Rational& coeff);

  Rational evaluate(const Vector& point) const;
  /// Substitutes polynomial `subs[v]` for variable v; all in the same ring.
  Polynomial substitute(const std::vector<Polynomial>& subs) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t num_vars_;
  std::map<Exponents, Rational> terms_;
};

/// Polynomial map Q^inputs -> Q^components.size().
struct PolyMap {
  std::size_t inputs = 0;
  std::vector<Polynomial> components;

  std::size_t outputs() const noexcept { return components.size(); }
  static PolyMap identity(std::size_t m);
  Vector evaluate(const Vector& point) const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;
};

/// g ∘ f. Throws ArityMismatch.
PolyMap compose(const PolyMap& g, const PolyMap& f);

}  // namespace multifol
