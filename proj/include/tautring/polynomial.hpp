#pragma once

#include "tautring/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tautring {

using Exponents = std::vector<int>;

/// Weighted degree of an exponent vector.
int weighted_degree(const Exponents& e, const std::vector<int>& weights);

/// Commutative polynomial with exact rational coefficients in a fixed number
/// of variables. Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Exponents& e, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(int k) const;

  /// Keeps only terms whose weighted degree equals `degree`.
  Polynomial homogeneous_part(const std::vector<int>& weights, int degree) const;
  /// Drops terms of weighted degree above `max_degree`.
  Polynomial truncated(const std::vector<int>& weights, int max_degree) const;
  /// Weighted degrees present, ascending.
  std::vector<int> degrees(const std::vector<int>& weights) const;

  /// Ring homomorphism sending variable i to images[i].
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  /// Applies a permutation of variables: variable i becomes variable perm[i].
  Polynomial permuted(const std::vector<std::size_t>& perm) const;

  /// Human-readable rendering, "0" for zero, e.g. "12*g*c - 5*g^3".
  std::string render(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Formal inverse of a polynomial with nonzero constant term, truncated above
/// `max_degree` in the given weighting.
Polynomial series_inverse(const Polynomial& p, const std::vector<int>& weights, int max_degree);

/// Truncated product.
Polynomial series_multiply(const Polynomial& a, const Polynomial& b, const std::vector<int>& weights,
                           int max_degree);

/// All exponent vectors of weighted degree d, in descending lexicographic order.
std::vector<Exponents> enumerate_exponents(const std::vector<int>& weights, int d);

/// Renders a single monomial, "1" for the empty one.
std::string render_monomial(const Exponents& e, const std::vector<std::string>& names);

}  // namespace tautring
