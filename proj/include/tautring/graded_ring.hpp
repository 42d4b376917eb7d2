#pragma once

#include "tautring/linalg.hpp"
#include "tautring/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tautring {

struct Generator {
  std::string name;
  int degree;
};

struct Relation {
  std::string label;
  Polynomial poly;
};

class RingPresentation;
using RingHandle = std::shared_ptr<const RingPresentation>;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finitely presented graded commutative Q-algebra. Degree pieces are computed
/// by exact linear algebra: the ideal in degree d is spanned by the relations of
/// degree d together with every generator times the ideal in lower degrees.
/// Everything above `top_degree` vanishes.
class RingPresentation {
 public:
  struct Options {
    /// Pins the top-degree integral: the monomial integrates to the value.
    std::optional<std::pair<Exponents, Rational>> normalizer;
    /// Monomials that should represent the quotient wherever possible; they are
    /// placed last in elimination order so pivots land elsewhere.
    std::vector<Exponents> preferred_basis;
  };

  static RingHandle create(std::string name, std::vector<Generator> generators,
                           std::vector<Relation> relations, int top_degree, Options options);
  static RingHandle create(std::string name, std::vector<Generator> generators,
                           std::vector<Relation> relations, int top_degree) {
    return create(std::move(name), std::move(generators), std::move(relations), top_degree, Options{});
  }

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Relation>& relations() const { return relations_; }
  int top_degree() const { return top_degree_; }
  std::size_t ngens() const { return generators_.size(); }
  const Options& options() const { return options_; }

  std::optional<std::size_t> find_generator(std::string_view name) const;
  std::size_t generator_index(std::string_view name) const;
  Polynomial variable(std::string_view name) const;
  Polynomial one() const { return Polynomial::constant(ngens(), 1); }

  /// Exponent vectors of weighted degree d, descending lexicographic order.
  const std::vector<Exponents>& monomials(int d) const;

  /// Rows span the degree-d part of the relation ideal, in the coordinates of
  /// monomials(d).
  DenseMatrix relation_span(int d) const;
  Index relation_rank(int d) const;

  int graded_dimension(int d) const;
  std::vector<int> dimension_table() const;

  /// Monomials representing a basis of the degree-d quotient.
  std::vector<Exponents> basis(int d) const;

  /// Canonical representative of a homogeneous polynomial of degree d.
  Polynomial reduce(const Polynomial& p, int d) const;

  /// Integral of a top-degree polynomial, when the normalizer is set and the
  /// top piece is one-dimensional.
  Rational integrate(const Polynomial& p) const;

  std::string render(const Polynomial& p) const { return p.render(names_); }

 private:
  struct DegreeData {
    std::vector<Exponents> monomials;
    std::map<Exponents, Index> column;  // elimination order
    std::vector<Exponents> by_column;
    SparseEchelon echelon{0};
  };

  RingPresentation() = default;
  const DegreeData& data(int d) const;
  SparseEchelon::Row to_row(const DegreeData& dd, const Polynomial& p) const;

  std::string name_;
  std::vector<Generator> generators_;
  std::vector<int> weights_;
  std::vector<std::string> names_;
  std::vector<Relation> relations_;
  int top_degree_ = 0;
  Options options_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<int, std::unique_ptr<DegreeData>> cache_;
};

/// Homogeneous element of a presented ring.
class CycleElement {
 public:
  CycleElement(RingHandle ring, Polynomial poly, int degree);
  /// Degree inferred from the terms; throws on inhomogeneous input or zero.
  CycleElement(RingHandle ring, Polynomial poly);

  static CycleElement zero(RingHandle ring, int degree);
  static CycleElement one(RingHandle ring);
  static CycleElement generator(RingHandle ring, std::string_view name);

  const RingHandle& ring() const { return ring_; }
  const Polynomial& poly() const { return poly_; }
  int degree() const { return degree_; }

  CycleElement normal_form() const;
  bool is_zero() const { return normal_form().poly().is_zero(); }
  std::string render() const { return ring_->render(poly_); }

  CycleElement& operator+=(const CycleElement& o);
  CycleElement& operator-=(const CycleElement& o);
  friend CycleElement operator+(CycleElement a, const CycleElement& b) { return a += b; }
  friend CycleElement operator-(CycleElement a, const CycleElement& b) { return a -= b; }
  friend CycleElement operator-(CycleElement a) { return a.scaled(-1); }
  friend CycleElement operator*(const CycleElement& a, const CycleElement& b);
  friend CycleElement operator*(const Rational& s, const CycleElement& a) { return a.scaled(s); }
  CycleElement scaled(const Rational& s) const;
  CycleElement pow(int k) const;

  /// Equality in the quotient ring.
  bool equals(const CycleElement& o) const;

 private:
  void check_same_ring(const CycleElement& o) const;
  RingHandle ring_;
  Polynomial poly_;
  int degree_;
};

CycleElement multiply(const CycleElement& a, const CycleElement& b);
CycleElement add(const CycleElement& a, const CycleElement& b);
CycleElement scale(const Rational& s, const CycleElement& a);

/// Mixed-degree element held as its homogeneous components.
class GradedElement {
 public:
  GradedElement(RingHandle ring, Polynomial poly) : ring_(std::move(ring)), poly_(std::move(poly)) {}
  const RingHandle& ring() const { return ring_; }
  const Polynomial& poly() const { return poly_; }
  CycleElement component(int d) const {
    return CycleElement(ring_, poly_.homogeneous_part(ring_->weights(), d), d);
  }

 private:
  RingHandle ring_;
  Polynomial poly_;
};

}  // namespace tautring
