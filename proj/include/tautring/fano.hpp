#pragma once

#include "tautring/cohomology.hpp"
#include "tautring/constants.hpp"
#include "tautring/graded_ring.hpp"
#include "tautring/report.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tautring {

/// R*(F): generators g (1), c (2); 12gc = 5g^3, 4c^2 = g^4; int g^4 = 108.
RingHandle fano_ring();

/// Parses "g1^4*g2", "c1*c2" or "1" into an exponent vector of `ring`.
Exponents parse_monomial(const RingPresentation& ring, const std::string& text);

/// Coefficients of the relation polynomials Gamma2, P, Q and P1, one term per
/// record: `name monomial numerator denominator provenance`.
class RelationData {
 public:
  struct Term {
    std::string monomial;
    Rational value;
    std::string provenance;  // PAPER or DERIVED
  };

  static RelationData parse(std::istream& in);
  static RelationData load(const std::string& path);
  /// The checked-in data file.
  static RelationData defaults();

  bool has(const std::string& name) const { return terms_.count(name) > 0; }
  const std::vector<Term>& terms(const std::string& name) const;
  std::vector<std::string> names() const;
  void set(const std::string& name, std::vector<Term> terms) { terms_[name] = std::move(terms); }
  /// Adds `delta` to the coefficient of `monomial` (inserting it if absent).
  void perturb(const std::string& name, const std::string& monomial, const Rational& delta);

  Polynomial polynomial(const std::string& name, const RingPresentation& ring) const;
  std::string serialize() const;

 private:
  std::map<std::string, std::vector<Term>> terms_;
};

struct SquareOptions {
  bool include_vi = true;          // the new relation 6 D_*(g) + g1 g2 (g1 + g2) I = Q
  bool include_delta_square = true;
};

/// R*(F x F) on g1, g2, c1, c2, I, D with relations (i)-(vi), the per-factor
/// relations, g_i^5 = 0 and D^2 = D_*(c4(T_F)).
RingHandle build_fano_square(const RelationData& data, SquareOptions options = {});

/// The swap g1 <-> g2, c1 <-> c2 as a generator permutation of `square`.
std::vector<std::size_t> swap_permutation(const RingPresentation& square);

/// Expected Hodge dimensions of F x F.
const std::vector<int>& hodge_table_FxF();

/// Generator list of R^d(F x F) used in the dimension count, with a check
/// that it spans the degree-d quotient.
struct GeneratorTable {
  std::vector<std::string> labels;
  std::vector<CycleElement> generators;
  bool spans = false;
};
GeneratorTable generator_table(const RingHandle& square, int d);
const std::vector<std::string>& generator_labels(int d);

/// Monomials in g1, g2, c1, c2 of degree d built from the per-factor bases
/// {1}, {g}, {g^2, c}, {g^3}, {g^4}.
std::vector<CycleElement> reduced_gc_basis(const RingHandle& square, int d);
/// All monomials in g1, g2, c1, c2 of degree d.
std::vector<CycleElement> raw_gc_monomials(const RingHandle& square, int d);

/// I_*(x) = lambda f_{d-1} with lambda = (1/cubic) int x f_{5-d}; zero for d < 2.
CycleElement I_star(const CycleElement& x, const Rational& cubic_h4 = 3);

struct Pushforward {
  CycleElement value;
  bool degree_warning = false;
};
/// pr2_* from R*(F x F) to R*(F), via the generator-table normal form.
Pushforward pushforward_pr2(const CycleElement& x, const Rational& cubic_h4 = 3);
/// pr2^* (resp. pr1^*) of a class on F.
CycleElement pullback_pr(const CycleElement& y, const RingHandle& square, int factor);

/// Cohomological derivation of a relation polynomial over a family of g,c-monomials.
struct DerivedRelation {
  std::vector<CycleElement> family;
  Derivation solution;
  CycleElement polynomial(const RingHandle& square) const;
};
std::optional<DerivedRelation> derive_in_square(const CycleElement& target, const std::vector<CycleElement>& family,
                                                const CycleClassMap& cl);

/// Left side of the new relation, 6 g1 D + g1 g2 (g1 + g2) I.
CycleElement theorem_A_lhs(const RingHandle& square);
/// Targets whose g,c-expansions define Gamma2 and P.
CycleElement gamma2_target(const RingHandle& square);
CycleElement p_target(const RingHandle& square);

/// (g1^2 + g1 g2 + g2^2) Gamma_h - 3 (g1 + g2) Gamma_{h^2} + 6 Gamma_{h^3}, reduced.
/// Equals (1/12)(g1^4 g2 + 2 g1^3 g2^2 + 2 g1^2 g2^3 + g1 g2^4 - g1^3 c2 - g2^3 c1),
/// which is not the printed (5/12)(g1^4 g2 + 4 g1^3 g2^2 + ...).
CycleElement p1_from_gamma(const RingHandle& square, const Rational& cubic_h4 = 3);

/// Checks of relation (vi): cohomological identity, the intermediate P1 identity,
/// and uniqueness of the coefficient 2 of D_*(g).
std::vector<ReportEntry> verify_theorem_A(const RelationData& data, const ModelConstants& constants);

}  // namespace tautring
