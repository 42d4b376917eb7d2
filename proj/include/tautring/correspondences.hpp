#pragma once

#include "tautring/cohomology.hpp"
#include "tautring/constants.hpp"
#include "tautring/fano.hpp"
#include "tautring/report.hpp"

#include <stdexcept>
#include <vector>

namespace tautring {

// Correspondences on F x F. Convention: a o b = p13_*(p12^* b . p23^* a) and
// a_*(x) = pr2_*(a . pr1^* x), so (a o b)_* = a_* b_*.

/// Raised when a Chow-level composition would need the tautological ring of F^3.
struct ClosureViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- cohomology model ------------------------------------------------------

/// Factor swap.
CohomClass transpose(const CohomClass& a);
/// a o b, computed by integrating over the three-factor model.
CohomClass compose(const CohomClass& a, const CohomClass& b);
/// a_*(x) for a class x on one factor.
CohomClass act(const CohomClass& a, const CohomClass& x);
/// Columns: pairing vectors of a_*(w) for w in words(degree) of one factor.
DenseMatrix action_matrix(const CohomClass& a, int degree);
/// int_{F x F} a . Delta, the Lefschetz trace of a_* on all of H*(F).
Rational trace(const CohomClass& a);

/// pi^0, pi^2, pi^4, pi^6, pi^8 with l -> b, L -> B.
std::vector<CohomClass> ck_projectors(const ModelHandle& square);

/// Idempotency (5), orthogonality (20), completeness, transpose duality, traces
/// b_{2k} = 1, 23, 276, 23, 1 and the ranks on the modeled span.
std::vector<ReportEntry> verify_ck_suite(const ModelConstants& constants = {});

// --- Chow level, inside R*(F x F) with relation (vi) ----------------------

/// L = (1/3)(g1^2 + (3/2) g1 g2 + g2^2 - c1 - c2) - I.
CycleElement chow_L(const RingHandle& square);
/// l = (25/6) g^2 - (20/3) c on F, the restriction of L to the diagonal.
CycleElement chow_l();
std::vector<CycleElement> ck_projectors_chow(const RingHandle& square);

CycleElement transpose_chow(const CycleElement& a);
/// a o b for tautological a, b; throws ClosureViolation when a term of a and a
/// term of b both carry I.
CycleElement compose_chow(const CycleElement& a, const CycleElement& b, const Rational& cubic_h4 = 3);
/// a_*(x) for x in R*(F).
CycleElement act_chow(const CycleElement& a, const CycleElement& x, const Rational& cubic_h4 = 3);

/// CH^i(F)_(j) := (pi^{2i-j})_* CH^i(F) on the tautological basis.
struct FourierPiece {
  int i = 0;
  int j = 0;
  std::vector<CycleElement> images;  // one per basis element of R^i(F)
  int rank = 0;
};
struct FourierGrading {
  std::vector<FourierPiece> pieces;
  bool partitions_identity = true;  // sum over j of the pieces of x is x, for every i
};
FourierGrading fourier_grading(const RingHandle& square, const Rational& cubic_h4 = 3);

/// pi^4 o D_*(g) o pi^4 vanishes in cohomology; the Chow side is attempted and
/// reported as skipped on a closure violation; the grading transport g^3 in the
/// (0)-piece of degree 3.
std::vector<ReportEntry> verify_multiplicativity(const RelationData& data, const ModelConstants& constants = {});

}  // namespace tautring
