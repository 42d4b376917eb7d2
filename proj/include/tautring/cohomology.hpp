#pragma once

#include "tautring/constants.hpp"
#include "tautring/graded_ring.hpp"
#include "tautring/report.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace tautring {

// Contraction model of the invariant part of H* of a power of a hyper-Kaehler
// manifold (F, or a K3 surface). H^2 carries the Beauville-Bogomolov form q and
// a distinguished polarization; the orthogonal complement is never coordinatized.
// Classes are words in three letter kinds:
//   Polar(i)       the polarization in factor i (one H^2 slot)
//   FormDual(i)    sum_a e_a e^a in factor i (two slots, joined)
//   Kunneth(i,j)   sum_a e_a x e^a across factors i and j (one slot each, joined)
// A top-degree word integrates factor by factor: sum over perfect matchings of
// the slots of each factor, a path between polar slots weighs q(pol, pol), a
// closed cycle weighs b2, and every factor carries fujiki / (2n-1)!!.

enum class LetterKind : std::uint8_t { Polar, FormDual, Kunneth };

struct Letter {
  LetterKind kind;
  std::uint8_t f1;
  std::uint8_t f2;  // only meaningful for Kunneth, f1 < f2
  auto operator<=>(const Letter&) const = default;
  int slots() const { return kind == LetterKind::Polar ? 1 : 2; }
};

using Word = std::vector<Letter>;  // sorted

struct ModelParams {
  std::string label;
  int nfactors = 1;
  int factor_dim = 4;        // complex dimension of one factor = slots per factor
  Rational q_polar = 6;      // q(pol, pol)
  Rational trace = 23;       // b2
  Rational fujiki = 3;
  bool form_dual_letters = true;
  std::string polar_name = "g";
};

class ContractionModel;
using ModelHandle = std::shared_ptr<const ContractionModel>;

class ContractionModel {
 public:
  static ModelHandle create(ModelParams params);
  static ModelHandle fano_power(int k, const ModelConstants& constants = {});
  static ModelHandle k3_power(int r, int d, const ModelConstants& constants = {});

  const ModelParams& params() const { return params_; }
  /// The same space with k factors (cached).
  ModelHandle with_factors(int k) const;
  int nfactors() const { return params_.nfactors; }
  int top_degree() const { return params_.nfactors * params_.factor_dim; }
  const std::vector<Letter>& alphabet() const { return alphabet_; }

  /// Slots per factor; a word vanishes once any factor exceeds factor_dim.
  std::vector<int> slot_profile(const Word& w) const;
  bool fits(const Word& w) const;
  static int degree(const Word& w);

  /// Wick evaluation of a top-degree word; throws on other degrees.
  Rational wick_integral(const Word& w) const;

  /// Canonical words of degree d that fit.
  const std::vector<Word>& words(int d) const;
  DenseMatrix gram(int d) const;
  int gram_rank(int d) const;

  std::string render(const Word& w) const;
  std::string letter_name(const Letter& l) const;

 private:
  explicit ContractionModel(ModelParams p);
  Rational evaluate(const Word& w) const;

  ModelParams params_;
  std::vector<Letter> alphabet_;
  Rational factor_weight_;
  mutable std::mutex mutex_;
  mutable std::map<Word, Rational> integrals_;
  mutable std::map<int, std::vector<Word>> words_;
  mutable std::map<int, ModelHandle> siblings_;
};

Word multiply_words(const Word& a, const Word& b);

/// Rational combination of words of a single degree.
class CohomClass {
 public:
  CohomClass(ModelHandle model, int degree) : model_(std::move(model)), degree_(degree) {}
  static CohomClass one(ModelHandle model);
  static CohomClass letter(ModelHandle model, Letter l);
  static CohomClass word(ModelHandle model, const Word& w, const Rational& c = 1);
  static CohomClass polar(ModelHandle model, int factor);
  static CohomClass form_dual(ModelHandle model, int factor);
  static CohomClass kunneth(ModelHandle model, int f1, int f2);

  const ModelHandle& model() const { return model_; }
  int degree() const { return degree_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  void add_term(const Word& w, const Rational& c);

  CohomClass& operator+=(const CohomClass& o);
  CohomClass& operator-=(const CohomClass& o) { return *this += o.scaled(-1); }
  friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
  friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
  friend CohomClass operator*(const CohomClass& a, const CohomClass& b);
  friend CohomClass operator*(const Rational& s, const CohomClass& a) { return a.scaled(s); }
  CohomClass scaled(const Rational& s) const;
  CohomClass pow(int k) const;

  /// Integral of the top-degree part (zero in other degrees).
  Rational integral() const;
  /// Pairings against words(top - degree), in order.
  DenseVector pairing_vector() const;
  bool is_zero() const;
  bool equals(const CohomClass& o) const { return (*this - o).is_zero(); }

  /// The same functional re-expressed on a pivot subset of words(degree).
  CohomClass canonical() const;
  std::string render() const;

 private:
  ModelHandle model_;
  int degree_;
  std::map<Word, Rational> terms_;
};

/// Pullback along a map of factor sets: factor i of the source goes to factor
/// map[i] of the target. Kunneth letters whose ends collide become FormDual,
/// which realizes restriction to (partial) diagonals.
CohomClass pull(const CohomClass& x, const ModelHandle& target, const std::vector<int>& factor_map);

/// The unique (canonical) class of degree d whose pairings with words(top - d)
/// are the given values, if one exists.
std::optional<CohomClass> class_from_pairings(const ModelHandle& model, int degree, const DenseVector& values);

/// Diagonal of a two-factor model: int D . t = int_{factor} t|_diag for all t.
CohomClass diagonal_class(const ModelHandle& square);

struct Derivation {
  DenseVector coefficients;  // canonical solution
  DenseMatrix kernel;        // columns
};

/// Coefficients with target = sum lambda_i family_i in cohomology, if any.
std::optional<Derivation> derive_relation(const CohomClass& target, const std::vector<CohomClass>& family);

/// Ring homomorphism from a presentation to a contraction model, given by the
/// images of the generators.
class CycleClassMap {
 public:
  CycleClassMap(RingHandle ring, ModelHandle model, std::vector<CohomClass> images);
  /// Copies the images; the power cache starts empty.
  CycleClassMap(const CycleClassMap& o) : ring_(o.ring_), model_(o.model_), images_(o.images_) {}
  CycleClassMap& operator=(const CycleClassMap&) = delete;
  const RingHandle& ring() const { return ring_; }
  const ModelHandle& model() const { return model_; }
  const CohomClass& image(std::size_t generator) const { return images_.at(generator); }
  CohomClass apply(const Polynomial& p, int degree) const;
  CohomClass apply(const CycleElement& x) const { return apply(x.poly(), x.degree()); }

 private:
  CohomClass power(std::size_t gen, int k) const;
  RingHandle ring_;
  ModelHandle model_;
  std::vector<CohomClass> images_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, int>, CohomClass> powers_;
};

/// Standard images on F (g, c) and F x F (g1, g2, c1, c2, I, D).
///   c -> (5/8) g^2 - (3/20) b,  I -> (1/3)(g1^2 + (3/2) g1 g2 + g2^2 - c1 - c2) - B
CohomClass fano_c_image(const ModelHandle& model, int factor);
CohomClass fano_incidence_image(const ModelHandle& square);
CycleClassMap fano_cycle_class(const RingHandle& fano, const ModelHandle& model);
CycleClassMap fano_square_cycle_class(const RingHandle& square, const ModelHandle& model);

/// K3 powers: h_i -> polar, o_i -> h_i^2 / d, D_ij -> o_i + o_j + B_ij.
CycleClassMap k3_cycle_class(const RingHandle& ring, const ModelHandle& model);

/// Cross-validation of the Fujiki model of F against the Grassmannian numbers
/// and the denominators 23 and 25 of the projector formulas.
ReportEntry fujiki_consistency(const ModelConstants& constants);

}  // namespace tautring
