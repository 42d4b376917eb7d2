#pragma once

#include "tautring/cohomology.hpp"
#include "tautring/config.hpp"
#include "tautring/fano.hpp"
#include "tautring/parser.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace tautring {

/// Which ring symbols resolve in: "F", "FxF" (with relation (vi)), "FxF0"
/// (without it) or "K3:r,d".
struct RingContext {
  enum class Kind { F, FxF, K3 } kind;
  std::string label;
  RingHandle ring;
  ModelHandle model;
  std::shared_ptr<const CycleClassMap> cycle_class;
  // F x F only: R*(F) and its model, for g, c, l, b and delta(...).
  RingHandle fano;
  ModelHandle fano_model;
  std::shared_ptr<const CycleClassMap> fano_class;
  Rational cubic_h4 = 3;

  static RingContext make(const std::string& spec, const Config& config = {},
                          const RelationData& data = RelationData::defaults());
  std::vector<std::string> symbols() const;
};

class EvalError : public std::runtime_error {
 public:
  enum class Category { UnknownSymbol, DegreeMismatch, RingMismatch, Unsupported, UnknownRing };
  EvalError(Category c, std::size_t offset, const std::string& message);
  Category category() const { return category_; }
  std::size_t offset() const { return offset_; }

 private:
  Category category_;
  std::size_t offset_;
};

/// Result of evaluating an expression: a scalar, a class in a Chow-side ring, or
/// a cohomology class.
struct Value {
  enum class Kind { Scalar, Chow, Cohom } kind = Kind::Scalar;
  Rational scalar;
  std::optional<CycleElement> chow;
  std::optional<CohomClass> cohom;

  static Value of(Rational s);
  static Value of(CycleElement x);
  static Value of(CohomClass x);
  std::string render() const;
  int degree() const;
};

/// Throws ParseError, EvalError, or ClosureViolation (explicit Chow-level comp).
Value evaluate(const Expr& e, const RingContext& ctx);
Value evaluate(const std::string& text, const RingContext& ctx);

}  // namespace tautring
