#pragma once

#include "tautring/rational.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautring {

// Cycle expressions:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | name | name '(' expr (',' expr)* ')' | '(' expr ')'
// Functions: int nf cl pf1 pf2 tr delta (one argument), comp (two).

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Pow, Call };
  Kind kind;
  std::size_t offset = 0;  // byte offset of the node in the source
  Rational value;          // Number
  std::string name;        // Symbol, Call
  int exponent = 0;        // Pow
  std::vector<Expr> args;  // operands / call arguments
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

Expr parse_expression(const std::string& text);
/// Comma-separated list of expressions at top level.
std::vector<Expr> parse_expression_list(const std::string& text);

/// Minimal-parenthesis rendering; parse_expression(render(e)) is structurally e.
std::string render(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

/// Arity of a known function, or -1.
int function_arity(const std::string& name);

}  // namespace tautring
