#include "tautring/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace tautring {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "at byte " << offset << ": " << message;
        if (!expected.empty()) {
          os << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
          os << ")";
        }
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

int function_arity(const std::string& name) {
  static const std::map<std::string, int> table{{"int", 1}, {"nf", 1},  {"cl", 1},    {"pf1", 1},
                                                {"pf2", 1}, {"tr", 1},  {"delta", 1}, {"comp", 2}};
  auto it = table.find(name);
  return it == table.end() ? -1 : it->second;
}

namespace {

struct Token {
  enum Kind { Integer, Name, Op, End } kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Integer, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Name, s.substr(i, j - i), i});
      i = j;
    } else if (std::string_view("+-*^/(),").find(static_cast<char>(ch)) != std::string_view::npos) {
      out.push_back({Token::Op, std::string(1, static_cast<char>(ch)), i});
      ++i;
    } else {
      throw ParseError(i, {}, std::string("unexpected character '") + static_cast<char>(ch) + "'");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  Expr expression() {
    Expr lhs = term();
    while (is_op("+") || is_op("-")) {
      Token op = next();
      Expr rhs = term();
      lhs = node({op.text == "+" ? ExprNode::Kind::Add : ExprNode::Kind::Sub, op.offset, 0, "", 0, {lhs, rhs}});
    }
    return lhs;
  }

  void expect_end() {
    if (peek().kind != Token::End) fail({"operator", "end of input"}, "unexpected '" + peek().text + "'");
  }
  bool at(const std::string& op) const { return is_op(op); }
  void consume() { ++pos_; }

 private:
  Expr term() {
    Expr lhs = factor();
    while (is_op("*")) {
      Token op = next();
      Expr rhs = factor();
      lhs = node({ExprNode::Kind::Mul, op.offset, 0, "", 0, {lhs, rhs}});
    }
    return lhs;
  }

  Expr factor() {
    if (is_op("-")) {
      Token op = next();
      return node({ExprNode::Kind::Neg, op.offset, 0, "", 0, {factor()}});
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (is_op("^")) {
      Token op = next();
      if (peek().kind != Token::Integer) fail({"non-negative integer exponent"}, "bad exponent");
      Token e = next();
      if (e.text.size() > 6) throw ParseError(e.offset, {}, "exponent too large");
      base = node({ExprNode::Kind::Pow, op.offset, 0, "", std::stoi(e.text), {base}});
      if (is_op("^")) fail({"operator", "end of input"}, "chained exponents need parentheses");
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Token::Integer) {
      next();
      std::string lit = t.text;
      if (is_op("/")) {
        next();
        if (peek().kind != Token::Integer) fail({"integer denominator"}, "bad rational literal");
        Token den = next();
        if (den.text.find_first_not_of('0') == std::string::npos) throw ParseError(den.offset, {}, "zero denominator");
        lit += "/" + den.text;
      }
      return node({ExprNode::Kind::Number, t.offset, parse_rational(lit), "", 0, {}});
    }
    if (t.kind == Token::Name) {
      Token name = next();
      if (!is_op("(")) {
        if (function_arity(name.text) >= 0) fail({"'('"}, "function '" + name.text + "' needs arguments");
        return node({ExprNode::Kind::Symbol, name.offset, 0, name.text, 0, {}});
      }
      int arity = function_arity(name.text);
      if (arity < 0) throw ParseError(name.offset, {}, "unknown function '" + name.text + "'");
      next();  // (
      std::vector<Expr> args{expression()};
      while (is_op(",")) {
        next();
        args.push_back(expression());
      }
      if (!is_op(")")) fail({"',' or ')'"}, "unterminated argument list");
      next();
      if (static_cast<int>(args.size()) != arity)
        throw ParseError(name.offset, {}, "function '" + name.text + "' takes " + std::to_string(arity) +
                                              " argument(s), got " + std::to_string(args.size()));
      return node({ExprNode::Kind::Call, name.offset, 0, name.text, 0, std::move(args)});
    }
    if (is_op("(")) {
      next();
      Expr inner = expression();
      if (!is_op(")")) fail({"')'"}, "unbalanced parenthesis");
      next();
      return inner;
    }
    fail({"number", "name", "'('", "'-'"}, t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
    throw ParseError(peek().offset, std::move(expected), msg);
  }
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool is_op(const std::string& op) const { return peek().kind == Token::Op && peek().text == op; }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return 1;
    case ExprNode::Kind::Mul: return 2;
    case ExprNode::Kind::Neg: return 3;
    case ExprNode::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + render(e) + ")" : render(e); }

}  // namespace

Expr parse_expression(const std::string& text) {
  Parser p(text);
  Expr e = p.expression();
  p.expect_end();
  return e;
}

std::vector<Expr> parse_expression_list(const std::string& text) {
  Parser p(text);
  std::vector<Expr> out{p.expression()};
  while (p.at(",")) {
    p.consume();
    out.push_back(p.expression());
  }
  p.expect_end();
  return out;
}

std::string render(const Expr& e) {
  const ExprNode& n = *e;
  int prec = precedence(n);
  switch (n.kind) {
    case ExprNode::Kind::Number: return to_string(n.value);
    case ExprNode::Kind::Symbol: return n.name;
    case ExprNode::Kind::Neg: return "-" + wrap(n.args[0], precedence(*n.args[0]) < prec || n.args[0]->kind == ExprNode::Kind::Neg);
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub:
    case ExprNode::Kind::Mul: {
      const char* op = n.kind == ExprNode::Kind::Add ? " + " : n.kind == ExprNode::Kind::Sub ? " - " : "*";
      // Left-associative: the right operand needs parentheses at equal precedence.
      return wrap(n.args[0], precedence(*n.args[0]) < prec) + op + wrap(n.args[1], precedence(*n.args[1]) <= prec);
    }
    case ExprNode::Kind::Pow: {
      // A rational literal p/q is an atom; anything below atom level needs parentheses.
      return wrap(n.args[0], precedence(*n.args[0]) < 5) + "^" + std::to_string(n.exponent);
    }
    case ExprNode::Kind::Call: {
      std::string out = n.name + "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) out += (i ? ", " : "") + render(n.args[i]);
      return out + ")";
    }
  }
  return "";
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->value != b->value || a->name != b->name || a->exponent != b->exponent ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

}  // namespace tautring
