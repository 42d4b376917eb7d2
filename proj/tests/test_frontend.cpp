#include "doctest.h"

#include "tautring/config.hpp"
#include "tautring/correspondences.hpp"
#include "tautring/evaluate.hpp"
#include "tautring/parser.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace tautring;

namespace {

const RingContext& ctx(const std::string& spec) {
  static std::map<std::string, RingContext> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, RingContext::make(spec)).first;
  return it->second;
}

// Random expression text over the given symbols, with every operator and
// nesting the grammar allows.
std::string random_expr(std::mt19937& rng, const std::vector<std::string>& syms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  auto sym = [&] { return syms[std::uniform_int_distribution<std::size_t>(0, syms.size() - 1)(rng)]; };
  auto num = [&] {
    int p = std::uniform_int_distribution<int>(1, 9)(rng), q = std::uniform_int_distribution<int>(1, 4)(rng);
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
  };
  switch (pick(rng)) {
    case 0: return sym();
    case 1: return num();
    case 2: return random_expr(rng, syms, depth - 1) + " + " + random_expr(rng, syms, depth - 1);
    case 3: return random_expr(rng, syms, depth - 1) + "-" + random_expr(rng, syms, depth - 1);
    case 4: return "(" + random_expr(rng, syms, depth - 1) + ")*" + random_expr(rng, syms, depth - 1);
    case 5: return "-" + random_expr(rng, syms, depth - 1);
    case 6: return "(" + random_expr(rng, syms, depth - 1) + ")^" + std::to_string(rng() % 3 + 1);
    default: return "nf(" + random_expr(rng, syms, depth - 1) + ")";
  }
}

}  // namespace

TEST_CASE("parser: precedence and associativity") {
  auto e = parse_expression("12*g*c - 5*g^3");
  CHECK(e->kind == ExprNode::Kind::Sub);
  CHECK(e->args[0]->kind == ExprNode::Kind::Mul);
  CHECK(e->args[1]->args[1]->kind == ExprNode::Kind::Pow);
  CHECK(render(e) == "12*g*c - 5*g^3");

  auto left = parse_expression("a - b - c");
  CHECK(left->args[0]->kind == ExprNode::Kind::Sub);  // (a - b) - c
  CHECK(render(parse_expression("a - (b - c)")) == "a - (b - c)");
  CHECK(render(parse_expression("(a*b)*c")) == "a*b*c");
  CHECK(render(parse_expression("-(a+b)")) == "-(a + b)");
  CHECK(render(parse_expression("  2/3 *  g1  ")) == "2/3*g1");
  CHECK(parse_expression("2/3")->value == make_rational(2, 3));

  auto comp = parse_expression("comp(pi4, comp(delta(g), pi4))");
  CHECK(comp->kind == ExprNode::Kind::Call);
  CHECK(comp->args.size() == 2);
  CHECK(comp->args[1]->args[0]->name == "delta");
  CHECK(parse_expression_list("g1, comp(a, b), c2").size() == 3);
}

TEST_CASE("parser: diagnostics carry byte offsets and expected tokens") {
  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      parse_expression(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("g1 + ") == 5);
  CHECK(offset_of("g1 $ g2") == 3);
  CHECK(offset_of("(g1 + g2") == 8);
  CHECK(offset_of("int(g, c)") == 0);  // arity
  CHECK(offset_of("comp(g)") == 0);
  CHECK(offset_of("frob(g)") == 0);    // unknown function
  CHECK(offset_of("g^2^3") != std::string::npos);
  CHECK(offset_of("1/0") == 2);

  try {
    parse_expression("g1 * ");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::find(e.expected().begin(), e.expected().end(), "name") != e.expected().end());
    CHECK(std::find(e.expected().begin(), e.expected().end(), "'('") != e.expected().end());
  }
}

TEST_CASE("parser: render is a right inverse of parse") {
  std::mt19937 rng(20261018);
  std::vector<std::string> syms{"g1", "g2", "c1", "I", "D", "x"};
  for (int i = 0; i < 300; ++i) {
    std::string text = random_expr(rng, syms, 4);
    auto e = parse_expression(text);
    auto again = parse_expression(render(e));
    INFO(text);
    CHECK(structurally_equal(e, again));
    CHECK(render(again) == render(e));
  }
}

TEST_CASE("evaluate: examples on F and F x F") {
  CHECK(evaluate("12*g*c - 5*g^3", ctx("F")).render() == "0");
  CHECK(evaluate("int(g^4)", ctx("F")).render() == "108");
  CHECK(evaluate("int(g^2*c)", ctx("F")).render() == "45");
  CHECK(evaluate("int(c^2)", ctx("F")).render() == "27");
  CHECK(evaluate("int(b^2)", ctx("F")).render() == "575");

  const auto& sq = ctx("FxF");
  auto q = evaluate("6*delta(g) + g1*g2*(g1+g2)*I", sq);
  REQUIRE(q.kind == Value::Kind::Chow);
  CHECK(q.render() == "1/4*g1^4*g2 + 7/12*g1^3*g2^2 + 7/12*g1^2*g2^3 + 1/4*g1*g2^4");
  // Without (vi) the same expression is not a g,c-polynomial, but cl agrees.
  auto q0 = evaluate("cl(6*delta(g) + g1*g2*(g1+g2)*I - (1/4*g1^4*g2 + 7/12*g1^3*g2^2 + 7/12*g1^2*g2^3 + 1/4*g1*g2^4))",
                     ctx("FxF0"));
  CHECK(q0.kind == Value::Kind::Cohom);
  CHECK(q0.render() == "0");

  // The correspondence of the multiplicativity argument: zero in cohomology,
  // outside the tautological closure at the Chow level.
  CHECK(evaluate("comp(cl(pi4), comp(cl(delta(g)), cl(pi4)))", sq).render() == "0");
  CHECK_THROWS_AS(evaluate("comp(pi4, comp(delta(g), pi4))", sq), ClosureViolation);
  CHECK(evaluate("comp(D, D)", sq).render() == "D");
  CHECK(evaluate("int(D^2)", sq).render() == "324");
  CHECK(evaluate("pf2(D*g1^2)", sq).render() == "g^2");
  CHECK(evaluate("tr(g1*c2)", sq).render() == "g2*c1");
}

TEST_CASE("evaluate: K3 powers") {
  const auto& k = ctx("K3:3,4");
  CHECK(evaluate("h1^2 - 4*o1", k).render() == "0");
  CHECK(evaluate("D12*D23 - D12*D13", k).render() == "0");
  CHECK(evaluate("int(o1*o2*o3)", k).render() == "1");
  CHECK(evaluate("int(D12*h1*h2*o3)", k).render() == "4");
}

TEST_CASE("evaluate: errors") {
  auto category = [](const std::string& text, const std::string& ring) {
    try {
      evaluate(text, ctx(ring));
    } catch (const EvalError& e) {
      return e.category();
    }
    FAIL("no error for " << text);
    return EvalError::Category::Unsupported;
  };
  CHECK(category("int(g^3)", "F") == EvalError::Category::DegreeMismatch);
  CHECK(category("g + c", "F") == EvalError::Category::DegreeMismatch);
  CHECK(category("h4", "K3:3,4") == EvalError::Category::UnknownSymbol);
  CHECK_THROWS_AS(RingContext::make("P^2"), EvalError);
  try {
    evaluate("g1 + gg2", ctx("FxF"));
  } catch (const EvalError& e) {
    CHECK(e.offset() == 5);
    CHECK(std::string(e.what()).find("did you mean 'g2'") != std::string::npos);
  }
}

TEST_CASE("evaluate: normal-form renderings round-trip") {
  std::mt19937 rng(7);
  for (const std::string spec : {"F", "FxF", "K3:2,4", "K3:3,2"}) {
    const auto& c = ctx(spec);
    for (int deg = 0; deg <= c.ring->top_degree(); ++deg) {
      auto basis = c.ring->basis(deg);
      if (basis.empty()) continue;
      for (int trial = 0; trial < 4; ++trial) {
        Polynomial p = Polynomial::constant(c.ring->ngens(), 0);
        for (const auto& e : basis) {
          int num = std::uniform_int_distribution<int>(-7, 7)(rng), den = std::uniform_int_distribution<int>(1, 5)(rng);
          p = p + Polynomial::monomial(e) * make_rational(num, den);
        }
        CycleElement x = CycleElement(c.ring, p, deg).normal_form();
        std::string text = x.render();
        auto back = evaluate(text, c);
        INFO(spec << ": " << text);
        if (x.poly().is_zero()) {
          CHECK(back.render() == "0");
          continue;
        }
        if (deg == 0) {  // constants evaluate to scalars
          REQUIRE(back.kind == Value::Kind::Scalar);
          CHECK(back.render() == text);
          continue;
        }
        REQUIRE(back.kind == Value::Kind::Chow);
        CHECK(back.chow->equals(x));
        CHECK(back.render() == text);
      }
    }
  }
}

TEST_CASE("config: parsing and validation") {
  std::istringstream in("# comment\nfujiki_constant = 3\nq_g=6\npolarization_degree_d = 2, 4, 6\nhilbert_convention = symmetric\n");
  auto c = Config::parse(in, "test");
  CHECK(c.constants.polarization_degrees == std::vector<int>{2, 4, 6});
  CHECK(c.hilbert == HilbertConvention::Symmetric);
  std::istringstream round(c.serialize());
  CHECK(Config::parse(round, "round").serialize() == c.serialize());

  auto rejects = [](const std::string& text) {
    std::istringstream s(text);
    CHECK_THROWS_AS(Config::parse(s, "t"), ConfigError);
  };
  rejects("unknown_key = 1\n");
  rejects("q_g = 6\nq_g = 6\n");
  rejects("q_g =\n");
  rejects("polarization_degree_d = 3\n");
  rejects("k3_max_power = 9\n");
  rejects("fujiki_constant = x\n");
  rejects("hilbert_convention = nakajima\n");
  rejects("just some words\n");

  std::istringstream frac("fujiki_constant = 3/1\nq_g = 12/2\n");
  CHECK(Config::parse(frac, "t").constants.q_g == 6);
}

TEST_CASE("config: explicit path, environment, defaults") {
  std::string path = "tautring_frontend_test.conf";
  {
    std::ofstream out(path);
    out << "q_g = 5\n";
  }
  unsetenv("TAUTRING_CONFIG");
  CHECK_FALSE(resolve_config_path(std::nullopt));
  CHECK(load_config(std::nullopt).constants.q_g == 6);
  setenv("TAUTRING_CONFIG", path.c_str(), 1);
  CHECK(resolve_config_path(std::nullopt) == path);
  CHECK(load_config(std::nullopt).constants.q_g == 5);
  CHECK(resolve_config_path(std::string("other.conf")) == "other.conf");
  unsetenv("TAUTRING_CONFIG");
  CHECK_THROWS_AS(Config::load("does/not/exist.conf"), ConfigError);
  std::remove(path.c_str());

  // The checked-in default file spells out the built-in values.
  auto shipped = Config::load(std::string(TAUTRING_DATA_DIR) + "/default.conf");
  CHECK(shipped.serialize() == Config{}.serialize());
}
