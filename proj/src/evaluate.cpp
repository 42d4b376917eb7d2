#include "tautring/evaluate.hpp"

#include "tautring/correspondences.hpp"
#include "tautring/grassmann.hpp"
#include "tautring/k3.hpp"

#include <algorithm>
#include <sstream>

namespace tautring {

using Cat = EvalError::Category;

EvalError::EvalError(Category c, std::size_t offset, const std::string& message)
    : std::runtime_error("at byte " + std::to_string(offset) + ": " + message), category_(c), offset_(offset) {}

RingContext RingContext::make(const std::string& spec, const Config& config, const RelationData& data) {
  const auto& k = config.constants;
  RingContext c{Kind::F, spec, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, k.cubic_h4};
  if (spec == "F") {
    c.ring = fano_ring();
    c.model = ContractionModel::fano_power(1, k);
    c.cycle_class = std::make_shared<const CycleClassMap>(fano_cycle_class(c.ring, c.model));
  } else if (spec == "FxF" || spec == "FxF0") {
    c.kind = Kind::FxF;
    c.ring = build_fano_square(data, {.include_vi = spec == "FxF"});
    c.model = ContractionModel::fano_power(2, k);
    c.cycle_class = std::make_shared<const CycleClassMap>(fano_square_cycle_class(c.ring, c.model));
    c.fano = fano_ring();
    c.fano_model = c.model->with_factors(1);
    c.fano_class = std::make_shared<const CycleClassMap>(fano_cycle_class(c.fano, c.fano_model));
  } else if (spec.rfind("K3:", 0) == 0) {
    c.kind = Kind::K3;
    int r = 0, d = 0;
    char comma = 0;
    std::istringstream is(spec.substr(3));
    if (!(is >> r >> comma >> d) || comma != ',' || !is.eof())
      throw EvalError(Cat::UnknownRing, 0, "malformed ring '" + spec + "' (expected K3:r,d)");
    try {
      c.ring = build_k3_power(r, d);
    } catch (const std::invalid_argument& e) {
      throw EvalError(Cat::UnknownRing, 0, e.what());
    }
    c.model = ContractionModel::k3_power(r, d, k);
    c.cycle_class = std::make_shared<const CycleClassMap>(k3_cycle_class(c.ring, c.model));
  } else {
    throw EvalError(Cat::UnknownRing, 0, "unknown ring '" + spec + "' (expected F, FxF, FxF0 or K3:r,d)");
  }
  return c;
}

std::vector<std::string> RingContext::symbols() const {
  std::vector<std::string> out = ring->names();
  switch (kind) {
    case Kind::F: out.insert(out.end(), {"l", "b"}); break;
    case Kind::FxF:
      out.insert(out.end(), {"L", "l1", "l2", "b1", "b2", "B", "pi0", "pi2", "pi4", "pi6", "pi8", "g", "c", "l", "b"});
      break;
    case Kind::K3: break;
  }
  return out;
}

Value Value::of(Rational s) {
  Value v;
  v.kind = Kind::Scalar;
  v.scalar = std::move(s);
  return v;
}
Value Value::of(CycleElement x) {
  Value v;
  v.kind = Kind::Chow;
  v.chow = std::move(x);
  return v;
}
Value Value::of(CohomClass x) {
  Value v;
  v.kind = Kind::Cohom;
  v.cohom = std::move(x);
  return v;
}

std::string Value::render() const {
  switch (kind) {
    case Kind::Scalar: return to_string(scalar);
    case Kind::Chow: return chow->normal_form().render();
    case Kind::Cohom: return cohom->canonical().render();
  }
  return "";
}

int Value::degree() const {
  switch (kind) {
    case Kind::Scalar: return 0;
    case Kind::Chow: return chow->degree();
    case Kind::Cohom: return cohom->degree();
  }
  return 0;
}

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

class Evaluator {
 public:
  explicit Evaluator(const RingContext& ctx) : ctx_(ctx) {}

  Value eval(const Expr& e) {
    const ExprNode& n = *e;
    switch (n.kind) {
      case ExprNode::Kind::Number: return Value::of(n.value);
      case ExprNode::Kind::Symbol: return symbol(n);
      case ExprNode::Kind::Neg: return scale(eval(n.args[0]), -1);
      case ExprNode::Kind::Add: return add(eval(n.args[0]), eval(n.args[1]), 1, n.offset);
      case ExprNode::Kind::Sub: return add(eval(n.args[0]), eval(n.args[1]), -1, n.offset);
      case ExprNode::Kind::Mul: return mul(eval(n.args[0]), eval(n.args[1]), n.offset);
      case ExprNode::Kind::Pow: {
        Value base = eval(n.args[0]);
        Value out = one_like(base);
        for (int i = 0; i < n.exponent; ++i) out = mul(out, base, n.offset);
        return out;
      }
      case ExprNode::Kind::Call: return call(n);
    }
    throw EvalError(Cat::Unsupported, n.offset, "unknown node");
  }

 private:
  Value symbol(const ExprNode& n) {
    const std::string& s = n.name;
    if (ctx_.ring->find_generator(s)) return Value::of(CycleElement::generator(ctx_.ring, s));
    using K = RingContext::Kind;
    if (ctx_.kind == K::F) {
      if (s == "l") return Value::of(chow_l());
      if (s == "b") return Value::of(CohomClass::form_dual(ctx_.model, 0));
    } else if (ctx_.kind == K::FxF) {
      if (s == "L") return Value::of(chow_L(ctx_.ring));
      if (s == "l1" || s == "l2") return Value::of(pullback_pr(chow_l(), ctx_.ring, s[1] - '0'));
      if (s == "b1" || s == "b2") return Value::of(CohomClass::form_dual(ctx_.model, s[1] - '1'));
      if (s == "B") return Value::of(CohomClass::kunneth(ctx_.model, 0, 1));
      if (s.size() == 3 && s.rfind("pi", 0) == 0 && std::string("02468").find(s[2]) != std::string::npos) {
        if (pi_.empty()) pi_ = ck_projectors_chow(ctx_.ring);
        return Value::of(pi_[static_cast<std::size_t>((s[2] - '0') / 2)]);
      }
      if (s == "g" || s == "c") return Value::of(CycleElement::generator(ctx_.fano, s));
      if (s == "l") return Value::of(chow_l());
      if (s == "b") return Value::of(CohomClass::form_dual(ctx_.fano_model, 0));
    }
    auto syms = ctx_.symbols();
    std::string best;
    std::size_t dist = 99;
    for (const auto& cand : syms)
      if (auto dd = edit_distance(s, cand); dd < dist) dist = dd, best = cand;
    std::string msg = "unknown symbol '" + s + "' in ring " + ctx_.label;
    if (dist <= 2) msg += "; did you mean '" + best + "'?";
    throw EvalError(Cat::UnknownSymbol, n.offset, msg);
  }

  Value one_like(const Value& v) {
    switch (v.kind) {
      case Value::Kind::Scalar: return Value::of(Rational(1));
      case Value::Kind::Chow: return Value::of(CycleElement::one(v.chow->ring()));
      case Value::Kind::Cohom: return Value::of(CohomClass::one(v.cohom->model()));
    }
    return Value::of(Rational(1));
  }

  static Value scale(const Value& v, const Rational& s) {
    switch (v.kind) {
      case Value::Kind::Scalar: return Value::of(v.scalar * s);
      case Value::Kind::Chow: return Value::of(v.chow->scaled(s));
      case Value::Kind::Cohom: return Value::of(v.cohom->scaled(s));
    }
    return v;
  }

  const CycleClassMap& class_map(const CycleElement& x, std::size_t offset) const {
    if (x.ring() == ctx_.ring) return *ctx_.cycle_class;
    if (ctx_.fano && x.ring() == ctx_.fano) return *ctx_.fano_class;
    throw EvalError(Cat::RingMismatch, offset, "no cycle class map for " + x.ring()->name());
  }

  CohomClass to_cohom(const Value& v, const ModelHandle& model, std::size_t offset) const {
    switch (v.kind) {
      case Value::Kind::Scalar: return CohomClass::one(model).scaled(v.scalar);
      case Value::Kind::Chow: {
        CohomClass c = class_map(*v.chow, offset).apply(*v.chow);
        if (c.model() != model) throw EvalError(Cat::RingMismatch, offset, "operands live on different spaces");
        return c;
      }
      case Value::Kind::Cohom:
        if (v.cohom->model() != model) throw EvalError(Cat::RingMismatch, offset, "operands live on different spaces");
        return *v.cohom;
    }
    throw EvalError(Cat::Unsupported, offset, "bad value");
  }

  // Brings two values to a common kind: scalar < chow < cohom.
  std::pair<Value, Value> unify(const Value& a, const Value& b, std::size_t offset) const {
    if (a.kind == Value::Kind::Cohom || b.kind == Value::Kind::Cohom) {
      const ModelHandle& m = a.kind == Value::Kind::Cohom ? a.cohom->model() : b.cohom->model();
      return {Value::of(to_cohom(a, m, offset)), Value::of(to_cohom(b, m, offset))};
    }
    if (a.kind == Value::Kind::Chow && b.kind == Value::Kind::Chow && a.chow->ring() != b.chow->ring())
      throw EvalError(Cat::RingMismatch, offset,
                      "cannot combine classes of " + a.chow->ring()->name() + " and " + b.chow->ring()->name() +
                          " (use delta(...) or the factor generators)");
    if (a.kind == Value::Kind::Chow && b.kind == Value::Kind::Scalar)
      return {a, Value::of(CycleElement::one(a.chow->ring()).scaled(b.scalar))};
    if (a.kind == Value::Kind::Scalar && b.kind == Value::Kind::Chow)
      return {Value::of(CycleElement::one(b.chow->ring()).scaled(a.scalar)), b};
    return {a, b};
  }

  Value add(const Value& x, const Value& y, int sign, std::size_t offset) {
    auto [a, b] = unify(x, y, offset);
    switch (a.kind) {
      case Value::Kind::Scalar: return Value::of(a.scalar + sign * b.scalar);
      case Value::Kind::Chow:
        if (!a.chow->poly().is_zero() && !b.chow->poly().is_zero() && a.chow->degree() != b.chow->degree())
          throw EvalError(Cat::DegreeMismatch, offset,
                          "cannot add degrees " + std::to_string(a.chow->degree()) + " and " +
                              std::to_string(b.chow->degree()));
        return Value::of(*a.chow + b.chow->scaled(sign));
      case Value::Kind::Cohom:
        if (!a.cohom->terms().empty() && !b.cohom->terms().empty() && a.cohom->degree() != b.cohom->degree())
          throw EvalError(Cat::DegreeMismatch, offset,
                          "cannot add degrees " + std::to_string(a.cohom->degree()) + " and " +
                              std::to_string(b.cohom->degree()));
        if (a.cohom->terms().empty()) return Value::of(b.cohom->scaled(sign));
        return Value::of(*a.cohom + b.cohom->scaled(sign));
    }
    return a;
  }

  Value mul(const Value& x, const Value& y, std::size_t offset) {
    if (x.kind == Value::Kind::Scalar) return scale(y, x.scalar);
    if (y.kind == Value::Kind::Scalar) return scale(x, y.scalar);
    auto [a, b] = unify(x, y, offset);
    if (a.kind == Value::Kind::Chow) return Value::of(*a.chow * *b.chow);
    return Value::of(*a.cohom * *b.cohom);
  }

  bool on_square(const Value& v) const {
    return ctx_.kind == RingContext::Kind::FxF &&
           ((v.kind == Value::Kind::Chow && v.chow->ring() == ctx_.ring) ||
            (v.kind == Value::Kind::Cohom && v.cohom->model() == ctx_.model));
  }

  bool k3_square(const Value& v) const {
    return ctx_.kind == RingContext::Kind::K3 && ctx_.ring->top_degree() == 4 && v.kind == Value::Kind::Chow;
  }

  // pr_{factor *} of a cohomology class on a two-factor model.
  static CohomClass push_cohom(const CohomClass& x, int factor) {
    auto single = x.model()->with_factors(1);
    int deg = x.degree() - x.model()->params().factor_dim;
    if (deg < 0) return CohomClass(single, 0);
    const auto& tests = single->words(single->top_degree() - deg);
    DenseVector values(static_cast<Index>(tests.size()));
    for (std::size_t j = 0; j < tests.size(); ++j)
      values(static_cast<Index>(j)) = (x * pull(CohomClass::word(single, tests[j]), x.model(), {factor})).integral();
    auto out = class_from_pairings(single, deg, values);
    if (!out) throw std::runtime_error("pushforward left the contraction span");
    return *out;
  }

  Value call(const ExprNode& n) {
    const std::string& f = n.name;
    if (f == "comp") {
      Value a = eval(n.args[0]), b = eval(n.args[1]);
      if (!on_square(a) || !on_square(b))
        throw EvalError(Cat::Unsupported, n.offset, "comp needs two correspondences on F x F");
      if (a.kind == Value::Kind::Chow && b.kind == Value::Kind::Chow)
        return Value::of(compose_chow(*a.chow, *b.chow, ctx_.cubic_h4));
      return Value::of(compose(to_cohom(a, ctx_.model, n.offset), to_cohom(b, ctx_.model, n.offset)));
    }
    Value a = eval(n.args[0]);
    if (f == "nf") {
      if (a.kind == Value::Kind::Chow) return Value::of(a.chow->normal_form());
      if (a.kind == Value::Kind::Cohom) return Value::of(a.cohom->canonical());
      return a;
    }
    if (f == "cl") {
      if (a.kind == Value::Kind::Chow) return Value::of(class_map(*a.chow, n.offset).apply(*a.chow));
      return a;
    }
    if (f == "int") {
      if (a.kind == Value::Kind::Scalar)
        throw EvalError(Cat::DegreeMismatch, n.offset, "int of a scalar");
      if (a.kind == Value::Kind::Chow) {
        const auto& r = a.chow->ring();
        if (a.chow->poly().is_zero()) return Value::of(Rational(0));
        if (a.chow->degree() != r->top_degree())
          throw EvalError(Cat::DegreeMismatch, n.offset,
                          "int needs top degree " + std::to_string(r->top_degree()) + ", got " +
                              std::to_string(a.chow->degree()));
        return Value::of(r->integrate(a.chow->normal_form().poly()));
      }
      if (!a.cohom->terms().empty() && a.cohom->degree() != a.cohom->model()->top_degree())
        throw EvalError(Cat::DegreeMismatch, n.offset,
                        "int needs top degree " + std::to_string(a.cohom->model()->top_degree()) + ", got " +
                            std::to_string(a.cohom->degree()));
      return Value::of(a.cohom->integral());
    }
    if (f == "tr") {
      if (on_square(a)) {
        if (a.kind == Value::Kind::Chow) return Value::of(transpose_chow(*a.chow));
        return Value::of(transpose(*a.cohom));
      }
      if (k3_square(a)) return Value::of(permute_factors(*a.chow, {1, 0}).normal_form());
      throw EvalError(Cat::Unsupported, n.offset, "tr needs a class on a product of two factors");
    }
    if (f == "pf1" || f == "pf2") {
      int factor = f[2] - '1';  // the factor that is kept
      if (on_square(a)) {
        if (a.kind == Value::Kind::Cohom) return Value::of(push_cohom(*a.cohom, factor));
        CycleElement x = factor == 1 ? *a.chow : transpose_chow(*a.chow);
        if (x.degree() < 4) return Value::of(CycleElement::zero(ctx_.fano, 0));
        return Value::of(pushforward_pr2(x, ctx_.cubic_h4).value);
      }
      if (k3_square(a)) {
        int d = static_cast<int>(
            ctx_.ring->integrate((ctx_.ring->variable("h1").pow(2) * ctx_.ring->variable("o2"))).get_num().get_si());
        auto target = build_k3_power(1, d);
        if (a.chow->degree() < 2) return Value::of(CycleElement::zero(target, 0));
        auto out = partial_pushforward(*a.chow, 1 - factor, target);
        if (!out) throw EvalError(Cat::Unsupported, n.offset, "pushforward left the tautological image");
        return Value::of(*out);
      }
      throw EvalError(Cat::Unsupported, n.offset, f + " needs a class on a product of two factors");
    }
    if (f == "delta") {
      if (ctx_.kind != RingContext::Kind::FxF)
        throw EvalError(Cat::Unsupported, n.offset, "delta(...) is available in the F x F rings");
      if (a.kind == Value::Kind::Scalar)
        return Value::of(CycleElement::generator(ctx_.ring, "D").scaled(a.scalar));
      if (a.kind == Value::Kind::Chow && a.chow->ring() == ctx_.fano)
        return Value::of(CycleElement::generator(ctx_.ring, "D") * pullback_pr(*a.chow, ctx_.ring, 1));
      if (a.kind == Value::Kind::Cohom && a.cohom->model() == ctx_.fano_model)
        return Value::of(diagonal_class(ctx_.model) * pull(*a.cohom, ctx_.model, {0}));
      throw EvalError(Cat::RingMismatch, n.offset, "delta(...) takes a class on F (g, c, l, b)");
    }
    throw EvalError(Cat::Unsupported, n.offset, "unknown function '" + f + "'");
  }

  const RingContext& ctx_;
  std::vector<CycleElement> pi_;
};

}  // namespace

Value evaluate(const Expr& e, const RingContext& ctx) {
  Evaluator ev(ctx);
  return ev.eval(e);
}

Value evaluate(const std::string& text, const RingContext& ctx) { return evaluate(parse_expression(text), ctx); }

}  // namespace tautring
