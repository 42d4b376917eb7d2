// tautring: exact verification of tautological rings of F, F x F and K3 powers.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config/expression
// error, 3 closure violation in an explicit Chow-level compose.

#include "CLI11.hpp"

#include "tautring/config.hpp"
#include "tautring/correspondences.hpp"
#include "tautring/evaluate.hpp"
#include "tautring/manifest.hpp"

#include <fstream>
#include <iostream>
#include <thread>

using namespace tautring;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kClosure = 3;

std::string describe(const ParseError& e) {
  std::string out = "parse error at byte " + std::to_string(e.offset()) + ": " + e.what();
  if (!e.expected().empty()) {
    out += " (expected";
    for (std::size_t i = 0; i < e.expected().size(); ++i) out += (i ? ", " : " ") + e.expected()[i];
    out += ")";
  }
  return out;
}

std::string describe(const EvalError& e) {
  const char* kind = "error";
  switch (e.category()) {
    case EvalError::Category::UnknownSymbol: kind = "unknown symbol"; break;
    case EvalError::Category::DegreeMismatch: kind = "degree mismatch"; break;
    case EvalError::Category::RingMismatch: kind = "ring mismatch"; break;
    case EvalError::Category::Unsupported: kind = "unsupported"; break;
    case EvalError::Category::UnknownRing: kind = "unknown ring"; break;
  }
  return std::string(kind) + ": " + e.what();
}

RelationData load_relations(const std::string& path) {
  return path.empty() ? RelationData::defaults() : RelationData::load(path);
}

struct Common {
  std::string config;
  std::string relations;
  std::string ring = "FxF";
};

void add_common(CLI::App* cmd, Common& c, bool ring) {
  cmd->add_option("--config", c.config, "configuration file (default: $TAUTRING_CONFIG, then built-in values)");
  cmd->add_option("--relations", c.relations, "relation data file (default: the built-in table)");
  if (ring) cmd->add_option("--ring", c.ring, "F, FxF, FxF0 (without relation (vi)) or K3:r,d")->capture_default_str();
}

RingContext context(const Common& c) {
  auto config = load_config(c.config.empty() ? std::nullopt : std::optional<std::string>(c.config));
  return RingContext::make(c.ring, config, load_relations(c.relations));
}

int cmd_verify(const Common& c, const std::string& only, const std::string& report, int jobs, bool timing) {
  auto config = load_config(c.config.empty() ? std::nullopt : std::optional<std::string>(c.config));
  auto data = load_relations(c.relations);
  auto result = run_manifest(config, data, {.only = only, .jobs = jobs, .timing = true});
  if (result.entries().empty()) {
    std::cerr << "tautring: no manifest entry matches --only " << only << "\n";
    return kUsage;
  }
  std::cout << result.render_lines(timing);
  if (!report.empty()) {
    std::ofstream out(report);
    if (!out) {
      std::cerr << "tautring: cannot write " << report << "\n";
      return kUsage;
    }
    out << result.render_json() << "\n";
  }
  return result.ok() ? kOk : kFail;
}

int cmd_dims(const Common& c) {
  auto ctx = context(c);
  auto dims = ctx.ring->dimension_table();
  for (std::size_t k = 0; k < dims.size(); ++k) std::cout << (k ? " " : "") << k << ":" << dims[k];
  std::cout << "\n";
  return kOk;
}

int cmd_reduce(const Common& c, const std::string& expr) {
  auto ctx = context(c);
  std::cout << evaluate(expr, ctx).render() << "\n";
  return kOk;
}

int cmd_integrate(const Common& c, const std::string& expr) {
  auto ctx = context(c);
  std::cout << evaluate("int(" + expr + ")", ctx).render() << "\n";
  return kOk;
}

// Family specs: "gc" (reduced per-factor g,c-basis), "gc-raw" (all g,c-monomials)
// or a comma-separated expression list.
int cmd_derive(const Common& c, const std::string& target_text, const std::string& family_spec) {
  auto ctx = context(c);
  auto target = evaluate(target_text, ctx);
  int degree = target.degree();
  std::vector<std::string> labels;
  std::vector<Value> family;
  if (family_spec == "gc" || family_spec == "gc-raw") {
    if (ctx.kind != RingContext::Kind::FxF) throw EvalError(EvalError::Category::Unsupported, 0, "g,c-families need --ring FxF or FxF0");
    auto members = family_spec == "gc" ? reduced_gc_basis(ctx.ring, degree) : raw_gc_monomials(ctx.ring, degree);
    for (auto& m : members) {
      labels.push_back(m.render());
      family.push_back(Value::of(std::move(m)));
    }
  } else {
    for (const auto& e : parse_expression_list(family_spec)) {
      labels.push_back(render(e));
      family.push_back(evaluate(e, ctx));
    }
  }
  auto cohom = [&](const Value& v) {
    if (v.kind == Value::Kind::Cohom) return *v.cohom;
    if (v.kind == Value::Kind::Chow) return ctx.cycle_class->apply(*v.chow);
    return v.scalar * CohomClass::one(ctx.model);
  };
  std::vector<CohomClass> fam;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].degree() != degree)
      throw EvalError(EvalError::Category::DegreeMismatch, 0,
                      "family member " + labels[i] + " has degree " + std::to_string(family[i].degree()) +
                          ", target has degree " + std::to_string(degree));
    fam.push_back(cohom(family[i]));
  }
  auto sol = derive_relation(cohom(target), fam);
  if (!sol) {
    std::cout << "no solution in the span of the family\n";
    return kFail;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Rational& v = sol->coefficients(static_cast<Index>(i));
    if (v != 0) std::cout << labels[i] << " " << to_string(v) << "\n";
  }
  std::cout << "kernel " << sol->kernel.cols() << "\n";
  for (Index k = 0; k < sol->kernel.cols(); ++k) {
    std::cout << "  ";
    bool first = true;
    for (Index i = 0; i < sol->kernel.rows(); ++i) {
      if (sol->kernel(i, k) == 0) continue;
      std::cout << (first ? "" : " + ") << to_string(sol->kernel(i, k)) << "*(" << labels[static_cast<std::size_t>(i)]
                << ")";
      first = false;
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_compose(const Common& c, const std::string& a, const std::string& b, bool cohomology) {
  auto ctx = context(c);
  std::string expr = "comp(" + a + "," + b + ")";
  if (cohomology) expr = "comp(cl(" + a + "),cl(" + b + "))";
  std::cout << evaluate(expr, ctx).render() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of tautological rings of F, F x F and powers of K3 surfaces"};
  app.require_subcommand(1);

  Common common;
  std::string only, report, expr, expr2, target, family;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool timing = false, cohomology = false;

  auto* verify = app.add_subcommand("verify", "run the verification manifest");
  add_common(verify, common, false);
  verify->add_option("--only", only, "run only entries with this id prefix (e.g. thmA, ck.orthogonal)");
  verify->add_option("--report", report, "also write a JSON aggregate to this path");
  verify->add_option("--jobs,-j", jobs, "groups run in parallel")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_flag("--timing", timing, "include wall time per entry in the line report");

  auto* reduce = app.add_subcommand("reduce", "normal form of an expression");
  add_common(reduce, common, true);
  reduce->add_option("expr", expr, "cycle expression")->required();

  auto* integrate = app.add_subcommand("integrate", "degree of a top-degree expression");
  add_common(integrate, common, true);
  integrate->add_option("expr", expr, "cycle expression")->required();

  auto* dims = app.add_subcommand("dims", "graded dimension table of a ring");
  add_common(dims, common, true);

  auto* derive = app.add_subcommand("derive", "solve target = sum lambda_i family_i in cohomology");
  add_common(derive, common, true);
  derive->add_option("--target", target, "target expression")->required();
  derive->add_option("--family", family, "gc, gc-raw, or a comma-separated expression list")->required();

  auto* compose = app.add_subcommand("compose", "composition a o b of correspondences on F x F");
  add_common(compose, common, true);
  compose->add_option("a", expr, "left correspondence")->required();
  compose->add_option("b", expr2, "right correspondence")->required();
  compose->add_flag("--cohomology", cohomology, "compose the cohomology classes instead of the Chow-side classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(common, only, report, jobs, timing);
    if (*reduce) return cmd_reduce(common, expr);
    if (*integrate) return cmd_integrate(common, expr);
    if (*dims) return cmd_dims(common);
    if (*derive) return cmd_derive(common, target, family);
    if (*compose) return cmd_compose(common, expr, expr2, cohomology);
  } catch (const ClosureViolation& e) {
    std::cerr << "tautring: closure violation: " << e.what() << "\n";
    return kClosure;
  } catch (const ParseError& e) {
    std::cerr << "tautring: " << describe(e) << "\n";
    return kUsage;
  } catch (const EvalError& e) {
    std::cerr << "tautring: " << describe(e) << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "tautring: config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "tautring: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
