// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance --cli PATH [--expect-fail N,...]
//
// Exits 0 iff the set of failing criteria equals the expected set, so a
// criterion known to be unattainable can be registered with ctest without
// being reported as passing.

#include "CLI11.hpp"

#include "tautring/correspondences.hpp"
#include "tautring/fano.hpp"
#include "tautring/grassmann.hpp"
#include "tautring/k3.hpp"
#include "tautring/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace tautring;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Run {
  std::string out;
  int status = -1;
};

Run run_cli(const std::string& cmd) {
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

CycleElement gen(const RingHandle& r, const char* n) { return CycleElement::generator(r, n); }

std::set<std::string> failing_ids(const VerificationReport& r) {
  std::set<std::string> out;
  for (const auto& e : r.entries())
    if (e.status == Status::Fail) out.insert(e.id);
  return out;
}

// --- criteria ------------------------------------------------------------------

Outcome hodge_table(const std::string& cli) {
  auto r = run_cli(cli + " dims --ring FxF");
  std::string got = trim(r.out);
  return {r.status == 0 && got == "0:1 1:2 2:6 3:8 4:12 5:8 6:6 7:2 8:1", "dims --ring FxF -> " + got};
}

Outcome theorem_A() {
  auto data = RelationData::defaults();
  auto without = build_fano_square(data, {.include_vi = false});
  auto with = build_fano_square(data);
  std::ostringstream d;
  d << "without (vi): " << without->graded_dimension(5) << "," << without->graded_dimension(6)
    << "; with: " << with->graded_dimension(5) << "," << with->graded_dimension(6);
  bool dims = without->graded_dimension(5) == 9 && without->graded_dimension(6) == 7 &&
              with->graded_dimension(5) == 8 && with->graded_dimension(6) == 6;

  auto cl = fano_square_cycle_class(without, ContractionModel::fano_power(2));
  auto sol = derive_in_square(theorem_A_lhs(without), reduced_gc_basis(without, 5), cl);
  bool q = false;
  if (sol) {
    auto g1 = gen(without, "g1"), g2 = gen(without, "g2");
    CycleElement expected = make_rational(1, 4) * (g1.pow(4) * g2 + g1 * g2.pow(4)) +
                            make_rational(7, 12) * (g1.pow(3) * g2.pow(2) + g1.pow(2) * g2.pow(3));
    CycleElement derived = sol->polynomial(without);
    q = sol->solution.kernel.cols() == 0 && (derived.poly() - expected.poly()).is_zero();
    d << "; Q = " << derived.render();
  }
  return {dims && q, d.str()};
}

Outcome intersection_numbers() {
  auto n = fano_intersection_numbers();
  auto gr = grassmann_ring();
  Rational x18 = integrate_G(gen(gr, "x1").pow(8));
  ModelConstants k;
  auto model = ContractionModel::fano_power(1, k);
  auto g = CohomClass::polar(model, 0), b = CohomClass::form_dual(model, 0), c = fano_c_image(model, 0);
  Rational m40 = g.pow(4).integral(), m21 = (g * g * c).integral(), m02 = (c * c).integral();
  Rational bb = (b * b).integral();
  bool ok = x18 == 14 && n.at({4, 0}) == 108 && n.at({2, 1}) == 45 && n.at({0, 2}) == 27 &&
            k.fujiki_constant * k.q_g * k.q_g == 108 && m40 == n.at({4, 0}) && m21 == n.at({2, 1}) &&
            m02 == n.at({0, 2}) && bb == 575 && bb == 23 * 25;
  std::ostringstream d;
  d << "Schubert: " << n.at({4, 0}) << "/" << n.at({2, 1}) << "/" << n.at({0, 2}) << ", int x1^8=" << x18
    << "; Fujiki model: " << m40 << "/" << m21 << "/" << m02 << ", int b^2=" << bb;
  return {ok, d.str()};
}

Outcome tangent_c2() {
  auto f = fano_ring();
  auto c = tangent_chern_F(f);
  CycleElement diff = c[2] - (Rational(5) * gen(f, "g").pow(2) - Rational(8) * gen(f, "c"));
  return {diff.is_zero(), "c2(T_F) = " + c[2].normal_form().render()};
}

Outcome segre_and_gamma() {
  auto f = fano_ring();
  auto g = gen(f, "g"), c = gen(f, "c");
  bool ok = segre_f(f, 2).equals(g) && segre_f(f, 3).equals(g * g - c) &&
            segre_f(f, 4).equals(make_rational(1, 6) * g.pow(3)) && segre_f(f, 5).is_zero();
  auto sq = build_fano_square(RelationData::defaults(), {.include_vi = false});
  auto g1 = gen(sq, "g1"), g2 = gen(sq, "g2"), c1 = gen(sq, "c1"), c2 = gen(sq, "c2");
  const Rational s = make_rational(1, 18);
  std::vector<CycleElement> want{
      s * (g1.pow(3) + Rational(6) * (g1 * g1 * g2) + Rational(6) * (g1 * g2 * g2) + g2.pow(3) -
           Rational(6) * (g1 * c2) - Rational(6) * (g2 * c1)),
      s * (g1.pow(3) * g2 + Rational(6) * (g1 * g1 * g2 * g2) + g1 * g2.pow(3) - Rational(6) * (g1 * g1 * c2) -
           Rational(6) * (g2 * g2 * c1) + Rational(6) * (c1 * c2)),
      s * (g1.pow(3) * g2 * g2 + g1 * g1 * g2.pow(3) - g1.pow(3) * c2 - g2.pow(3) * c1),
      make_rational(1, 108) * (g1.pow(3) * g2.pow(3))};
  int matched = 0;
  for (int i = 1; i <= 4; ++i) matched += gamma_h(f, sq, i).equals(want[static_cast<std::size_t>(i - 1)]);
  return {ok && matched == 4, "f_2..f_5 " + std::string(ok ? "match" : "differ") + "; Gamma formulas matched " +
                                  std::to_string(matched) + "/4"};
}

Outcome normal_bundle() {
  auto [c1, c2] = normal_bundle_chern();
  auto r = c1.ring();
  auto h = gen(r, "h"), g1 = gen(r, "g1"), g2 = gen(r, "g2");
  bool ok = c1.equals(g1 + g2 - h) &&
            c2.equals(g1 * g1 + g1 * g2 + g2 * g2 - Rational(3) * ((g1 + g2) * h) + Rational(6) * (h * h));
  return {ok, "c1(N) = " + c1.render() + "; c2(N) = " + c2.render()};
}

Outcome ck_suite() {
  auto entries = verify_ck_suite();
  int idem = 0, orth = 0, complete = 0, bad = 0;
  for (const auto& e : entries) {
    bool pass = e.status == Status::Pass;
    if (e.id.rfind("ck.idempotent.", 0) == 0) idem += pass, bad += !pass;
    if (e.id.rfind("ck.orthogonal.", 0) == 0) orth += pass, bad += !pass;
    if (e.id == "ck.complete") complete += pass, bad += !pass;
  }
  return {idem == 5 && orth == 20 && complete == 1 && bad == 0,
          std::to_string(idem) + " idempotent, " + std::to_string(orth) + " orthogonal, " + std::to_string(complete) +
              " completeness identities hold"};
}

Outcome multiplicativity_shadow() {
  auto square = ContractionModel::fano_power(2);
  auto pi4 = ck_projectors(square)[2];
  auto delta_g = diagonal_class(square) * CohomClass::polar(square, 0);  // D . pr1^* g
  CohomClass x = compose(pi4, compose(delta_g, pi4));
  return {x.is_zero() && !delta_g.is_zero(), "pi4 o D_*(g) o pi4 = " + x.canonical().render()};
}

Outcome relation_coherence() {
  auto data = RelationData::defaults();
  auto with = build_fano_square(data), without = build_fano_square(data, {.include_vi = false});
  auto model = ContractionModel::fano_power(2);
  auto cl = fano_square_cycle_class(with, model);
  int nonzero = 0;
  for (const auto& r : with->relations()) nonzero += !cl.apply(CycleElement(with, r.poly)).is_zero();

  auto cl0 = fano_square_cycle_class(without, model);
  RelationData re = data;
  bool derived = true;
  for (auto [name, target] : {std::pair{"Gamma2", gamma2_target(without)}, std::pair{"P", p_target(without)}}) {
    auto sol = derive_in_square(target, reduced_gc_basis(without, 4), cl0);
    if (!sol) {
      derived = false;
      continue;
    }
    std::vector<RelationData::Term> terms;
    CycleElement poly = sol->polynomial(without);
    for (const auto& [e, c] : poly.poly().terms())
      terms.push_back({render_monomial(e, without->names()), c, "DERIVED"});
    re.set(name, terms);
  }
  bool same = build_fano_square(re)->dimension_table() == with->dimension_table() &&
              build_fano_square(re, {.include_vi = false})->dimension_table() == without->dimension_table();
  return {nonzero == 0 && derived && same, std::to_string(with->relations().size()) + " relations, " +
                                               std::to_string(nonzero) + " nonzero in cohomology; reinsertion " +
                                               (same ? "keeps" : "changes") + " the dimension tables"};
}

Outcome k3_powers() {
  int checked = 0, bad = 0;
  for (int d : {2, 4})
    for (int r = 1; r <= 4; ++r) {
      auto ring = build_k3_power(r, d);
      auto model = ContractionModel::k3_power(r, d);
      for (int k = 0; k <= 2 * r; ++k, ++checked) bad += ring->graded_dimension(k) != model->gram_rank(k);
    }
  bool small = verify_small_diagonal(4).status == Status::Pass && verify_small_diagonal(2).status == Status::Pass;
  return {bad == 0 && small, std::to_string(checked) + " (r, d, k) dimension checks, " + std::to_string(bad) +
                                 " mismatches; small diagonal " + (small ? "exact" : "nonzero residual")};
}

Outcome fault_injection() {
  const auto baseline = failing_ids(run_manifest(Config{}, RelationData::defaults(), {.timing = false}));
  int tried = 0;
  std::vector<std::string> undetected;
  auto detects = [&](const Config& c, const RelationData& data, const std::string& what) {
    ++tried;
    auto fails = failing_ids(run_manifest(c, data, {.timing = false}));
    // Only entries that pass at baseline count as detections.
    bool caught = std::any_of(fails.begin(), fails.end(), [&](const std::string& id) { return !baseline.count(id); });
    if (!caught) undetected.push_back(what);
  };
  const std::vector<Rational> coefficient_deltas{make_rational(1, 7), Rational(-2), Rational(1000), make_rational(-1, 997)};
  const auto defaults = RelationData::defaults();
  for (const char* name : {"Q", "Gamma2", "P"})
    for (const auto& term : defaults.terms(name))
      for (const auto& delta : coefficient_deltas) {
        auto data = RelationData::defaults();
        data.perturb(name, term.monomial, delta);
        detects(Config{}, data, std::string(name) + "[" + term.monomial + "] + " + to_string(delta));
      }
  const std::vector<Rational> constant_deltas{Rational(1), make_rational(-1, 2), make_rational(1, 1000),
                                              Rational(-3), Rational(-6), make_rational(7, 3)};
  for (const auto& delta : constant_deltas) {
    Config q;
    q.constants.q_g += delta;
    detects(q, RelationData::defaults(), "q_g + " + to_string(delta));
    Config f;
    f.constants.fujiki_constant += delta;
    detects(f, RelationData::defaults(), "fujiki + " + to_string(delta));
  }
  std::string detail = std::to_string(tried - static_cast<int>(undetected.size())) + "/" + std::to_string(tried) +
                       " perturbations detected";
  for (const auto& u : undetected) detail += "; missed " + u;
  return {undetected.empty(), detail};
}

Outcome full_manifest(const std::string& cli) {
  auto r = run_cli(cli + " verify");
  std::vector<std::string> failed;
  std::istringstream in(r.out);
  std::string summary;
  for (std::string line; std::getline(in, line);) {
    if (line.find(" status=fail ") != std::string::npos) failed.push_back(line.substr(3, line.find(' ') - 3));
    if (line.rfind("summary", 0) == 0) summary = line;
  }
  std::string detail = "exit " + std::to_string(r.status) + ", " + summary;
  for (const auto& f : failed) detail += "; failing " + f;
  return {r.status == 0 && failed.empty() && !summary.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cli;
  std::vector<int> expect_fail;
  app.add_option("--cli", cli, "path to the tautring executable")->required();
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  using clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0: no time bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Hodge dimension table of F x F via the CLI", 10, [&] { return hodge_table(cli); }},
      {2, "dimensions 9,7 -> 8,6 and Q = (1/4, 7/12, 7/12, 1/4)", 10, theorem_A},
      {3, "intersection numbers by Schubert calculus and by the Fujiki model", 5, intersection_numbers},
      {4, "c2(T_F) = 5 g^2 - 8 c", 0, tangent_c2},
      {5, "f_j values and the four Gamma_{h^i} formulas", 0, segre_and_gamma},
      {6, "Chern classes of the normal bundle", 0, normal_bundle},
      {7, "Chow-Kuenneth projector identities in cohomology", 30, ck_suite},
      {8, "pi4 o D_*(g) o pi4 = 0 in cohomology", 0, multiplicativity_shadow},
      {9, "relation coherence and reinsertion of Gamma2, P", 0, relation_coherence},
      {10, "K3 powers: injectivity for r <= 4, d in {2,4}; small diagonal", 300, k3_powers},
      {11, "fault injection on Q, Gamma2, P, q(g), Fujiki constant", 0, fault_injection},
      {12, "full manifest with zero failures", 600, [&] { return full_manifest(cli); }},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    auto t0 = clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    bool ok = o.ok && in_time;
    if (!ok) failed.insert(c.id);
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs << " s";
    if (c.limit_seconds > 0) t << " < " << c.limit_seconds << " s" << (in_time ? "" : " EXCEEDED");
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << o.detail << "] ("
              << t.str() << ")" << std::endl;
  }

  std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::cout << failed.size() << " of " << criteria.size() << " criteria failed";
  if (!expected.empty()) {
    std::cout << "; expected to fail:";
    for (int e : expected) std::cout << " " << e;
  }
  std::cout << std::endl;
  return failed == expected ? 0 : 1;
}
