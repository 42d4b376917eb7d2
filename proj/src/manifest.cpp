#include "tautring/manifest.hpp"

#include "tautring/correspondences.hpp"
#include "tautring/grassmann.hpp"
#include "tautring/k3.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

namespace tautring {

bool matches_filter(const std::string& id, const std::string& only) {
  if (only.empty()) return true;
  if (id.size() < only.size() || id.compare(0, only.size(), only) != 0) return false;
  return id.size() == only.size() || id[only.size()] == '.';
}

namespace {

ReportEntry paper(ReportEntry e) {
  e.provenance = "paper";
  return e;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = "; ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string table(const std::vector<int>& dims) {
  std::ostringstream os;
  for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? " " : "") << k << ":" << dims[k];
  return os.str();
}

// Residual of an equality in a quotient ring, "0" when it holds.
std::string residual(const CycleElement& diff) {
  auto nf = diff.normal_form();
  return nf.poly().is_zero() ? "0" : nf.render();
}

// Pieri count on Gr(2,6): sigma_1^p sigma_11^q on two-row partitions in a 2 x 4 box.
Rational pieri_count(int p, int q) {
  std::map<std::pair<int, int>, Rational> state{{{0, 0}, 1}};
  for (int i = 0; i < p + q; ++i) {
    std::map<std::pair<int, int>, Rational> next;
    for (const auto& [ab, c] : state) {
      auto [a, b] = ab;
      if (i < p) {
        if (a < 4) next[{a + 1, b}] += c;
        if (b < a) next[{a, b + 1}] += c;
      } else if (a < 4) {
        next[{a + 1, b + 1}] += c;
      }
    }
    state = std::move(next);
  }
  auto it = state.find({4, 4});
  return it == state.end() ? Rational(0) : it->second;
}

// --- F: Schubert calculus and Chern classes on F ----------------------------

std::vector<ReportEntry> grassmann_group() {
  std::vector<ReportEntry> out;
  auto gr = grassmann_ring();
  auto betti = gr->dimension_table();
  out.push_back(ReportEntry::check("grassmann.betti", "Betti numbers of Gr(2,6)", "Schubert calculus on Gr(2,6)",
                                   betti == std::vector<int>{1, 1, 2, 2, 3, 2, 2, 1, 1}, "0", table(betti)));

  auto x1 = CycleElement::generator(gr, "x1"), x2 = CycleElement::generator(gr, "x2");
  std::vector<std::string> bad;
  for (int q = 0; q <= 4; ++q) {
    Rational got = integrate_G(x1.pow(8 - 2 * q) * x2.pow(q)), want = pieri_count(8 - 2 * q, q);
    if (got != want)
      bad.push_back("x1^" + std::to_string(8 - 2 * q) + " x2^" + std::to_string(q) + ": " + to_string(got) + " vs " +
                    to_string(want));
  }
  Rational top = integrate_G(x1.pow(8));
  if (top != 14) bad.push_back("int x1^8 = " + to_string(top));
  out.push_back(ReportEntry::check("grassmann.degree", "int x1^8 = 14 and Pieri agreement on Gr(2,6)",
                                   "degree of the Pluecker embedding of Gr(2,6)", bad.empty(),
                                   bad.empty() ? "0" : join(bad)));

  auto n = fano_intersection_numbers();
  bool ok = n.at({4, 0}) == 108 && n.at({2, 1}) == 45 && n.at({0, 2}) == 27;
  std::ostringstream d;
  d << "int g^4=" << n.at({4, 0}) << " int g^2c=" << n.at({2, 1}) << " int c^2=" << n.at({0, 2});
  out.push_back(ReportEntry::check("grassmann.fano_numbers", "intersection numbers of F via c4(Sym^3 S^v)",
                                   "intersection numbers on F", ok, ok ? "0" : d.str(), d.str()));

  // The relations of R*(F) are forced by these numbers.
  Rational gc = 12 * n.at({2, 1}) - 5 * n.at({4, 0}), cc = 4 * n.at({0, 2}) - n.at({4, 0});
  out.push_back(ReportEntry::check("grassmann.fano_relations", "12 g c = 5 g^3 and 4 c^2 = g^4 on top pairings",
                                   "tautological ring of F", gc == 0 && cc == 0,
                                   gc == 0 && cc == 0 ? "0" : to_string(gc) + ", " + to_string(cc)));
  return out;
}

std::vector<ReportEntry> tangent_group(const ModelConstants& k) {
  auto f = fano_ring();
  auto c = tangent_chern_F(f);
  auto g = CycleElement::generator(f, "g"), cc = CycleElement::generator(f, "c");
  std::vector<ReportEntry> out;
  out.push_back(ReportEntry::check("tangent.c1", "c1(T_F) = 0", "F is holomorphic symplectic", c[1].is_zero(),
                                   residual(c[1])));
  CycleElement diff = c[2] - (Rational(5) * (g * g) - Rational(8) * cc);
  out.push_back(paper(ReportEntry::check("tangent.c2", "c2(T_F) = 5 g^2 - 8 c", "second Chern class of T_F",
                                         diff.is_zero(), residual(diff))));
  // Euler number against the Betti numbers 1, b2, Sym^2 b2, b2, 1.
  Rational euler = f->integrate(c[4].poly());
  Rational betti = 2 + 2 * k.b2_F + k.b2_F * (k.b2_F + 1) / 2;
  out.push_back(ReportEntry::check("tangent.euler", "int c4(T_F) equals the sum of Betti numbers",
                                   "Euler number of F", euler == betti, to_string(euler - betti),
                                   "int c4=" + to_string(euler) + " sum b_i=" + to_string(betti)));
  return out;
}

std::vector<ReportEntry> segre_group(const RelationData& data, const ModelConstants& k) {
  std::vector<ReportEntry> out;
  auto f = fano_ring();
  auto g = CycleElement::generator(f, "g"), c = CycleElement::generator(f, "c");
  const std::vector<std::pair<int, CycleElement>> expected{
      {2, g}, {3, g * g - c}, {4, Rational(1, 6) * g.pow(3)}, {5, CycleElement::zero(f, 4)}};
  for (const auto& [j, want] : expected) {
    CycleElement diff = segre_f(f, j) - want;
    out.push_back(paper(ReportEntry::check("segre.f" + std::to_string(j), "f_" + std::to_string(j) + " = " + want.render(),
                                           "values of f_j = p_* q^* h^j", diff.is_zero(), residual(diff))));
  }

  auto sq = build_fano_square(data, {.include_vi = false});
  auto v = [&](const char* n) { return CycleElement::generator(sq, n); };
  auto g1 = v("g1"), g2 = v("g2"), c1 = v("c1"), c2 = v("c2");
  const Rational s = Rational(1, 18);
  const std::vector<CycleElement> formulas{
      s * (g1.pow(3) + Rational(6) * (g1 * g1 * g2) + Rational(6) * (g1 * g2 * g2) + g2.pow(3) -
           Rational(6) * (g1 * c2) - Rational(6) * (g2 * c1)),
      s * (g1.pow(3) * g2 + Rational(6) * (g1 * g1 * g2 * g2) + g1 * g2.pow(3) - Rational(6) * (g1 * g1 * c2) -
           Rational(6) * (g2 * g2 * c1) + Rational(6) * (c1 * c2)),
      s * (g1.pow(3) * g2 * g2 + g1 * g1 * g2.pow(3) - g1.pow(3) * c2 - g2.pow(3) * c1),
      Rational(1, 108) * (g1.pow(3) * g2.pow(3))};
  for (int i = 1; i <= 4; ++i) {
    CycleElement diff = gamma_h(f, sq, i, k.cubic_h4) - formulas[static_cast<std::size_t>(i - 1)];
    out.push_back(paper(ReportEntry::check("gamma.h" + std::to_string(i),
                                           "Gamma_{h^" + std::to_string(i) + "} from (1/3) sum f_a x f_b",
                                           "Gamma_{h^i} as polynomials in g_i, c_i", diff.is_zero(), residual(diff))));
  }
  return out;
}

std::vector<ReportEntry> normal_group() {
  auto [c1, c2] = normal_bundle_chern();
  auto r = c1.ring();
  auto v = [&](const char* n) { return CycleElement::generator(r, n); };
  auto h = v("h"), g1 = v("g1"), g2 = v("g2");
  CycleElement d1 = c1 - (g1 + g2 - h);
  CycleElement d2 = c2 - (g1 * g1 + g1 * g2 + g2 * g2 - Rational(3) * ((g1 + g2) * h) + Rational(6) * (h * h));
  return {paper(ReportEntry::check("normal.c1", "c1(N) = g1 + g2 - h", "Chern classes of the normal bundle of I",
                                   d1.is_zero(), residual(d1))),
          paper(ReportEntry::check("normal.c2", "c2(N) = g1^2 + g1 g2 + g2^2 - 3(g1 + g2) h + 6 h^2",
                                   "Chern classes of the normal bundle of I", d2.is_zero(), residual(d2)))};
}

// --- F x F -------------------------------------------------------------------

std::vector<ReportEntry> relations_group(const RelationData& data, const ModelConstants& k) {
  std::vector<ReportEntry> out;
  auto with = build_fano_square(data);
  auto without = build_fano_square(data, {.include_vi = false});
  auto model = ContractionModel::fano_power(2, k);
  auto cl = fano_square_cycle_class(with, model);
  const std::string anchor = "relations (i)-(vi) of the tautological ring of F x F";

  std::vector<std::string> bad;
  for (const auto& r : with->relations()) {
    auto img = cl.apply(CycleElement(with, r.poly));
    if (!img.is_zero()) bad.push_back(r.label + ": " + img.canonical().render());
  }
  out.push_back(ReportEntry::check("relations.coherence", "every relation maps to zero in cohomology", anchor,
                                   bad.empty(), bad.empty() ? "0" : join(bad),
                                   std::to_string(with->relations().size()) + " relations"));

  bad.clear();
  for (std::size_t i = 0; i < with->ngens(); ++i)
    for (std::size_t j = i; j < with->ngens(); ++j) {
      auto a = CycleElement::generator(with, with->names()[i]);
      auto b = CycleElement::generator(with, with->names()[j]);
      if (a.degree() + b.degree() > with->top_degree()) continue;
      if (!cl.apply(a * b).equals(cl.apply(a) * cl.apply(b))) bad.push_back(with->names()[i] + "*" + with->names()[j]);
    }
  out.push_back(ReportEntry::check("relations.homomorphism", "cycle class is multiplicative on generator pairs",
                                   "cycle class map on the tautological ring", bad.empty(),
                                   bad.empty() ? "0" : join(bad)));

  bad.clear();
  auto perm = swap_permutation(*with);
  for (const auto& r : with->relations())
    if (!CycleElement(with, r.poly.permuted(perm)).is_zero()) bad.push_back(r.label);
  out.push_back(ReportEntry::check("relations.swap", "relation ideal is stable under the factor swap", anchor,
                                   bad.empty(), bad.empty() ? "0" : join(bad)));

  // Gamma2 and P solved from cohomology over the reduced per-factor basis.
  auto cl0 = fano_square_cycle_class(without, model);
  RelationData reinserted = data;
  auto derive = [&](const std::string& name, const CycleElement& target, const std::string& title,
                    const std::string& anc) {
    auto sol = derive_in_square(target, reduced_gc_basis(without, target.degree()), cl0);
    CycleElement given(without, data.polynomial(name, *without), target.degree());
    std::string res = "no solution";
    bool ok = false;
    if (sol) {
      CycleElement p = sol->polynomial(without);
      Polynomial diff = p.poly() - given.poly();
      ok = sol->solution.kernel.cols() == 0 && diff.is_zero();
      res = diff.is_zero() ? "0" : without->render(diff);
      std::vector<RelationData::Term> terms;
      for (const auto& [e, c] : p.poly().terms())
        terms.push_back({render_monomial(e, without->names()), c, "DERIVED"});
      reinserted.set(name, std::move(terms));
    }
    out.push_back(ReportEntry::check("relations.derive_" + name, title, anc, ok, res,
                                     sol ? name + " = " + sol->polynomial(without).render() : ""));
  };
  derive("Gamma2", gamma2_target(without), "Gamma2 solved from cohomology matches the relation data",
         "relation (iii): I^2 = 2 D + I (g1^2 + g1 g2 + g2^2) + Gamma2");
  derive("P", p_target(without), "P solved from cohomology matches the relation data", "relation (v): c1 I = P");

  auto w2 = build_fano_square(reinserted), wo2 = build_fano_square(reinserted, {.include_vi = false});
  bool same = w2->dimension_table() == with->dimension_table() &&
              wo2->dimension_table() == without->dimension_table();
  out.push_back(ReportEntry::check("relations.reinsert", "derived Gamma2 and P leave the dimension tables unchanged",
                                   anchor, same, same ? "0" : table(w2->dimension_table()),
                                   "with (vi): " + table(w2->dimension_table()) +
                                       "; without (vi): " + table(wo2->dimension_table())));
  return out;
}

std::vector<ReportEntry> dims_group(const RelationData& data, const ModelConstants& k) {
  std::vector<ReportEntry> out;
  auto f = fano_ring();
  auto mf = ContractionModel::fano_power(1, k);
  std::vector<std::string> bad;
  for (int d = 0; d <= 4; ++d)
    if (f->graded_dimension(d) != mf->gram_rank(d)) bad.push_back("degree " + std::to_string(d));
  out.push_back(ReportEntry::check("dims.F", "R*(F) injects into cohomology", "tautological ring of F", bad.empty(),
                                   bad.empty() ? "0" : join(bad), table(f->dimension_table())));

  auto sq = build_fano_square(data);
  auto model = ContractionModel::fano_power(2, k);
  auto dims = sq->dimension_table();
  bad.clear();
  for (int d = 0; d <= 8; ++d) {
    int gr = model->gram_rank(d);
    if (dims[static_cast<std::size_t>(d)] != gr)
      bad.push_back("degree " + std::to_string(d) + ": ring " + std::to_string(dims[static_cast<std::size_t>(d)]) +
                    " vs cohomology " + std::to_string(gr));
  }
  out.push_back(ReportEntry::check("dims.FxF.injectivity", "R*(F x F) injects into cohomology",
                                   "injectivity of the cycle class map on R*(F x F)", bad.empty(),
                                   bad.empty() ? "0" : join(bad)));
  bool hodge = dims == hodge_table_FxF();
  out.push_back(paper(ReportEntry::check("dims.FxF", "dimension table 1,2,6,8,12,8,6,2,1 of R*(F x F)",
                                         "dimension table of R*(F x F)", hodge, hodge ? "0" : table(dims),
                                         table(dims))));
  return out;
}

// --- K3 ------------------------------------------------------------------------

std::vector<ReportEntry> k3_group(int r, int d, const ModelConstants& k) {
  std::vector<ReportEntry> out;
  const std::string suffix = ".r" + std::to_string(r) + ".d" + std::to_string(d);
  out.push_back(injectivity_check(r, d, k));

  auto ring = build_k3_power(r, d);
  std::vector<std::string> bad;
  for (int i = 0; i + 1 < r; ++i) {
    std::vector<int> sigma(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) sigma[static_cast<std::size_t>(j)] = j;
    std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(i + 1)]);
    for (const auto& rel : ring->relations())
      if (!permute_factors(CycleElement(ring, rel.poly), sigma).is_zero())
        bad.push_back("(" + std::to_string(i + 1) + " " + std::to_string(i + 2) + ") " + rel.label);
  }
  out.push_back(ReportEntry::check("k3.equivariance" + suffix, "relation ideal is stable under factor permutations",
                                   "tautological ring of S^r", bad.empty(), bad.empty() ? "0" : join(bad)));

  auto top = ring->basis(2 * r);
  std::string top_monomial = top.size() == 1 ? render_monomial(top.front(), ring->names()) : "";
  std::string want;
  for (int i = 1; i <= r; ++i) want += (i > 1 ? "*" : "") + std::string("o") + std::to_string(i);
  bool top_ok = top_monomial == want;
  out.push_back(ReportEntry::check("k3.top" + suffix, "top degree spanned by o_1 ... o_r",
                                   "Beauville-Voisin class", top_ok, top_ok ? "0" : std::to_string(top.size()) + " basis elements",
                                   top_monomial));

  auto image = franchetta_image_basis(r, d);
  bad.clear();
  for (std::size_t deg = 0; deg < image.spans.size(); ++deg)
    if (!image.spans[deg]) bad.push_back("degree " + std::to_string(deg));
  out.push_back(ReportEntry::check("k3.franchetta" + suffix, "h_i and the big diagonals generate R*(S^r)",
                                   "generators of the image of the universal family", image.complete(),
                                   bad.empty() ? "0" : join(bad), join(image.generators, ",")));
  return out;
}

std::vector<ReportEntry> hilbert_group(int d, const Config& config) {
  std::vector<ReportEntry> out;
  for (int m : {2, 3}) {
    auto dims = hilbert_dims(m, d, config.hilbert);
    std::vector<std::string> bad;
    if (dims.front() != 1) bad.push_back("degree 0 is " + std::to_string(dims.front()));
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] != dims[dims.size() - 1 - i]) bad.push_back("not symmetric at " + std::to_string(i));
    if (m == 2 && dims[1] != 2) bad.push_back("degree 1 is " + std::to_string(dims[1]));
    out.push_back(ReportEntry::check(
        "hilbert.m" + std::to_string(m) + ".d" + std::to_string(d),
        "tautological dimensions of Hilb^" + std::to_string(m) + "(S), " + to_string(config.hilbert) + " convention",
        "de Cataldo-Migliorini decomposition of Hilb^m(S)", bad.empty(), bad.empty() ? "0" : join(bad), table(dims)));
  }
  return out;
}

ReportEntry skipped(const std::string& id, const std::string& why) {
  ReportEntry e;
  e.id = id;
  e.title = "skipped";
  e.anchor = "derived";
  e.status = Status::Skipped;
  e.residual = "-";
  e.detail = why;
  return e;
}

struct Scheduled {
  ManifestGroup group;
  std::vector<std::string> prefixes;
};

std::vector<Scheduled> schedule(const Config& config, const RelationData& data) {
  const ModelConstants& k = config.constants;
  std::vector<Scheduled> out;
  auto add = [&](std::string name, bool needs, std::function<std::vector<ReportEntry>()> run,
                 std::vector<std::string> prefixes = {}) {
    if (prefixes.empty()) prefixes.push_back(name);
    out.push_back({{std::move(name), needs, std::move(run)}, std::move(prefixes)});
  };
  add("grassmann", false, grassmann_group);
  add("fujiki", false, [k] { return std::vector<ReportEntry>{fujiki_consistency(k)}; });
  add("tangent", false, [k] { return tangent_group(k); });
  add("chern_f", false, [data, k] { return segre_group(data, k); }, {"segre", "gamma"});
  add("normal", false, normal_group);
  add("relations", true, [data, k] { return relations_group(data, k); });
  add("dims", true, [data, k] { return dims_group(data, k); });
  add("thmA", true, [data, k] { return verify_theorem_A(data, k); });
  add("ck", true, [k] { return verify_ck_suite(k); });
  add("mult", true, [data, k] { return verify_multiplicativity(data, k); });
  for (int d : k.polarization_degrees) {
    for (int r = 1; r <= std::min(k.k3_max_power, 5); ++r) {
      std::string s = ".r" + std::to_string(r) + ".d" + std::to_string(d);
      add("k3" + s, false, [r, d, k] { return k3_group(r, d, k); },
          {"k3.injectivity" + s, "k3.equivariance" + s, "k3.top" + s, "k3.franchetta" + s});
    }
    if (k.k3_max_power >= 3)
      add("k3.small_diagonal.d" + std::to_string(d), false,
          [d, k] { return std::vector<ReportEntry>{verify_small_diagonal(d, k)}; });
  }
  for (int d : k.polarization_degrees)
    add("hilbert.d" + std::to_string(d), false, [d, config] { return hilbert_group(d, config); },
        {"hilbert.m2.d" + std::to_string(d), "hilbert.m3.d" + std::to_string(d)});
  return out;
}

bool selected(const Scheduled& s, const std::string& only) {
  if (only.empty()) return true;
  return std::any_of(s.prefixes.begin(), s.prefixes.end(),
                     [&](const std::string& p) { return matches_filter(p, only) || matches_filter(only, p); });
}

std::vector<ReportEntry> run_guarded(const ManifestGroup& g, bool timing) {
  auto start = std::chrono::steady_clock::now();
  std::vector<ReportEntry> entries;
  try {
    entries = g.run();
  } catch (const std::exception& ex) {
    entries = {ReportEntry::check(g.name + ".error", "check raised an error", "derived", false, ex.what())};
  }
  if (timing) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& e : entries) e.seconds = secs;
  }
  return entries;
}

}  // namespace

std::vector<ManifestGroup> manifest_groups(const Config& config, const RelationData& data) {
  std::vector<ManifestGroup> out;
  for (auto& s : schedule(config, data)) out.push_back(std::move(s.group));
  return out;
}

VerificationReport run_manifest(const Config& config, const RelationData& data, const ManifestOptions& options) {
  auto all = schedule(config, data);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (selected(all[i], options.only)) chosen.push_back(i);

  // The Fujiki model gates every group that integrates on F or F x F.
  bool need_gate = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) { return all[i].group.needs_fano_model; });
  std::vector<ReportEntry> gate;
  bool model_ok = true;
  if (need_gate) {
    gate = run_guarded(all[1].group, options.timing);
    model_ok = std::all_of(gate.begin(), gate.end(), [](const ReportEntry& e) { return e.status == Status::Pass; });
  }

  std::vector<std::vector<ReportEntry>> results(chosen.size());
  // Skipped placeholders and error entries are kept whatever the id filter says.
  std::vector<char> synthetic(chosen.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n; (n = next.fetch_add(1)) < chosen.size();) {
      const auto& s = all[chosen[n]];
      if (s.group.name == "fujiki" && need_gate) {
        results[n] = gate;
      } else if (s.group.needs_fano_model && !model_ok) {
        results[n] = {skipped(s.prefixes.front(), "requires fujiki.consistency")};
        synthetic[n] = 1;
      } else {
        results[n] = run_guarded(s.group, options.timing);
        synthetic[n] = results[n].size() == 1 && results[n].front().id == s.group.name + ".error";
      }
    }
  };
  int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(chosen.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  VerificationReport report;
  for (std::size_t n = 0; n < results.size(); ++n)
    for (auto& e : results[n])
      if (synthetic[n] || matches_filter(e.id, options.only)) report.add(std::move(e));
  return report;
}

}  // namespace tautring
