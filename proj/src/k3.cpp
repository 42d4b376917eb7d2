#include "tautring/k3.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace tautring {

namespace {

std::string hname(int i) { return "h" + std::to_string(i + 1); }
std::string oname(int i) { return "o" + std::to_string(i + 1); }
std::string dname(int i, int j) {
  if (i > j) std::swap(i, j);
  return "D" + std::to_string(i + 1) + std::to_string(j + 1);
}

RingHandle make_k3_power(int r, int d) {
  std::vector<Generator> gens;
  for (int i = 0; i < r; ++i) gens.push_back({hname(i), 1});
  for (int i = 0; i < r; ++i) gens.push_back({oname(i), 2});
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) gens.push_back({dname(i, j), 2});
  auto scratch = RingPresentation::create("scratch", gens, {}, 2 * r);
  auto v = [&](const std::string& n) { return scratch->variable(n); };
  auto h = [&](int i) { return v(hname(i)); };
  auto o = [&](int i) { return v(oname(i)); };
  auto D = [&](int i, int j) { return v(dname(i, j)); };

  std::vector<Relation> rels;
  for (int i = 0; i < r; ++i) {
    std::string s = std::to_string(i + 1);
    rels.push_back({"h" + s + "^2-d*o" + s, h(i) * h(i) - o(i) * Rational(d)});
    rels.push_back({"h" + s + "*o" + s, h(i) * o(i)});
    rels.push_back({"o" + s + "^2", o(i) * o(i)});
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      std::string n = dname(i, j);
      rels.push_back({n + "*h", D(i, j) * h(i) - D(i, j) * h(j)});
      rels.push_back({n + "*h-BV", D(i, j) * h(i) - h(i) * o(j) - h(j) * o(i)});
      rels.push_back({n + "*o_i", D(i, j) * o(i) - o(i) * o(j)});
      rels.push_back({n + "*o_j", D(i, j) * o(j) - o(i) * o(j)});
      rels.push_back({n + "^2", D(i, j) * D(i, j) - o(i) * o(j) * Rational(24)});
    }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        Polynomial rhs = D(i, j) * o(k) + D(i, k) * o(j) + D(j, k) * o(i) - o(i) * o(j) - o(i) * o(k) - o(j) * o(k);
        std::string t = std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1);
        rels.push_back({"small diagonal " + t + " a", D(i, j) * D(j, k) - rhs});
        rels.push_back({"small diagonal " + t + " b", D(i, j) * D(i, k) - rhs});
        rels.push_back({"small diagonal " + t + " c", D(i, k) * D(j, k) - rhs});
      }

  RingPresentation::Options opt;
  Exponents top(gens.size(), 0);
  for (int i = 0; i < r; ++i) top[scratch->generator_index(oname(i))] = 1;
  opt.normalizer = std::make_pair(top, Rational(1));
  // Prefer products of the o_i and h_i as basis representatives.
  for (int k = 0; k <= 2 * r; ++k)
    for (const auto& e : scratch->monomials(k)) {
      bool pure = true;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) pure = pure && e[scratch->generator_index(dname(i, j))] == 0;
      if (pure) opt.preferred_basis.push_back(e);
    }
  std::string name = "R*(S^" + std::to_string(r) + "), d=" + std::to_string(d);
  return RingPresentation::create(name, gens, rels, 2 * r, opt);
}

}  // namespace

RingHandle build_k3_power(int r, int d) {
  if (r < 1) throw std::invalid_argument("build_k3_power: r must be positive");
  if (r > 9) throw std::invalid_argument("build_k3_power: at most 9 factors");
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("build_k3_power: d must be even and at least 2");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, RingHandle> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{r, d}];
  if (!slot) slot = make_k3_power(r, d);
  return slot;
}

std::vector<std::size_t> k3_factor_permutation(const RingPresentation& ring, const std::vector<int>& sigma) {
  std::vector<std::size_t> perm(ring.ngens());
  for (std::size_t g = 0; g < ring.ngens(); ++g) {
    const std::string& n = ring.names()[g];
    auto idx = [&](std::size_t pos) { return sigma.at(static_cast<std::size_t>(n[pos] - '1')); };
    std::string image = n[0] == 'h' ? hname(idx(1)) : n[0] == 'o' ? oname(idx(1)) : dname(idx(1), idx(2));
    perm[g] = ring.generator_index(image);
  }
  return perm;
}

CycleElement permute_factors(const CycleElement& x, const std::vector<int>& sigma) {
  return CycleElement(x.ring(), x.poly().permuted(k3_factor_permutation(*x.ring(), sigma)), x.degree());
}

CycleElement small_diagonal(const RingHandle& ring) {
  return CycleElement::generator(ring, "D12") * CycleElement::generator(ring, "D13");
}

ReportEntry verify_small_diagonal(int d, const ModelConstants& constants) {
  auto ring = build_k3_power(3, d);
  auto model = ContractionModel::k3_power(3, d, constants);
  auto cl = k3_cycle_class(ring, model);
  auto D12 = CycleElement::generator(ring, "D12"), D13 = CycleElement::generator(ring, "D13"),
       D23 = CycleElement::generator(ring, "D23");
  auto h1 = CycleElement::generator(ring, "h1"), h3 = CycleElement::generator(ring, "h3");
  std::vector<std::string> bad;
  if (!(D12 * D23 - D12 * D13).is_zero()) bad.push_back("D12 D23 - D12 D13");
  if (!(D13 * D23 - D12 * D13).is_zero()) bad.push_back("D13 D23 - D12 D13");
  CycleElement delta = small_diagonal(ring);
  if (!(delta * h1 - delta * h3).is_zero()) bad.push_back("delta h1 - delta h3");
  // Cohomological residual of the triple relation, evaluated on the generator images.
  CohomClass c12 = cl.apply(D12), c13 = cl.apply(D13), c23 = cl.apply(D23);
  auto o = [&](int i) { return cl.apply(CycleElement::generator(ring, oname(i))); };
  CohomClass rhs = c12 * o(2) + c13 * o(1) + c23 * o(0) - o(0) * o(1) - o(0) * o(2) - o(1) * o(2);
  CohomClass residual = c12 * c23 - rhs;
  std::string res = residual.is_zero() ? "0" : residual.canonical().render();
  if (!residual.is_zero()) bad.push_back("cohomology");
  std::ostringstream detail;
  for (const auto& b : bad) detail << b << "; ";
  return ReportEntry::check("k3.small_diagonal.d" + std::to_string(d), "small diagonal decomposition on S^3",
                            "Beauville-Voisin decomposition of the small diagonal", bad.empty(), res, detail.str());
}

bool FranchettaImage::complete() const {
  return std::all_of(spans.begin(), spans.end(), [](bool b) { return b; });
}

FranchettaImage franchetta_image_basis(int r, int d) {
  auto ring = build_k3_power(r, d);
  FranchettaImage out;
  std::vector<std::size_t> gens;
  for (int i = 0; i < r; ++i) out.generators.push_back(hname(i));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) out.generators.push_back(dname(i, j));
  for (const auto& n : out.generators) gens.push_back(ring->generator_index(n));
  for (int k = 0; k <= 2 * r; ++k) {
    // Normal forms of the monomials in the image generators, against the basis.
    auto basis = ring->basis(k);
    std::vector<CycleElement> images;
    for (const auto& e : ring->monomials(k)) {
      bool inside = true;
      for (std::size_t g = 0; g < e.size(); ++g)
        if (e[g] != 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) inside = false;
      if (inside) images.push_back(CycleElement(ring, Polynomial::monomial(e), k).normal_form());
    }
    DenseMatrix m(static_cast<Index>(basis.size()), static_cast<Index>(images.size()));
    for (std::size_t c = 0; c < images.size(); ++c)
      for (std::size_t b = 0; b < basis.size(); ++b)
        m(static_cast<Index>(b), static_cast<Index>(c)) = images[c].poly().coefficient(basis[b]);
    out.spans.push_back(basis.empty() || rank(m) == static_cast<Index>(basis.size()));
  }
  return out;
}

ReportEntry injectivity_check(int r, int d, const ModelConstants& constants) {
  auto ring = build_k3_power(r, d);
  auto model = ContractionModel::k3_power(r, d, constants);
  std::ostringstream dims, bad;
  bool ok = true;
  for (int k = 0; k <= 2 * r; ++k) {
    int a = ring->graded_dimension(k), b = model->gram_rank(k);
    dims << (k ? " " : "") << k << ":" << a;
    if (a != b) {
      ok = false;
      bad << "degree " << k << ": ring " << a << " vs cohomology " << b << "; ";
    }
  }
  // The presentation must not contradict cohomology either.
  auto cl = k3_cycle_class(ring, model);
  for (const auto& rel : ring->relations()) {
    CycleElement x(ring, rel.poly);
    if (!cl.apply(x).is_zero()) {
      ok = false;
      bad << "relation " << rel.label << " nonzero in cohomology; ";
    }
  }
  std::string id = "k3.injectivity.r" + std::to_string(r) + ".d" + std::to_string(d);
  return ReportEntry::check(id, "cycle class map injective on R*(S^" + std::to_string(r) + "), d=" + std::to_string(d),
                            "injectivity on the tautological ring of S^r", ok, ok ? "0" : bad.str(), dims.str());
}

std::optional<CycleElement> partial_pushforward(const CycleElement& x, int factor, const RingHandle& target,
                                                const ModelConstants& constants) {
  const auto& source = x.ring();
  int r = source->top_degree() / 2;
  // Polarization degree from the presentation: int h1^2 o2 ... or = d.
  Polynomial probe = source->variable(hname(0)).pow(2);
  for (int i = 1; i < r; ++i) probe = probe * source->variable(oname(i));
  int dd = static_cast<int>(source->integrate(probe).get_num().get_si());
  auto model = ContractionModel::k3_power(r, dd, constants);
  auto small = model->with_factors(r - 1);
  if (target->top_degree() != 2 * (r - 1)) throw std::invalid_argument("partial_pushforward: target has wrong size");
  auto cls = k3_cycle_class(source, model).apply(x);
  auto cl_target = k3_cycle_class(target, small);
  int out_degree = x.degree() - 2;
  if (out_degree < 0) return CycleElement::zero(target, 0);
  // Pairings int_{S^{r-1}} pr_*(x) . y = int_{S^r} x . pr^* y.
  std::vector<int> up;  // factor i of S^{r-1} goes to factor up[i] of S^r
  for (int i = 0; i < r; ++i)
    if (i != factor) up.push_back(i);
  const auto& tests = small->words(small->top_degree() - out_degree);
  DenseVector values(static_cast<Index>(tests.size()));
  for (std::size_t j = 0; j < tests.size(); ++j)
    values(static_cast<Index>(j)) = (cls * pull(CohomClass::word(small, tests[j]), model, up)).integral();
  auto pushed = class_from_pairings(small, out_degree, values);
  if (!pushed) return std::nullopt;
  // Lift along the (injective) cycle class map.
  auto basis = target->basis(out_degree);
  std::vector<CohomClass> family;
  for (const auto& e : basis) family.push_back(cl_target.apply(Polynomial::monomial(e), out_degree));
  auto sol = derive_relation(*pushed, family);
  if (!sol || sol->kernel.cols() != 0) return std::nullopt;
  Polynomial p(target->ngens());
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], sol->coefficients(static_cast<Index>(i)));
  return CycleElement(target, p, out_degree);
}

int invariant_dimension(const RingHandle& ring, int r, int k) {
  auto basis = ring->basis(k);
  if (basis.empty()) return 0;
  std::vector<int> sigma(static_cast<std::size_t>(r));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> group;
  do group.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
  DenseMatrix m(static_cast<Index>(basis.size()), static_cast<Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    CycleElement x(ring, Polynomial::monomial(basis[c]), k);
    CycleElement avg = CycleElement::zero(ring, k);
    for (const auto& s : group) avg += permute_factors(x, s);
    avg = avg.normal_form();
    for (std::size_t b = 0; b < basis.size(); ++b)
      m(static_cast<Index>(b), static_cast<Index>(c)) = avg.poly().coefficient(basis[b]);
  }
  return static_cast<int>(rank(m));
}

HilbertConvention parse_hilbert_convention(const std::string& name) {
  if (name == "partition") return HilbertConvention::Partition;
  if (name == "symmetric") return HilbertConvention::Symmetric;
  throw std::invalid_argument("unknown Hilbert convention '" + name + "' (expected partition or symmetric)");
}

std::string to_string(HilbertConvention c) { return c == HilbertConvention::Partition ? "partition" : "symmetric"; }

std::vector<HilbertSummand> hilbert_summands(int m, HilbertConvention c) {
  if (m == 2) return {{2, true, 0}, {1, false, 1}};
  if (m == 3) return {{3, true, 0}, {2, c == HilbertConvention::Symmetric, 1}, {1, false, 2}};
  throw std::invalid_argument("hilbert_dims: m must be 2 or 3");
}

std::vector<int> hilbert_dims(int m, int d, HilbertConvention c) {
  std::vector<int> out(static_cast<std::size_t>(2 * m + 1), 0);
  for (const auto& s : hilbert_summands(m, c)) {
    auto ring = build_k3_power(s.power, d);
    for (int k = 0; k <= 2 * s.power; ++k) {
      int dim = s.symmetric ? invariant_dimension(ring, s.power, k) : ring->graded_dimension(k);
      out[static_cast<std::size_t>(k + s.shift)] += dim;
    }
  }
  return out;
}

}  // namespace tautring
