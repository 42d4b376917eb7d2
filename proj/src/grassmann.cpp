#include "tautring/grassmann.hpp"

#include <stdexcept>

namespace tautring {

namespace {

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Polynomial truncate_to_host(const RingHandle& host, const Polynomial& p) {
  return p.truncated(host->weights(), host->top_degree());
}

// Chern classes (as homogeneous parts) of a mixed-degree total class.
std::vector<Polynomial> parts(const RingHandle& host, const Polynomial& total) {
  std::vector<Polynomial> out;
  for (int k = 0; k <= host->top_degree(); ++k) out.push_back(total.homogeneous_part(host->weights(), k));
  return out;
}

}  // namespace

RingHandle grassmann_ring() {
  static const RingHandle ring = [] {
    std::vector<Generator> gens{{"x1", 1}, {"x2", 2}};
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);
    std::vector<Polynomial> s{Polynomial::constant(2, 1), x1};
    for (int k = 2; k <= 6; ++k) s.push_back(x1 * s[k - 1] - x2 * s[k - 2]);
    RingPresentation::Options opt;
    opt.normalizer = std::make_pair(Exponents{0, 4}, Rational(1));
    return RingPresentation::create("Gr(2,6)", gens, {{"s5", s[5]}, {"s6", s[6]}}, 8, opt);
  }();
  return ring;
}

Rational integrate_G(const CycleElement& x) {
  if (x.ring() != grassmann_ring()) throw RingError("integrate_G: element is not on Gr(2,6)");
  if (x.degree() != 8) throw RingError("integrate_G: expected degree 8, got " + std::to_string(x.degree()));
  return x.ring()->integrate(x.poly());
}

BundleClass::BundleClass(RingHandle host, Polynomial total, int rank)
    : host_(std::move(host)), total_(truncate_to_host(host_, total)), rank_(rank) {
  if (total_.coefficient(Exponents(host_->ngens(), 0)) != 1)
    throw std::invalid_argument("total Chern class must start with 1");
}

CycleElement BundleClass::chern(int k) const {
  if (k < 0 || k > host_->top_degree()) return CycleElement::zero(host_, k);
  return CycleElement(host_, total_.homogeneous_part(host_->weights(), k), k);
}

BundleClass BundleClass::dual() const {
  Polynomial out(host_->ngens());
  auto c = parts(host_, total_);
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * Rational(k % 2 ? -1 : 1);
  return BundleClass(host_, out, rank_);
}

// Newton: p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
Polynomial BundleClass::character() const {
  const auto& w = host_->weights();
  int top = host_->top_degree();
  auto e = parts(host_, total_);
  std::vector<Polynomial> p(static_cast<std::size_t>(top) + 1, Polynomial(host_->ngens()));
  Polynomial ch = Polynomial::constant(host_->ngens(), rank_);
  for (int k = 1; k <= top; ++k) {
    Polynomial pk = e[k] * Rational((k % 2 ? 1 : -1) * k);
    for (int i = 1; i < k; ++i) pk += series_multiply(e[i], p[k - i], w, top) * Rational(i % 2 ? 1 : -1);
    p[k] = pk;
    ch += pk * (Rational(1) / factorial(k));
  }
  return ch;
}

// Inverse Newton: e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, with p_k = k! ch_k.
BundleClass BundleClass::from_character(RingHandle host, const Polynomial& ch) {
  const auto& w = host->weights();
  int top = host->top_degree();
  auto n = host->ngens();
  Rational r = ch.coefficient(Exponents(n, 0));
  if (r < 0 || r.get_den() != 1) throw std::invalid_argument("character has non-integral rank");
  std::vector<Polynomial> p(static_cast<std::size_t>(top) + 1, Polynomial(n));
  for (int k = 1; k <= top; ++k) p[k] = ch.homogeneous_part(w, k) * factorial(k);
  std::vector<Polynomial> e{Polynomial::constant(n, 1)};
  Polynomial total = e[0];
  for (int k = 1; k <= top; ++k) {
    Polynomial ek(n);
    for (int i = 1; i <= k; ++i) ek += series_multiply(e[k - i], p[i], w, top) * Rational(i % 2 ? 1 : -1);
    ek *= Rational(1, k);
    e.push_back(ek);
    total += ek;
  }
  return BundleClass(host, total, static_cast<int>(r.get_num().get_si()));
}

BundleClass operator+(const BundleClass& a, const BundleClass& b) {
  if (a.host_ != b.host_) throw RingError("bundles live on different hosts");
  return BundleClass(a.host_, series_multiply(a.total_, b.total_, a.host_->weights(), a.host_->top_degree()),
                     a.rank_ + b.rank_);
}

BundleClass tensor(const BundleClass& a, const BundleClass& b) {
  if (a.host_ != b.host_) throw RingError("bundles live on different hosts");
  const auto& host = a.host_;
  return BundleClass::from_character(
      host, series_multiply(a.character(), b.character(), host->weights(), host->top_degree()));
}

BundleClass trivial_bundle(RingHandle host, int rank) {
  auto one = host->one();
  return BundleClass(std::move(host), one, rank);
}

Polynomial symmetric_power_rank2_universal(int k) {
  // Roots (k-i) a + i b, i = 0..k, in Q[a, b].
  Polynomial a = Polynomial::variable(2, 0);
  Polynomial b = Polynomial::variable(2, 1);
  Polynomial one = Polynomial::constant(2, 1);
  Polynomial prod = one;
  for (int i = 0; i <= k; ++i) prod = prod * (one + a * Rational(k - i) + b * Rational(i));

  // Rewrite the symmetric polynomial in e1 = a + b, e2 = ab by peeling leading terms.
  Polynomial e1 = a + b;
  Polynomial e2 = a * b;
  Polynomial out(2);
  while (!prod.is_zero()) {
    const auto& [lead, coef] = *prod.terms().rbegin();
    int i = lead[0], j = lead[1];
    if (i < j) throw std::logic_error("splitting product is not symmetric");
    Rational c = coef;
    out.add_term({i - j, j}, c);
    prod -= e1.pow(i - j) * e2.pow(j) * c;
  }
  return out;
}

BundleClass sym3_chern(const BundleClass& bundle) {
  if (bundle.rank() != 2) throw std::invalid_argument("sym3_chern expects a rank-2 bundle");
  const auto& host = bundle.host();
  Polynomial u = symmetric_power_rank2_universal(3);
  Polynomial image = u.substitute({bundle.chern(1).poly(), bundle.chern(2).poly()});
  return BundleClass(host, image, 4);
}

BundleClass dual_tautological_bundle() {
  auto g = grassmann_ring();
  return BundleClass(g, g->one() + g->variable("x1") + g->variable("x2"), 2);
}

std::map<std::pair<int, int>, Rational> fano_intersection_numbers() {
  auto gr = grassmann_ring();
  CycleElement c4 = sym3_chern(dual_tautological_bundle()).chern(4);
  CycleElement x1 = CycleElement::generator(gr, "x1");
  CycleElement x2 = CycleElement::generator(gr, "x2");
  std::map<std::pair<int, int>, Rational> out;
  for (auto [a, b] : {std::pair{4, 0}, std::pair{2, 1}, std::pair{0, 2}})
    out[{a, b}] = integrate_G(x1.pow(a) * x2.pow(b) * c4);
  return out;
}

std::vector<CycleElement> tangent_chern_F(const RingHandle& fano) {
  auto gr = grassmann_ring();
  const auto& w = gr->weights();
  int top = gr->top_degree();
  BundleClass sv = dual_tautological_bundle();
  Polynomial ch_sv = sv.character();
  Polynomial ch_s = sv.dual().character();
  Polynomial ch_tg = series_multiply(ch_sv, Polynomial::constant(2, 6) - ch_s, w, top);
  Polynomial ch_tf = ch_tg - sym3_chern(sv).character();
  BundleClass tf = BundleClass::from_character(gr, ch_tf);
  if (tf.rank() != 4) throw std::logic_error("T_F rank bookkeeping failed");

  std::vector<Polynomial> images{fano->variable("g"), fano->variable("c")};
  std::vector<CycleElement> out;
  for (int k = 0; k <= 4; ++k) out.push_back(CycleElement(fano, tf.chern(k).poly().substitute(images), k).normal_form());
  return out;
}

CycleElement segre_f(const RingHandle& fano, int j) {
  if (j < 1 || j > 5) throw std::out_of_range("segre_f: j must lie in 1..5");
  // c(S) = 1 - g + c on F.
  Polynomial cs = fano->one() - fano->variable("g") + fano->variable("c");
  Polynomial s = series_inverse(cs, fano->weights(), 4);
  int k = j - 1;
  return CycleElement(fano, s.homogeneous_part(fano->weights(), k), k).normal_form();
}

CycleElement pullback_factor(const CycleElement& x, const RingHandle& square, int k) {
  if (k != 1 && k != 2) throw std::out_of_range("pullback_factor: factor must be 1 or 2");
  std::string suffix = std::to_string(k);
  std::vector<Polynomial> images;
  for (const auto& n : x.ring()->names()) images.push_back(square->variable(n + suffix));
  return CycleElement(square, x.poly().substitute(images), x.degree());
}

CycleElement gamma_h(const RingHandle& fano, const RingHandle& square, int i, const Rational& cubic_degree) {
  if (i == 0) return CycleElement::generator(square, "I");
  if (i < 1 || i > 4) throw std::out_of_range("gamma_h: i must lie in 0..4");
  CycleElement sum = CycleElement::zero(square, i + 2);
  for (int a = 1; a <= 4; ++a) {
    int b = i + 4 - a;
    if (b < 1 || b > 4) continue;
    sum += pullback_factor(segre_f(fano, a), square, 1) * pullback_factor(segre_f(fano, b), square, 2);
  }
  return sum.scaled(Rational(1) / cubic_degree).normal_form();
}

RingHandle incidence_symbol_ring() {
  static const RingHandle ring = [] {
    std::vector<Generator> gens{{"h", 1}, {"g1", 1}, {"g2", 1}};
    return RingPresentation::create("I0 symbols", gens, {{"h5", Polynomial::variable(3, 0).pow(5)}}, 6);
  }();
  return ring;
}

std::pair<CycleElement, CycleElement> normal_bundle_chern() {
  auto r = incidence_symbol_ring();
  const auto& w = r->weights();
  Polynomial one = r->one();
  Polynomial h = r->variable("h");
  Polynomial g1 = r->variable("g1");
  Polynomial g2 = r->variable("g2");
  Polynomial num = (one + h).pow(6);
  Polynomial den = (one + h * Rational(3)) * (one + h * Rational(2) - g1) * (one + h * Rational(2) - g2);
  Polynomial total = series_multiply(num, series_inverse(den, w, 2), w, 2);
  return {CycleElement(r, total.homogeneous_part(w, 1), 1).normal_form(),
          CycleElement(r, total.homogeneous_part(w, 2), 2).normal_form()};
}

}  // namespace tautring
