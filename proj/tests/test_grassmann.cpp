#include "doctest.h"

#include "tautring/grassmann.hpp"

#include <map>

using namespace tautring;

namespace {

// Independent Schubert oracle on Gr(2,6): two-row partitions (a, b), 4 >= a >= b >= 0,
// sigma_1 and sigma_11 acting by Pieri. Returns the multiplicity of sigma_{4,4}.
Rational pieri_integral(int p, int q) {
  std::map<std::pair<int, int>, Rational> state{{{0, 0}, 1}};
  auto apply_sigma1 = [](const std::map<std::pair<int, int>, Rational>& in) {
    std::map<std::pair<int, int>, Rational> out;
    for (const auto& [ab, c] : in) {
      auto [a, b] = ab;
      if (a + 1 <= 4) out[{a + 1, b}] += c;
      if (b + 1 <= a) out[{a, b + 1}] += c;
    }
    return out;
  };
  auto apply_sigma11 = [](const std::map<std::pair<int, int>, Rational>& in) {
    std::map<std::pair<int, int>, Rational> out;
    for (const auto& [ab, c] : in) {
      auto [a, b] = ab;
      if (a + 1 <= 4) out[{a + 1, b + 1}] += c;
    }
    return out;
  };
  for (int i = 0; i < p; ++i) state = apply_sigma1(state);
  for (int i = 0; i < q; ++i) state = apply_sigma11(state);
  auto it = state.find({4, 4});
  return it == state.end() ? Rational(0) : it->second;
}

RingHandle fano_like() {
  std::vector<Generator> gens{{"g", 1}, {"c", 2}};
  auto g = Polynomial::variable(2, 0);
  auto c = Polynomial::variable(2, 1);
  RingPresentation::Options opt;
  opt.normalizer = std::make_pair(Exponents{4, 0}, Rational(108));
  return RingPresentation::create("F", gens,
                                  {{"gc", Rational(12) * (g * c) - Rational(5) * g.pow(3)},
                                   {"cc", Rational(4) * c.pow(2) - g.pow(4)}},
                                  4, opt);
}

RingHandle square_like() {
  std::vector<Generator> gens{{"g1", 1}, {"g2", 1}, {"c1", 2}, {"c2", 2}, {"I", 2}};
  std::vector<Relation> rels;
  for (int k = 0; k < 2; ++k) {
    auto g = Polynomial::variable(5, k);
    auto c = Polynomial::variable(5, 2 + k);
    rels.push_back({"gc", Rational(12) * (g * c) - Rational(5) * g.pow(3)});
    rels.push_back({"cc", Rational(4) * c.pow(2) - g.pow(4)});
    rels.push_back({"g5", g.pow(5)});
    rels.push_back({"g3c", g.pow(3) * c});
    rels.push_back({"gcc", g * c.pow(2)});
  }
  return RingPresentation::create("FxF-like", gens, rels, 8);
}

}  // namespace

TEST_CASE("Grassmannian Betti numbers and Poincare duality") {
  auto gr = grassmann_ring();
  CHECK(gr->dimension_table() == std::vector<int>{1, 1, 2, 2, 3, 2, 2, 1, 1});
  for (int d = 0; d <= 8; ++d) {
    auto lo = gr->basis(d);
    auto hi = gr->basis(8 - d);
    DenseMatrix pair(static_cast<Index>(lo.size()), static_cast<Index>(hi.size()));
    for (std::size_t i = 0; i < lo.size(); ++i)
      for (std::size_t j = 0; j < hi.size(); ++j)
        pair(static_cast<Index>(i), static_cast<Index>(j)) =
            integrate_G(CycleElement(gr, Polynomial::monomial(lo[i]) * Polynomial::monomial(hi[j]), 8));
    CHECK(rank(pair) == static_cast<Index>(lo.size()));
  }
}

TEST_CASE("Schubert numbers agree with the Pieri oracle") {
  auto gr = grassmann_ring();
  auto x1 = CycleElement::generator(gr, "x1");
  auto x2 = CycleElement::generator(gr, "x2");
  CHECK(integrate_G(x2.pow(4)) == 1);
  CHECK(integrate_G(x1.pow(8)) == 14);
  CHECK(integrate_G(x1.pow(6) * x2) == 5);
  for (int q = 0; q <= 4; ++q) CHECK(integrate_G(x1.pow(8 - 2 * q) * x2.pow(q)) == pieri_integral(8 - 2 * q, q));
  CHECK_THROWS_AS(integrate_G(x1), RingError);
}

TEST_CASE("Whitney relation for S and Q") {
  auto gr = grassmann_ring();
  auto sv = dual_tautological_bundle();
  Polynomial cs = sv.dual().total();
  Polynomial cq = series_inverse(cs, gr->weights(), 8);
  // Q has rank 4: its classes in degrees 5..8 vanish in the presentation.
  for (int k = 5; k <= 8; ++k) CHECK(CycleElement(gr, cq.homogeneous_part(gr->weights(), k), k).is_zero());
  Polynomial prod = series_multiply(cs, cq, gr->weights(), 8);
  CHECK(prod == gr->one());
}

TEST_CASE("Chern character round trip") {
  auto sv = dual_tautological_bundle();
  auto back = BundleClass::from_character(sv.host(), sv.character());
  CHECK(back.rank() == 2);
  CHECK(back.total() == sv.total());
  auto sum = sv + sv.dual();
  CHECK(BundleClass::from_character(sv.host(), sv.character() + sv.dual().character()).total() == sum.total());
  // det(S^v (x) S^v) = 4 c1(S^v).
  CHECK(tensor(sv, sv).chern(1).poly() == sv.chern(1).poly() * Rational(4));
}

TEST_CASE("symmetric cube of S^v") {
  auto sym = sym3_chern(dual_tautological_bundle());
  auto gr = grassmann_ring();
  CHECK(sym.rank() == 4);
  CHECK(sym.chern(1).poly() == gr->variable("x1") * Rational(6));
  Polynomial x1 = gr->variable("x1"), x2 = gr->variable("x2");
  CHECK(sym.chern(4).poly() == x1 * x1 * x2 * Rational(18) + x2 * x2 * Rational(9));
  // Oracle by hand: 9ab(2a+b)(a+2b) = 9e2(2e1^2 + e2).
  Polynomial u = symmetric_power_rank2_universal(3);
  CHECK(u.coefficient({2, 1}) == 18);
  CHECK(u.coefficient({0, 2}) == 9);
  BundleClass flat(gr, gr->one(), 2);
  CHECK(sym3_chern(flat).total() == gr->one());
  CHECK_THROWS(sym3_chern(BundleClass(gr, gr->one(), 3)));
}

TEST_CASE("intersection numbers on F") {
  auto n = fano_intersection_numbers();
  CHECK(n.at({4, 0}) == 108);
  CHECK(n.at({2, 1}) == 45);
  CHECK(n.at({0, 2}) == 27);
  // Numerical shadows of the Chow relations.
  CHECK(12 * n.at({2, 1}) - 5 * n.at({4, 0}) == 0);
  CHECK(4 * n.at({0, 2}) - n.at({4, 0}) == 0);
}

TEST_CASE("tangent bundle of F") {
  auto f = fano_like();
  auto c = tangent_chern_F(f);
  REQUIRE(c.size() == 5);
  CHECK(c[1].is_zero());
  Polynomial g = f->variable("g"), cc = f->variable("c");
  CHECK(c[2].equals(CycleElement(f, g * g * Rational(5) - cc * Rational(8), 2)));
  // Euler characteristic of a hyper-Kaehler fourfold of K3^[2] type.
  CHECK(f->integrate(c[4].poly()) == 324);
}

TEST_CASE("Segre classes f_j") {
  auto f = fano_like();
  Polynomial g = f->variable("g"), c = f->variable("c");
  CHECK(segre_f(f, 1).equals(CycleElement::one(f)));
  CHECK(segre_f(f, 2).equals(CycleElement(f, g, 1)));
  CHECK(segre_f(f, 3).equals(CycleElement(f, g * g - c, 2)));
  CHECK(segre_f(f, 4).equals(CycleElement(f, g.pow(3) * Rational(1, 6), 3)));
  CHECK(segre_f(f, 5).is_zero());
  CHECK_THROWS(segre_f(f, 6));
  // lambda for I_*(g^2): (1/3) int g^2 f_3 = (108 - 45) / 3.
  auto g2 = CycleElement(f, g * g, 2);
  CHECK(f->integrate((g2 * segre_f(f, 3)).poly()) / 3 == 21);
}

TEST_CASE("Gamma_{h^i} formulas") {
  auto f = fano_like();
  auto sq = square_like();
  auto v = [&](const char* n) { return sq->variable(n); };
  Polynomial g1 = v("g1"), g2 = v("g2"), c1 = v("c1"), c2 = v("c2");
  Polynomial e1 = (g1.pow(3) + g1 * g1 * g2 * Rational(6) + g1 * g2 * g2 * Rational(6) + g2.pow(3) -
                   g1 * c2 * Rational(6) - g2 * c1 * Rational(6)) *
                  Rational(1, 18);
  Polynomial e2 = (g1.pow(3) * g2 + g1 * g1 * g2 * g2 * Rational(6) + g1 * g2.pow(3) - g1 * g1 * c2 * Rational(6) -
                   g2 * g2 * c1 * Rational(6) + c1 * c2 * Rational(6)) *
                  Rational(1, 18);
  Polynomial e3 = (g1.pow(3) * g2 * g2 + g1 * g1 * g2.pow(3) - g1.pow(3) * c2 - g2.pow(3) * c1) *
                  Rational(1, 18);
  Polynomial e4 = g1.pow(3) * g2.pow(3) * Rational(1, 108);
  CHECK(gamma_h(f, sq, 1).equals(CycleElement(sq, e1, 3)));
  CHECK(gamma_h(f, sq, 2).equals(CycleElement(sq, e2, 4)));
  CHECK(gamma_h(f, sq, 3).equals(CycleElement(sq, e3, 5)));
  CHECK(gamma_h(f, sq, 4).equals(CycleElement(sq, e4, 6)));
  CHECK(gamma_h(f, sq, 0).poly() == v("I"));
}

TEST_CASE("normal bundle of the incidence") {
  auto [c1, c2] = normal_bundle_chern();
  auto r = c1.ring();
  Polynomial h = r->variable("h"), g1 = r->variable("g1"), g2 = r->variable("g2");
  CHECK(c1.poly() == g1 + g2 - h);
  CHECK(c2.poly() == g1 * g1 + g1 * g2 + g2 * g2 - (g1 + g2) * h * Rational(3) + h * h * Rational(6));
  std::vector<Polynomial> zero(3, Polynomial::constant(3, 0));
  CHECK(c1.poly().substitute(zero).is_zero());
}
