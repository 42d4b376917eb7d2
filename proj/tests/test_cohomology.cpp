#include "doctest.h"

#include "tautring/cohomology.hpp"

using namespace tautring;

namespace {

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

Word word(std::initializer_list<Letter> ls) {
  Word w(ls);
  std::sort(w.begin(), w.end());
  return w;
}

constexpr Letter G0{LetterKind::Polar, 0, 0};
constexpr Letter G1{LetterKind::Polar, 1, 0};
constexpr Letter B0{LetterKind::FormDual, 0, 0};
constexpr Letter K01{LetterKind::Kunneth, 0, 1};

}  // namespace

TEST_CASE("Wick integrals on F") {
  auto f = ContractionModel::fano_power(1);
  CHECK(f->wick_integral(word({G0, G0, G0, G0})) == 108);
  CHECK(f->wick_integral(word({B0, B0})) == 575);
  CHECK(f->wick_integral(word({B0, G0, G0})) == 150);
  CHECK_THROWS(f->wick_integral(word({G0, G0})));
  // Polarized Fujiki: int a^4 = 3 q(a)^2 for the polar class.
  CHECK(f->wick_integral(word({G0, G0, G0, G0})) == 3 * 36);
}

TEST_CASE("Gram ranks") {
  auto f = ContractionModel::fano_power(1);
  CHECK(f->gram_rank(3) == 1);
  CHECK(f->gram_rank(2) == 2);
  auto ff = ContractionModel::fano_power(2);
  std::vector<int> ranks;
  for (int d = 0; d <= 8; ++d) ranks.push_back(ff->gram_rank(d));
  CHECK(ranks == std::vector<int>{1, 2, 6, 8, 12, 8, 6, 2, 1});
  CHECK(rank(ff->gram(4)) == 12);
  auto ss = ContractionModel::k3_power(2, 4);
  CHECK(ss->gram_rank(2) == 4);
  CHECK(ss->gram_rank(1) == 2);
  CHECK(ss->gram_rank(3) == 2);
}

TEST_CASE("diagonal classes") {
  auto ss = ContractionModel::k3_power(2, 4);
  auto delta = diagonal_class(ss);
  auto h1 = CohomClass::polar(ss, 0), h2 = CohomClass::polar(ss, 1);
  auto o1 = make_rational(1, 4) * (h1 * h1), o2 = make_rational(1, 4) * (h2 * h2);
  CHECK(delta.equals(o1 + o2 + CohomClass::kunneth(ss, 0, 1)));
  CHECK((delta * h1 * h2).integral() == 4);

  auto ff = ContractionModel::fano_power(2);
  auto d = diagonal_class(ff);
  auto g1 = CohomClass::polar(ff, 0), g2 = CohomClass::polar(ff, 1);
  CHECK((d * g1 * g1 * g2 * g2).integral() == 108);
  // Swap symmetry.
  CHECK(pull(d, ff, {1, 0}).equals(d));
  // Sum of the five projectors of the Chow-Kuenneth decomposition.
  auto b1 = CohomClass::form_dual(ff, 0), b2 = CohomClass::form_dual(ff, 1);
  auto B = CohomClass::kunneth(ff, 0, 1);
  auto sum = make_rational(1, 575) * (b1 * b1) + make_rational(1, 25) * (B * b1) +
             make_rational(1, 2) * (B * B - make_rational(1, 25) * (b1 * b2)) + make_rational(1, 25) * (B * b2) +
             make_rational(1, 575) * (b2 * b2);
  CHECK(d.equals(sum));
}

TEST_CASE("cycle class on F") {
  auto f = fano_like();
  auto model = ContractionModel::fano_power(1);
  auto cl = fano_cycle_class(f, model);
  auto g = CycleElement::generator(f, "g");
  auto c = CycleElement::generator(f, "c");
  CHECK(cl.apply(c * g * g).integral() == 45);
  CHECK(cl.apply(c * c).integral() == 27);
  CHECK(cl.apply(Rational(12) * (g * c) - Rational(5) * g.pow(3)).is_zero());
  CHECK(cl.apply(Rational(4) * (c * c) - g.pow(4)).is_zero());
  auto l = make_rational(25, 6) * (g * g) - make_rational(20, 3) * c;
  CHECK(cl.apply(l).equals(CohomClass::form_dual(model, 0)));
  // Homomorphism on generator pairs.
  CHECK(cl.apply(g * c).equals(cl.apply(g) * cl.apply(c)));
}

TEST_CASE("derive_relation") {
  auto f = ContractionModel::fano_power(1);
  auto g = CohomClass::polar(f, 0);
  auto b = CohomClass::form_dual(f, 0);
  // g*b is proportional to g^3 in cohomology: pairing 150 vs 108 with g.
  auto sol = derive_relation(g * b, {g.pow(3)});
  REQUIRE(sol);
  CHECK(sol->coefficients(0) == make_rational(150, 108));
  CHECK(sol->kernel.cols() == 0);
  // Non-unique families report a kernel.
  auto two = derive_relation(g * b, {g.pow(3), g.pow(3).scaled(2)});
  REQUIRE(two);
  CHECK(two->kernel.cols() == 1);
  // Absence is a normal return.
  auto ss = ContractionModel::k3_power(2, 4);
  auto none = derive_relation(CohomClass::kunneth(ss, 0, 1), {CohomClass::polar(ss, 0) * CohomClass::polar(ss, 1)});
  CHECK_FALSE(none);
}

TEST_CASE("fujiki consistency and its sensitivity") {
  ModelConstants base;
  CHECK(fujiki_consistency(base).status == Status::Pass);
  ModelConstants q5 = base;
  q5.q_g = 5;
  CHECK(fujiki_consistency(q5).status == Status::Fail);
  ModelConstants r22 = base;
  r22.b2_F = 22;
  CHECK(fujiki_consistency(r22).status == Status::Fail);
  ModelConstants c2 = base;
  c2.fujiki_constant = 2;
  CHECK(fujiki_consistency(c2).status == Status::Fail);
}

TEST_CASE("words and rendering") {
  auto ff = ContractionModel::fano_power(2);
  CHECK(ff->render(word({G0, G0, K01, G1})) == "g1^2*g2*B");
  auto fff = ContractionModel::fano_power(3);
  CHECK(fff->letter_name({LetterKind::Kunneth, 1, 2}) == "B23");
  for (int d = 0; d <= 8; ++d)
    for (const auto& w : ff->words(d)) {
      CHECK(ContractionModel::degree(w) == d);
      CHECK(ff->fits(w));
    }
  auto x = CohomClass::polar(ff, 0) - make_rational(1, 2) * CohomClass::polar(ff, 1);
  CHECK(x.render() == "g1 - 1/2*g2");
}
