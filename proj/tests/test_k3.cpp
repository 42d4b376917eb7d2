#include "doctest.h"

#include "tautring/k3.hpp"

#include <algorithm>
#include <numeric>

using namespace tautring;

TEST_CASE("small K3 powers") {
  auto s1 = build_k3_power(1, 4);
  CHECK(s1->dimension_table() == std::vector<int>{1, 1, 1});
  CHECK(s1->basis(2) == std::vector<Exponents>{{0, 1}});
  auto h = CycleElement::generator(s1, "h1");
  CHECK(s1->integrate((h * h).poly()) == 4);

  auto s2 = build_k3_power(2, 4);
  CHECK(s2->dimension_table() == std::vector<int>{1, 2, 4, 2, 1});
  auto D = CycleElement::generator(s2, "D12");
  auto h1 = CycleElement::generator(s2, "h1"), h2 = CycleElement::generator(s2, "h2");
  CHECK(s2->integrate((D * h1 * h2).normal_form().poly()) == 4);
  CHECK(s2->integrate((D * D).normal_form().poly()) == 24);

  auto s3 = build_k3_power(3, 4);
  CHECK(s3->graded_dimension(2) == 9);
  CHECK(s3->graded_dimension(6) == 1);
}

TEST_CASE("cohomology model of S x S") {
  auto model = ContractionModel::k3_power(2, 4);
  CHECK(model->gram_rank(2) == 4);
  auto ring = build_k3_power(2, 4);
  auto cl = k3_cycle_class(ring, model);
  auto D = cl.apply(CycleElement::generator(ring, "D12"));
  CHECK(D.equals(diagonal_class(model)));
  // Euler number of the K3 surface.
  CHECK((D * D).integral() == 24);
}

TEST_CASE("injectivity on the tautological ring") {
  for (int d : {2, 4})
    for (int r = 1; r <= 4; ++r) {
      auto e = injectivity_check(r, d);
      INFO(e.id << ": " << e.residual << " " << e.detail);
      CHECK(e.status == Status::Pass);
    }
}

TEST_CASE("small diagonal") {
  for (int d : {2, 4}) {
    auto e = verify_small_diagonal(d);
    INFO(e.residual << " " << e.detail);
    CHECK(e.status == Status::Pass);
  }
  // Perturbing the relation's coefficient is caught by cohomology.
  auto ring = build_k3_power(3, 4);
  auto model = ContractionModel::k3_power(3, 4);
  auto cl = k3_cycle_class(ring, model);
  auto D12 = CycleElement::generator(ring, "D12"), D23 = CycleElement::generator(ring, "D23");
  auto o1 = CycleElement::generator(ring, "o1"), o3 = CycleElement::generator(ring, "o3");
  CHECK_FALSE(cl.apply(D12 * D23).equals(cl.apply(D12 * o3 + D12 * o1)));
}

TEST_CASE("symmetric group equivariance") {
  auto ring = build_k3_power(3, 4);
  std::vector<int> sigma{0, 1, 2};
  do {
    for (const auto& rel : ring->relations()) {
      CycleElement x(ring, rel.poly);
      INFO(rel.label);
      CHECK(permute_factors(x, sigma).is_zero());
    }
    for (int k = 0; k <= 6; ++k)
      for (const auto& m : ring->monomials(k)) {
        CycleElement x(ring, Polynomial::monomial(m), k);
        CHECK(permute_factors(x.normal_form(), sigma).equals(permute_factors(x, sigma)));
      }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("top degree is spanned by o1...or") {
  auto ring = build_k3_power(3, 2);
  CHECK(ring->graded_dimension(6) == 1);
  for (const auto& m : ring->monomials(6)) {
    CycleElement x(ring, Polynomial::monomial(m), 6);
    CHECK(x.normal_form().poly().terms().size() <= 1);
  }
}

TEST_CASE("Franchetta image generators") {
  auto r1 = franchetta_image_basis(1);
  CHECK(r1.generators == std::vector<std::string>{"h1"});
  CHECK(r1.complete());
  auto r2 = franchetta_image_basis(2);
  CHECK(r2.generators == std::vector<std::string>{"h1", "h2", "D12"});
  CHECK(r2.complete());
  auto r3 = franchetta_image_basis(3, 2);
  CHECK(r3.generators.size() == 6);
  CHECK(r3.complete());
}

TEST_CASE("partial pushforward") {
  auto s3 = build_k3_power(3, 4), s2 = build_k3_power(2, 4), s1 = build_k3_power(1, 4);
  auto D12 = CycleElement::generator(s3, "D12"), D13 = CycleElement::generator(s3, "D13");
  auto o3 = CycleElement::generator(s3, "o3");
  // Forgetting the third factor: D12 . o3 -> D12, D13 D12 (small diagonal) -> D12.
  auto a = partial_pushforward(D12 * o3, 2, s2);
  REQUIRE(a);
  CHECK(a->equals(CycleElement::generator(s2, "D12")));
  auto b = partial_pushforward(D12 * D13, 2, s2);
  REQUIRE(b);
  CHECK(b->equals(CycleElement::generator(s2, "D12")));
  // Every basis monomial of R*(S^2) pushes into R*(S).
  for (int k = 2; k <= 4; ++k)
    for (const auto& m : s2->basis(k)) {
      CycleElement x(s2, Polynomial::monomial(m), k);
      CHECK(partial_pushforward(x, 0, s1).has_value());
    }
  // D . h1 h2 forgets to h^2 = 4 o on S.
  auto h1 = CycleElement::generator(s2, "h1"), h2 = CycleElement::generator(s2, "h2");
  auto c = partial_pushforward(CycleElement::generator(s2, "D12") * h1 * h2, 1, s1);
  REQUIRE(c);
  CHECK(c->equals(CycleElement::generator(s1, "o1").scaled(4)));
}

TEST_CASE("Hilbert scheme dimension bookkeeping") {
  auto two = hilbert_dims(2, 4);
  CHECK(two.front() == 1);
  CHECK(two[1] == 2);
  CHECK(hilbert_dims(3, 4).front() == 1);
  CHECK(hilbert_dims(3, 4, HilbertConvention::Symmetric).front() == 1);
  // Invariant dimensions of S^2 against a hand count.
  auto s2 = build_k3_power(2, 4);
  CHECK(invariant_dimension(s2, 2, 1) == 1);  // h1 + h2
  CHECK(invariant_dimension(s2, 2, 2) == 3);  // o1 + o2, h1 h2, D
  CHECK(invariant_dimension(s2, 2, 4) == 1);
  // Total is symmetric (Poincare duality of each summand).
  auto three = hilbert_dims(3, 4);
  CHECK(three.size() == 7);
  CHECK(std::equal(three.begin(), three.end(), three.rbegin()));
  CHECK(parse_hilbert_convention("symmetric") == HilbertConvention::Symmetric);
  CHECK_THROWS(parse_hilbert_convention("nakajima"));
}
