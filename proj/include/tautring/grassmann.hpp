#pragma once

#include "tautring/graded_ring.hpp"

#include <map>
#include <utility>

namespace tautring {

/// Cohomology ring of Gr(2,6): x1 = c1(S^v), x2 = c2(S^v), with the Segre
/// relations s5 = s6 = 0 where s_k = x1 s_{k-1} - x2 s_{k-2}. The integral is
/// normalized by int x2^4 = 1.
RingHandle grassmann_ring();

/// Integral over Gr(2,6) of a degree-8 element.
Rational integrate_G(const CycleElement& x);

/// Total Chern class of a vector bundle, held as a mixed-degree polynomial in
/// the generators of a host ring and truncated at the host's top degree.
class BundleClass {
 public:
  BundleClass(RingHandle host, Polynomial total, int rank);

  const RingHandle& host() const { return host_; }
  const Polynomial& total() const { return total_; }
  int rank() const { return rank_; }

  CycleElement chern(int k) const;
  BundleClass dual() const;

  /// ch = rank + sum_k p_k / k!, truncated at the host top degree.
  Polynomial character() const;
  static BundleClass from_character(RingHandle host, const Polynomial& ch);

  friend BundleClass operator+(const BundleClass& a, const BundleClass& b);  // direct sum
  friend BundleClass tensor(const BundleClass& a, const BundleClass& b);

 private:
  RingHandle host_;
  Polynomial total_;
  int rank_;
};

/// Trivial bundle of the given rank.
BundleClass trivial_bundle(RingHandle host, int rank);

/// Chern classes of Sym^k of a rank-2 bundle as polynomials in (e1, e2) = (c1, c2),
/// obtained from the splitting roots (k-i) a + i b.
Polynomial symmetric_power_rank2_universal(int k);

/// Chern class of the symmetric cube of a rank-2 bundle.
BundleClass sym3_chern(const BundleClass& bundle);

/// S^v on Gr(2,6).
BundleClass dual_tautological_bundle();

/// int_F g^a c^b = int_G x1^a x2^b c4(Sym^3 S^v), keyed by (a, b).
std::map<std::pair<int, int>, Rational> fano_intersection_numbers();

/// Chern classes of T_F from ch(T_F) = ch(S^v)(6 - ch(S)) - ch(Sym^3 S^v),
/// returned in `fano` (generators g, c). Index k holds c_k, k = 0..4.
std::vector<CycleElement> tangent_chern_F(const RingHandle& fano);

/// f_j = p_* q^*(h^j) = s_{j-1}(S|_F), reduced in `fano`.
CycleElement segre_f(const RingHandle& fano, int j);

/// Pullback of an element of R*(F) along the k-th projection (k = 1, 2) into a
/// ring carrying generators g1, g2, c1, c2.
CycleElement pullback_factor(const CycleElement& x, const RingHandle& square, int k);

/// Gamma_{h^i} = (1/cubic_degree) sum_{a+b=i+4, 1<=a,b<=4} f_a x f_b for i >= 1;
/// i = 0 returns the incidence generator I.
CycleElement gamma_h(const RingHandle& fano, const RingHandle& square, int i,
                     const Rational& cubic_degree = 3);

/// Truncated ring on h = q0^*h, g1|, g2| with h^5 = 0.
RingHandle incidence_symbol_ring();

/// (c1(N), c2(N)) of the normal bundle of I0, from
/// (1+h)^6 / ((1+3h)(1+2h-g1)(1+2h-g2)).
std::pair<CycleElement, CycleElement> normal_bundle_chern();

}  // namespace tautring
