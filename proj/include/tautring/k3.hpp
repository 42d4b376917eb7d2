#pragma once

#include "tautring/cohomology.hpp"
#include "tautring/constants.hpp"
#include "tautring/graded_ring.hpp"
#include "tautring/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tautring {

/// R*(S^r) for a K3 surface with (h^2) = d, on h_i (1), o_i (2), D_ij (2):
///   h_i^2 = d o_i, h_i o_i = 0, o_i^2 = 0,
///   D_ij h_i = D_ij h_j = h_i o_j + h_j o_i, D_ij o_i = o_i o_j, D_ij^2 = 24 o_i o_j,
///   D_ij D_jk = D_ij o_k + D_ik o_j + D_jk o_i - o_i o_j - o_i o_k - o_j o_k,
/// normalized by int o_1 ... o_r = 1.
RingHandle build_k3_power(int r, int d);

/// Factor permutation sigma (0-based, sigma[i] = image of factor i) as a
/// generator permutation of build_k3_power(r, d).
std::vector<std::size_t> k3_factor_permutation(const RingPresentation& ring, const std::vector<int>& sigma);
CycleElement permute_factors(const CycleElement& x, const std::vector<int>& sigma);

/// The small diagonal D12 D13 of S^3 and its checks.
CycleElement small_diagonal(const RingHandle& ring);
ReportEntry verify_small_diagonal(int d = 4, const ModelConstants& constants = {});

/// Generators of the image of the universal family: h_i and the big diagonals
/// (o_i = h_i^2 / d), with a degree-wise spanning certificate.
struct FranchettaImage {
  std::vector<std::string> generators;
  std::vector<bool> spans;  // per degree
  bool complete() const;
};
FranchettaImage franchetta_image_basis(int r, int d = 4);

/// graded_dimension vs gram_rank of the S^r model in every degree.
ReportEntry injectivity_check(int r, int d, const ModelConstants& constants = {});

/// pr_* forgetting factor `factor` (0-based): computed in cohomology and lifted
/// to R*(S^{r-1}); absent if the pushforward leaves the tautological image.
std::optional<CycleElement> partial_pushforward(const CycleElement& x, int factor, const RingHandle& target,
                                                const ModelConstants& constants = {});

/// Dimension of the S_r-invariant part of R^k(S^r).
int invariant_dimension(const RingHandle& ring, int r, int k);

/// Summands of the tautological ring of Hilb^m(S): R*(S^power), optionally
/// S_power-invariant, shifted by `shift`.
struct HilbertSummand {
  int power;
  bool symmetric;
  int shift;
};
enum class HilbertConvention { Partition, Symmetric };
HilbertConvention parse_hilbert_convention(const std::string& name);
std::string to_string(HilbertConvention c);
/// m = 2: S^2 symmetric + S[1]. m = 3, Partition: S^3 symmetric + S^2[1] + S[2]
/// (one summand per partition of 3); Symmetric: the S^2 summand also symmetrized.
std::vector<HilbertSummand> hilbert_summands(int m, HilbertConvention c = HilbertConvention::Partition);
std::vector<int> hilbert_dims(int m, int d, HilbertConvention c = HilbertConvention::Partition);

}  // namespace tautring
