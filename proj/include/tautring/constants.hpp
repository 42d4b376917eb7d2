#pragma once

#include "tautring/rational.hpp"

#include <vector>

namespace tautring {

/// Numeric inputs of the geometric models. Everything else is derived.
struct ModelConstants {
  Rational fujiki_constant = 3;       // F: int a^4 = c * q(a)^2
  Rational q_g = 6;                   // Beauville-Bogomolov square of the Pluecker class
  int b2_F = 23;                      // rank of H^2(F)
  int transcendental_rank_K3 = 21;    // very general polarized K3: b2 = 22 = 21 + 1
  std::vector<int> polarization_degrees{4, 2};  // (h^2) on the K3, d = 2g - 2
  Rational cubic_h4 = 3;              // int_X h^4 on the cubic fourfold
  int k3_max_power = 4;
};

}  // namespace tautring
