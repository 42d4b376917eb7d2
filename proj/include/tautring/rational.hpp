#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace tautring {

/// Arbitrary-precision rational in lowest terms (GMP keeps it canonical).
using Rational = mpq_class;

/// Renders as "p" or "p/q".
std::string to_string(const Rational& x);

/// Accepts "p", "-p" or "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace tautring

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
