#include "tautring/rational.hpp"

#include <stdexcept>

namespace tautring {

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '/' && !seen_slash) {
      seen_slash = true;
    } else if (ch >= '0' && ch <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  r.set_str(s, 10);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace tautring
