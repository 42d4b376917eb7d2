#include "tautring/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tautring {

int weighted_degree(const Exponents& e, const std::vector<int>& weights) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weights[i];
  return d;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  if (o.nvars_ != nvars_ && !o.terms_.empty()) throw std::invalid_argument("Polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  if (o.nvars_ != nvars_ && !o.terms_.empty()) throw std::invalid_argument("Polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  Polynomial out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::homogeneous_part(const std::vector<int>& weights, int degree) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_)
    if (weighted_degree(e, weights) == degree) out.terms_.emplace(e, c);
  return out;
}

Polynomial Polynomial::truncated(const std::vector<int>& weights, int max_degree) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_)
    if (weighted_degree(e, weights) <= max_degree) out.terms_.emplace(e, c);
  return out;
}

std::vector<int> Polynomial::degrees(const std::vector<int>& weights) const {
  std::vector<int> out;
  for (const auto& [e, c] : terms_) out.push_back(weighted_degree(e, weights));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("Polynomial::substitute: image count mismatch");
  if (terms_.empty()) return Polynomial(images.empty() ? 0 : images.front().nvars());
  std::size_t target = images.empty() ? 0 : images.front().nvars();
  // Cache powers of each image.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
      term = term * cache[static_cast<std::size_t>(e[i])];
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::permuted(const std::vector<std::size_t>& perm) const {
  Polynomial out(nvars_);
  Exponents f(nvars_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) f[perm[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

std::string render_monomial(const Exponents& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::render(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  // Highest monomials first so renderings read like hand-written formulas.
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono = render_monomial(e, names);
    bool unit = (mono == "1");
    if (unit) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

Polynomial series_multiply(const Polynomial& a, const Polynomial& b, const std::vector<int>& weights,
                           int max_degree) {
  return (a * b).truncated(weights, max_degree);
}

Polynomial series_inverse(const Polynomial& p, const std::vector<int>& weights, int max_degree) {
  Exponents zero(p.nvars(), 0);
  Rational c0 = p.coefficient(zero);
  if (c0 == 0) throw std::domain_error("series_inverse: constant term is zero");
  // p = c0 (1 - u)  =>  1/p = (1/c0) sum u^k, u has no constant term.
  Rational inv0(1);
  inv0 /= c0;
  Polynomial u = Polynomial::constant(p.nvars(), 1) - p * inv0;
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial power = Polynomial::constant(p.nvars(), 1);
  for (int k = 1; k <= max_degree; ++k) {
    power = series_multiply(power, u, weights, max_degree);
    if (power.is_zero()) break;
    result += power;
  }
  return result * inv0;
}

std::vector<Exponents> enumerate_exponents(const std::vector<int>& weights, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents cur(weights.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (i == weights.size()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (int k = rem / weights[i]; k >= 0; --k) {
      cur[i] = k;
      rec(i + 1, rem - k * weights[i]);
    }
    cur[i] = 0;
  };
  rec(0, d);
  return out;
}

}  // namespace tautring
