#include "tautring/graded_ring.hpp"

#include <algorithm>
#include <set>

namespace tautring {

RingHandle RingPresentation::create(std::string name, std::vector<Generator> generators,
                                    std::vector<Relation> relations, int top_degree, Options options) {
  std::shared_ptr<RingPresentation> ring(new RingPresentation());
  ring->name_ = std::move(name);
  ring->generators_ = std::move(generators);
  int max_gen = 0;
  std::set<std::string> seen;
  for (const auto& g : ring->generators_) {
    if (g.degree <= 0) throw RingError("generator '" + g.name + "' must have positive degree");
    if (!seen.insert(g.name).second) throw RingError("duplicate generator '" + g.name + "'");
    ring->weights_.push_back(g.degree);
    ring->names_.push_back(g.name);
    max_gen = std::max(max_gen, g.degree);
  }
  if (top_degree < max_gen) throw RingError("top degree below a generator degree in " + ring->name_);
  ring->top_degree_ = top_degree;
  for (auto& r : relations) {
    if (r.poly.is_zero()) continue;
    if (r.poly.nvars() != ring->ngens()) throw RingError("relation '" + r.label + "' uses foreign generators");
    if (r.poly.degrees(ring->weights_).size() != 1)
      throw RingError("relation '" + r.label + "' is not homogeneous");
    ring->relations_.push_back(std::move(r));
  }
  ring->options_ = std::move(options);
  return ring;
}

std::optional<std::size_t> RingPresentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t RingPresentation::generator_index(std::string_view name) const {
  auto i = find_generator(name);
  if (!i) throw RingError("unknown generator '" + std::string(name) + "' in " + name_);
  return *i;
}

Polynomial RingPresentation::variable(std::string_view name) const {
  return Polynomial::variable(ngens(), generator_index(name));
}

const RingPresentation::DegreeData& RingPresentation::data(int d) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return *it->second;

  auto dd = std::make_unique<DegreeData>();
  dd->monomials = (d < 0) ? std::vector<Exponents>{} : enumerate_exponents(weights_, d);
  // Elimination order: non-preferred monomials first, preferred ones last.
  std::set<Exponents> preferred(options_.preferred_basis.begin(), options_.preferred_basis.end());
  for (const auto& m : dd->monomials)
    if (!preferred.count(m)) dd->by_column.push_back(m);
  for (const auto& m : dd->monomials)
    if (preferred.count(m)) dd->by_column.push_back(m);
  for (std::size_t i = 0; i < dd->by_column.size(); ++i) dd->column.emplace(dd->by_column[i], static_cast<Index>(i));
  dd->echelon = SparseEchelon(static_cast<Index>(dd->monomials.size()));

  if (d > top_degree_) {
    for (std::size_t i = 0; i < dd->by_column.size(); ++i)
      dd->echelon.insert(SparseEchelon::Row{{static_cast<Index>(i), Rational(1)}});
  } else if (d > 0) {
    for (const auto& r : relations_) {
      if (weighted_degree(r.poly.terms().begin()->first, weights_) != d) continue;
      dd->echelon.insert(to_row(*dd, r.poly));
    }
    for (std::size_t k = 0; k < ngens(); ++k) {
      int lower = d - weights_[k];
      if (lower <= 0) continue;
      const DegreeData& low = data(lower);
      for (const auto& [pivot, row] : low.echelon.rows()) {
        SparseEchelon::Row shifted;
        for (const auto& [c, v] : row) {
          Exponents e = low.by_column[static_cast<std::size_t>(c)];
          e[k] += 1;
          shifted.emplace(dd->column.at(e), v);
        }
        dd->echelon.insert(std::move(shifted));
      }
    }
  }
  auto [pos, ok] = cache_.emplace(d, std::move(dd));
  return *pos->second;
}

SparseEchelon::Row RingPresentation::to_row(const DegreeData& dd, const Polynomial& p) const {
  SparseEchelon::Row row;
  for (const auto& [e, c] : p.terms()) {
    auto it = dd.column.find(e);
    if (it == dd.column.end()) throw RingError("polynomial term outside the requested degree in " + name_);
    row.emplace(it->second, c);
  }
  return row;
}

const std::vector<Exponents>& RingPresentation::monomials(int d) const { return data(d).monomials; }

DenseMatrix RingPresentation::relation_span(int d) const {
  const DegreeData& dd = data(d);
  std::map<Exponents, Index> natural;
  for (std::size_t i = 0; i < dd.monomials.size(); ++i) natural.emplace(dd.monomials[i], static_cast<Index>(i));
  DenseMatrix m = DenseMatrix::Zero(dd.echelon.rank(), static_cast<Index>(dd.monomials.size()));
  Index r = 0;
  for (const auto& [pivot, row] : dd.echelon.rows()) {
    for (const auto& [c, v] : row) m(r, natural.at(dd.by_column[static_cast<std::size_t>(c)])) = v;
    ++r;
  }
  return m;
}

Index RingPresentation::relation_rank(int d) const { return data(d).echelon.rank(); }

int RingPresentation::graded_dimension(int d) const {
  if (d < 0 || d > top_degree_) return 0;
  const DegreeData& dd = data(d);
  return static_cast<int>(dd.monomials.size()) - static_cast<int>(dd.echelon.rank());
}

std::vector<int> RingPresentation::dimension_table() const {
  std::vector<int> out;
  for (int d = 0; d <= top_degree_; ++d) out.push_back(graded_dimension(d));
  return out;
}

std::vector<Exponents> RingPresentation::basis(int d) const {
  std::vector<Exponents> out;
  if (d < 0 || d > top_degree_) return out;
  const DegreeData& dd = data(d);
  std::set<Exponents> free;
  for (Index c : dd.echelon.non_pivots()) free.insert(dd.by_column[static_cast<std::size_t>(c)]);
  for (const auto& m : dd.monomials)
    if (free.count(m)) out.push_back(m);
  return out;
}

Polynomial RingPresentation::reduce(const Polynomial& p, int d) const {
  Polynomial out(ngens());
  if (d < 0 || d > top_degree_ || p.is_zero()) return out;
  const DegreeData& dd = data(d);
  auto row = dd.echelon.reduce(to_row(dd, p));
  for (const auto& [c, v] : row) out.add_term(dd.by_column[static_cast<std::size_t>(c)], v);
  return out;
}

Rational RingPresentation::integrate(const Polynomial& p) const {
  if (!options_.normalizer) throw RingError(name_ + " has no integral normalizer");
  if (graded_dimension(top_degree_) != 1) throw RingError(name_ + ": top-degree piece is not one-dimensional");
  const auto& [mono, value] = *options_.normalizer;
  Polynomial ref = reduce(Polynomial::monomial(mono), top_degree_);
  if (ref.is_zero()) throw RingError(name_ + ": normalizer monomial reduces to zero");
  if (p.is_zero()) return 0;
  auto degs = p.degrees(weights_);
  if (degs.size() != 1 || degs.front() != top_degree_) throw RingError("integrate: element is not of top degree");
  Polynomial red = reduce(p, top_degree_);
  const auto& [e, c] = *ref.terms().begin();
  return red.coefficient(e) / c * value;
}

CycleElement::CycleElement(RingHandle ring, Polynomial poly, int degree)
    : ring_(std::move(ring)), poly_(std::move(poly)), degree_(degree) {
  if (poly_.is_zero()) {
    poly_ = Polynomial(ring_->ngens());
    return;
  }
  if (poly_.nvars() != ring_->ngens()) throw RingError("element does not belong to " + ring_->name());
  for (const auto& [e, c] : poly_.terms())
    if (weighted_degree(e, ring_->weights()) != degree_)
      throw RingError("inhomogeneous element: expected degree " + std::to_string(degree_));
}

CycleElement::CycleElement(RingHandle ring, Polynomial poly) : ring_(std::move(ring)), poly_(std::move(poly)) {
  auto degs = poly_.degrees(ring_->weights());
  if (degs.size() != 1) throw RingError("cannot infer a single degree for this element");
  degree_ = degs.front();
  if (poly_.nvars() != ring_->ngens()) throw RingError("element does not belong to " + ring_->name());
}

CycleElement CycleElement::zero(RingHandle ring, int degree) {
  auto n = ring->ngens();
  return CycleElement(std::move(ring), Polynomial(n), degree);
}

CycleElement CycleElement::one(RingHandle ring) {
  auto p = ring->one();
  return CycleElement(std::move(ring), std::move(p), 0);
}

CycleElement CycleElement::generator(RingHandle ring, std::string_view name) {
  auto idx = ring->generator_index(name);
  int deg = ring->generators()[idx].degree;
  auto p = ring->variable(name);
  return CycleElement(std::move(ring), std::move(p), deg);
}

void CycleElement::check_same_ring(const CycleElement& o) const {
  if (ring_ != o.ring_) throw RingError("presentation mismatch: " + ring_->name() + " vs " + o.ring_->name());
}

CycleElement CycleElement::normal_form() const {
  return CycleElement(ring_, ring_->reduce(poly_, degree_), degree_);
}

CycleElement& CycleElement::operator+=(const CycleElement& o) {
  check_same_ring(o);
  if (o.degree_ != degree_ && !o.poly_.is_zero() && !poly_.is_zero())
    throw RingError("cannot add elements of degrees " + std::to_string(degree_) + " and " +
                    std::to_string(o.degree_));
  if (poly_.is_zero()) degree_ = o.degree_;
  poly_ += o.poly_;
  return *this;
}

CycleElement& CycleElement::operator-=(const CycleElement& o) { return *this += o.scaled(-1); }

CycleElement operator*(const CycleElement& a, const CycleElement& b) {
  a.check_same_ring(b);
  int d = a.degree_ + b.degree_;
  if (d > a.ring_->top_degree()) return CycleElement::zero(a.ring_, d);
  return CycleElement(a.ring_, a.poly_ * b.poly_, d);
}

CycleElement CycleElement::scaled(const Rational& s) const { return CycleElement(ring_, poly_ * s, degree_); }

CycleElement CycleElement::pow(int k) const {
  CycleElement out = one(ring_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

bool CycleElement::equals(const CycleElement& o) const {
  check_same_ring(o);
  if (poly_.is_zero() && o.poly_.is_zero()) return true;
  if (degree_ != o.degree_) return false;
  return (*this - o).is_zero();
}

CycleElement multiply(const CycleElement& a, const CycleElement& b) { return a * b; }
CycleElement add(const CycleElement& a, const CycleElement& b) { return a + b; }
CycleElement scale(const Rational& s, const CycleElement& a) { return a.scaled(s); }

}  // namespace tautring
