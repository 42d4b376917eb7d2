#include "tautring/cohomology.hpp"

#include "tautring/grassmann.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tautring {

namespace {

Rational double_factorial_odd(int n) {  // (2n-1)!!
  Rational r = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
  return r;
}

// All perfect matchings of `slots`, each as a flat list of pairs.
void matchings(std::vector<int> slots, std::vector<std::pair<int, int>>& cur,
               std::vector<std::vector<std::pair<int, int>>>& out) {
  if (slots.empty()) {
    out.push_back(cur);
    return;
  }
  int a = slots.front();
  for (std::size_t i = 1; i < slots.size(); ++i) {
    std::vector<int> rest;
    for (std::size_t j = 1; j < slots.size(); ++j)
      if (j != i) rest.push_back(slots[j]);
    cur.emplace_back(a, slots[i]);
    matchings(rest, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ModelHandle ContractionModel::create(ModelParams params) {
  if (params.nfactors < 1 || params.factor_dim < 2 || params.factor_dim % 2)
    throw std::invalid_argument("contraction model needs an even factor dimension");
  return ModelHandle(new ContractionModel(std::move(params)));
}

ContractionModel::ContractionModel(ModelParams p) : params_(std::move(p)) {
  for (int i = 0; i < params_.nfactors; ++i) {
    auto f = static_cast<std::uint8_t>(i);
    alphabet_.push_back({LetterKind::Polar, f, 0});
    if (params_.form_dual_letters) alphabet_.push_back({LetterKind::FormDual, f, 0});
    for (int j = i + 1; j < params_.nfactors; ++j)
      alphabet_.push_back({LetterKind::Kunneth, f, static_cast<std::uint8_t>(j)});
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  factor_weight_ = params_.fujiki / double_factorial_odd(params_.factor_dim / 2);
}

ModelHandle ContractionModel::with_factors(int k) const {
  std::lock_guard lock(mutex_);
  auto it = siblings_.find(k);
  if (it != siblings_.end()) return it->second;
  ModelParams p = params_;
  p.nfactors = k;
  p.label += " [" + std::to_string(k) + " factors]";
  return siblings_[k] = create(p);
}

ModelHandle ContractionModel::fano_power(int k, const ModelConstants& c) {
  ModelParams p;
  p.label = k == 1 ? "F" : "F^" + std::to_string(k);
  p.nfactors = k;
  p.factor_dim = 4;
  p.q_polar = c.q_g;
  p.trace = c.b2_F;
  p.fujiki = c.fujiki_constant;
  p.form_dual_letters = true;
  p.polar_name = "g";
  return create(p);
}

ModelHandle ContractionModel::k3_power(int r, int d, const ModelConstants& c) {
  ModelParams p;
  p.label = "S^" + std::to_string(r) + " (d=" + std::to_string(d) + ")";
  p.nfactors = r;
  p.factor_dim = 2;
  p.q_polar = d;
  p.trace = c.transcendental_rank_K3 + 1;
  p.fujiki = 1;
  p.form_dual_letters = false;
  p.polar_name = "h";
  return create(p);
}

std::vector<int> ContractionModel::slot_profile(const Word& w) const {
  std::vector<int> s(static_cast<std::size_t>(params_.nfactors), 0);
  for (const auto& l : w) {
    switch (l.kind) {
      case LetterKind::Polar: s[l.f1] += 1; break;
      case LetterKind::FormDual: s[l.f1] += 2; break;
      case LetterKind::Kunneth:
        s[l.f1] += 1;
        s[l.f2] += 1;
        break;
    }
  }
  return s;
}

bool ContractionModel::fits(const Word& w) const {
  for (int s : slot_profile(w))
    if (s > params_.factor_dim) return false;
  return true;
}

int ContractionModel::degree(const Word& w) {
  int d = 0;
  for (const auto& l : w) d += l.slots();
  return d;
}

Rational ContractionModel::wick_integral(const Word& w) const {
  if (degree(w) != top_degree() || !fits(w))
    throw std::invalid_argument("wick_integral: word " + render(w) + " is not of top degree");
  {
    std::lock_guard lock(mutex_);
    auto it = integrals_.find(w);
    if (it != integrals_.end()) return it->second;
  }
  Rational v = evaluate(w);
  std::lock_guard lock(mutex_);
  integrals_.emplace(w, v);
  return v;
}

Rational ContractionModel::evaluate(const Word& w) const {
  // Lay out slots: internal[s] is the joined partner (-1 for a polar slot).
  std::vector<int> internal;
  std::vector<std::vector<int>> per_factor(static_cast<std::size_t>(params_.nfactors));
  auto new_slot = [&](int factor) {
    int s = static_cast<int>(internal.size());
    internal.push_back(-1);
    per_factor[static_cast<std::size_t>(factor)].push_back(s);
    return s;
  };
  for (const auto& l : w) {
    if (l.kind == LetterKind::Polar) {
      new_slot(l.f1);
    } else {
      int a = new_slot(l.f1);
      int b = new_slot(l.kind == LetterKind::FormDual ? l.f1 : l.f2);
      internal[a] = b;
      internal[b] = a;
    }
  }
  std::vector<std::vector<std::vector<std::pair<int, int>>>> options;
  for (const auto& slots : per_factor) {
    std::vector<std::vector<std::pair<int, int>>> m;
    std::vector<std::pair<int, int>> cur;
    matchings(slots, cur, m);
    options.push_back(std::move(m));
  }

  const std::size_t n = internal.size();
  std::vector<int> match(n, -1);
  std::vector<char> seen(n);
  // Histogram over (number of paths, number of cycles).
  std::map<std::pair<int, int>, long> hist;
  std::vector<std::size_t> choice(options.size(), 0);
  while (true) {
    for (std::size_t f = 0; f < options.size(); ++f)
      for (auto [a, b] : options[f][choice[f]]) {
        match[a] = b;
        match[b] = a;
      }
    std::fill(seen.begin(), seen.end(), 0);
    int paths = 0, cycles = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || internal[s] != -1) continue;
      int cur = static_cast<int>(s);
      seen[cur] = 1;
      int nxt = match[cur];
      while (true) {
        seen[nxt] = 1;
        if (internal[nxt] == -1) break;
        cur = internal[nxt];
        seen[cur] = 1;
        nxt = match[cur];
      }
      ++paths;
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      int cur = static_cast<int>(s);
      while (!seen[cur]) {
        seen[cur] = 1;
        int o = match[cur];
        seen[o] = 1;
        cur = internal[o];
      }
      ++cycles;
    }
    ++hist[{paths, cycles}];

    std::size_t f = 0;
    while (f < choice.size() && ++choice[f] == options[f].size()) choice[f++] = 0;
    if (f == choice.size()) break;
  }

  Rational total = 0;
  for (const auto& [pc, count] : hist) {
    Rational term = count;
    for (int i = 0; i < pc.first; ++i) term *= params_.q_polar;
    for (int i = 0; i < pc.second; ++i) term *= params_.trace;
    total += term;
  }
  for (int f = 0; f < params_.nfactors; ++f) total *= factor_weight_;
  return total;
}

const std::vector<Word>& ContractionModel::words(int d) const {
  std::lock_guard lock(mutex_);
  auto it = words_.find(d);
  if (it != words_.end()) return it->second;
  std::vector<Word> out;
  if (d >= 0 && d <= top_degree()) {
    Word cur;
    std::vector<int> profile(static_cast<std::size_t>(params_.nfactors), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      if (i == alphabet_.size()) return;
      rec(i + 1, left);  // skip this letter
      const Letter& l = alphabet_[i];
      int pushed = 0;
      while (true) {
        int need = l.slots();
        if (need > left) break;
        if (l.kind == LetterKind::Kunneth) {
          if (profile[l.f1] + 1 > params_.factor_dim || profile[l.f2] + 1 > params_.factor_dim) break;
          profile[l.f1] += 1;
          profile[l.f2] += 1;
        } else {
          if (profile[l.f1] + need > params_.factor_dim) break;
          profile[l.f1] += need;
        }
        cur.push_back(l);
        ++pushed;
        left -= need;
        rec(i + 1, left);
      }
      for (int k = 0; k < pushed; ++k) {
        if (l.kind == LetterKind::Kunneth) {
          profile[l.f1] -= 1;
          profile[l.f2] -= 1;
        } else {
          profile[l.f1] -= l.slots();
        }
        cur.pop_back();
      }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
  }
  return words_.emplace(d, std::move(out)).first->second;
}

DenseMatrix ContractionModel::gram(int d) const {
  const auto& rows = words(d);
  const auto& cols = words(top_degree() - d);
  DenseMatrix m = DenseMatrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Word w = multiply_words(rows[i], cols[j]);
      if (fits(w)) m(static_cast<Index>(i), static_cast<Index>(j)) = wick_integral(w);
    }
  return m;
}

int ContractionModel::gram_rank(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return static_cast<int>(rank(gram(d)));
}

std::string ContractionModel::letter_name(const Letter& l) const {
  auto idx = [](int f) { return std::to_string(f + 1); };
  std::string suffix = params_.nfactors > 1 ? idx(l.f1) : "";
  switch (l.kind) {
    case LetterKind::Polar: return params_.polar_name + suffix;
    case LetterKind::FormDual: return "b" + suffix;
    case LetterKind::Kunneth: return params_.nfactors == 2 ? "B" : "B" + idx(l.f1) + idx(l.f2);
  }
  return "?";
}

std::string ContractionModel::render(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += letter_name(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Word multiply_words(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(w));
  return w;
}

CohomClass CohomClass::one(ModelHandle model) { return word(std::move(model), Word{}); }

CohomClass CohomClass::letter(ModelHandle model, Letter l) { return word(std::move(model), Word{l}); }

CohomClass CohomClass::word(ModelHandle model, const Word& w, const Rational& c) {
  CohomClass x(model, ContractionModel::degree(w));
  x.add_term(w, c);
  return x;
}

CohomClass CohomClass::polar(ModelHandle model, int factor) {
  return letter(std::move(model), {LetterKind::Polar, static_cast<std::uint8_t>(factor), 0});
}

CohomClass CohomClass::form_dual(ModelHandle model, int factor) {
  return letter(std::move(model), {LetterKind::FormDual, static_cast<std::uint8_t>(factor), 0});
}

CohomClass CohomClass::kunneth(ModelHandle model, int f1, int f2) {
  if (f1 > f2) std::swap(f1, f2);
  return letter(std::move(model),
                {LetterKind::Kunneth, static_cast<std::uint8_t>(f1), static_cast<std::uint8_t>(f2)});
}

void CohomClass::add_term(const Word& w, const Rational& c) {
  if (c == 0 || !model_->fits(w)) return;
  if (ContractionModel::degree(w) != degree_) throw std::invalid_argument("inhomogeneous cohomology class");
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CohomClass& CohomClass::operator+=(const CohomClass& o) {
  if (model_ != o.model_) throw std::invalid_argument("cohomology classes from different models");
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw std::invalid_argument("adding cohomology classes of different degrees");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

CohomClass operator*(const CohomClass& a, const CohomClass& b) {
  if (a.model_ != b.model_) throw std::invalid_argument("cohomology classes from different models");
  CohomClass out(a.model_, a.degree_ + b.degree_);
  if (out.degree_ > a.model_->top_degree()) return out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add_term(multiply_words(wa, wb), ca * cb);
  return out;
}

CohomClass CohomClass::scaled(const Rational& s) const {
  CohomClass out(model_, degree_);
  if (s == 0) return out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * s);
  return out;
}

CohomClass CohomClass::pow(int k) const {
  CohomClass out = one(model_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Rational CohomClass::integral() const {
  if (degree_ != model_->top_degree()) return 0;
  Rational s = 0;
  for (const auto& [w, c] : terms_) s += c * model_->wick_integral(w);
  return s;
}

DenseVector CohomClass::pairing_vector() const {
  int top = model_->top_degree();
  if (degree_ < 0 || degree_ > top) return DenseVector(0);
  const auto& comp = model_->words(top - degree_);
  DenseVector v = DenseVector::Zero(static_cast<Index>(comp.size()));
  for (std::size_t j = 0; j < comp.size(); ++j)
    for (const auto& [w, c] : terms_) {
      Word p = multiply_words(w, comp[j]);
      if (model_->fits(p)) v(static_cast<Index>(j)) += c * model_->wick_integral(p);
    }
  return v;
}

bool CohomClass::is_zero() const {
  if (terms_.empty()) return true;
  return pairing_vector().isZero();
}

CohomClass CohomClass::canonical() const {
  if (degree_ < 0 || degree_ > model_->top_degree()) return CohomClass(model_, degree_);
  auto c = class_from_pairings(model_, degree_, pairing_vector());
  if (!c) throw std::logic_error("canonical form: pairing functional outside the Gram image");
  return *c;
}

std::string CohomClass::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit_word = w.empty();
    if (a != 1 || unit_word) os << to_string(a);
    if (!unit_word) os << (a != 1 ? "*" : "") << model_->render(w);
  }
  return os.str();
}

CohomClass pull(const CohomClass& x, const ModelHandle& target, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != x.model()->nfactors())
    throw std::invalid_argument("pull: factor map has the wrong length");
  CohomClass out(target, x.degree());
  for (const auto& [w, c] : x.terms()) {
    Word img;
    for (const auto& l : w) {
      auto f1 = static_cast<std::uint8_t>(map[l.f1]);
      if (l.kind == LetterKind::Kunneth) {
        auto f2 = static_cast<std::uint8_t>(map[l.f2]);
        if (f1 == f2)
          img.push_back({LetterKind::FormDual, f1, 0});
        else
          img.push_back({LetterKind::Kunneth, std::min(f1, f2), std::max(f1, f2)});
      } else {
        img.push_back({l.kind, f1, 0});
      }
    }
    std::sort(img.begin(), img.end());
    out.add_term(img, c);
  }
  return out;
}

std::optional<CohomClass> class_from_pairings(const ModelHandle& model, int degree, const DenseVector& values) {
  const auto& rows = model->words(degree);
  DenseMatrix g = model->gram(degree);
  auto sol = solve(DenseMatrix(g.transpose()), values);
  if (!sol) return std::nullopt;
  CohomClass out(model, degree);
  for (std::size_t i = 0; i < rows.size(); ++i) out.add_term(rows[i], sol->particular(static_cast<Index>(i)));
  return out;
}

CohomClass diagonal_class(const ModelHandle& square) {
  if (square->nfactors() != 2) throw std::invalid_argument("diagonal_class expects a two-factor model");
  auto single = square->with_factors(1);
  int d = square->params().factor_dim;
  const auto& tests = square->words(square->top_degree() - d);
  DenseVector values(static_cast<Index>(tests.size()));
  for (std::size_t j = 0; j < tests.size(); ++j)
    values(static_cast<Index>(j)) = pull(CohomClass::word(square, tests[j]), single, {0, 0}).integral();
  auto delta = class_from_pairings(square, d, values);
  if (!delta)
    throw std::runtime_error("diagonal class is not in the contraction span (degree " + std::to_string(d) + ")");
  return *delta;
}

std::optional<Derivation> derive_relation(const CohomClass& target, const std::vector<CohomClass>& family) {
  DenseVector rhs = target.pairing_vector();
  DenseMatrix m(rhs.size(), static_cast<Index>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].degree() != target.degree() && !family[i].terms().empty())
      throw std::invalid_argument("derive_relation: family member of the wrong degree");
    if (family[i].model() != target.model()) throw std::invalid_argument("derive_relation: model mismatch");
    m.col(static_cast<Index>(i)) = family[i].terms().empty() ? DenseVector(DenseVector::Zero(rhs.size()))
                                                             : family[i].pairing_vector();
  }
  auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  return Derivation{sol->particular, sol->kernel};
}

CycleClassMap::CycleClassMap(RingHandle ring, ModelHandle model, std::vector<CohomClass> images)
    : ring_(std::move(ring)), model_(std::move(model)), images_(std::move(images)) {
  if (images_.size() != ring_->ngens()) throw std::invalid_argument("cycle class map needs one image per generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto& im = images_[i];
    if (im.model() != model_) throw std::invalid_argument("cycle class image in a foreign model");
    if (!im.terms().empty() && im.degree() != ring_->generators()[i].degree)
      throw std::invalid_argument("cycle class image of '" + ring_->names()[i] + "' has the wrong degree");
  }
}

CohomClass CycleClassMap::power(std::size_t gen, int k) const {
  {
    std::lock_guard lock(mutex_);
    auto it = powers_.find({gen, k});
    if (it != powers_.end()) return it->second;
  }
  CohomClass v = k == 0 ? CohomClass::one(model_) : power(gen, k - 1) * images_[gen];
  if (v.terms().empty()) v = CohomClass(model_, ring_->generators()[gen].degree * k);
  std::lock_guard lock(mutex_);
  powers_.emplace(std::make_pair(gen, k), v);
  return v;
}

CohomClass CycleClassMap::apply(const Polynomial& p, int degree) const {
  CohomClass out(model_, degree);
  if (degree > model_->top_degree()) return out;
  for (const auto& [e, c] : p.terms()) {
    CohomClass term = CohomClass::one(model_);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    if (term.terms().empty()) continue;
    out += term.scaled(c);
  }
  return out;
}

CohomClass fano_c_image(const ModelHandle& model, int factor) {
  auto g = CohomClass::polar(model, factor);
  return make_rational(5, 8) * (g * g) - make_rational(3, 20) * CohomClass::form_dual(model, factor);
}

CohomClass fano_incidence_image(const ModelHandle& square) {
  auto g1 = CohomClass::polar(square, 0);
  auto g2 = CohomClass::polar(square, 1);
  CohomClass s = g1 * g1 + make_rational(3, 2) * (g1 * g2) + g2 * g2 - fano_c_image(square, 0) -
                 fano_c_image(square, 1);
  return make_rational(1, 3) * s - CohomClass::kunneth(square, 0, 1);
}

CycleClassMap fano_cycle_class(const RingHandle& fano, const ModelHandle& model) {
  std::vector<CohomClass> images;
  for (const auto& n : fano->names()) {
    if (n == "g")
      images.push_back(CohomClass::polar(model, 0));
    else if (n == "c")
      images.push_back(fano_c_image(model, 0));
    else
      throw std::invalid_argument("no cycle class for generator '" + n + "' on F");
  }
  return CycleClassMap(fano, model, images);
}

CycleClassMap fano_square_cycle_class(const RingHandle& square, const ModelHandle& model) {
  std::vector<CohomClass> images;
  std::optional<CohomClass> delta;
  for (const auto& n : square->names()) {
    if (n == "g1" || n == "g2")
      images.push_back(CohomClass::polar(model, n[1] - '1'));
    else if (n == "c1" || n == "c2")
      images.push_back(fano_c_image(model, n[1] - '1'));
    else if (n == "I")
      images.push_back(fano_incidence_image(model));
    else if (n == "D") {
      if (!delta) delta = diagonal_class(model);
      images.push_back(*delta);
    } else {
      throw std::invalid_argument("no cycle class for generator '" + n + "' on F x F");
    }
  }
  return CycleClassMap(square, model, images);
}

CycleClassMap k3_cycle_class(const RingHandle& ring, const ModelHandle& model) {
  const Rational& d = model->params().q_polar;
  auto point = [&](int i) {
    auto h = CohomClass::polar(model, i);
    return (h * h).scaled(Rational(1) / d);
  };
  std::vector<CohomClass> images;
  for (const auto& n : ring->names()) {
    auto index = [&](std::size_t pos) { return n[pos] - '1'; };
    if (n.size() == 2 && n[0] == 'h')
      images.push_back(CohomClass::polar(model, index(1)));
    else if (n.size() == 2 && n[0] == 'o')
      images.push_back(point(index(1)));
    else if (n.size() == 3 && n[0] == 'D')
      images.push_back(point(index(1)) + point(index(2)) + CohomClass::kunneth(model, index(1), index(2)));
    else
      throw std::invalid_argument("no cycle class for generator '" + n + "' on a K3 power");
  }
  return CycleClassMap(ring, model, images);
}

ReportEntry fujiki_consistency(const ModelConstants& constants) {
  auto model = ContractionModel::fano_power(1, constants);
  auto grass = fano_intersection_numbers();
  auto g = CohomClass::polar(model, 0);
  auto b = CohomClass::form_dual(model, 0);
  auto c = fano_c_image(model, 0);

  std::vector<std::string> bad;
  auto expect = [&](const std::string& what, const Rational& got, const Rational& want) {
    if (got != want) bad.push_back(what + ": " + to_string(got) + " vs " + to_string(want));
  };
  // q(g) is pinned by int g^4 = fujiki * q^2 with q > 0.
  expect("fujiki*q_g^2", constants.fujiki_constant * constants.q_g * constants.q_g, grass.at({4, 0}));
  if (constants.q_g <= 0) bad.push_back("q_g must be positive");
  expect("int g^4", (g.pow(4)).integral(), grass.at({4, 0}));
  expect("int g^2 c", (g * g * c).integral(), grass.at({2, 1}));
  expect("int c^2", (c * c).integral(), grass.at({0, 2}));
  expect("int b g^2", (b * g * g).integral(), 25 * constants.q_g);
  expect("int b^2", (b * b).integral(), 23 * 25);

  std::string residual = "0";
  if (!bad.empty()) {
    residual.clear();
    for (const auto& s : bad) residual += (residual.empty() ? "" : "; ") + s;
  }
  auto e = ReportEntry::check("fujiki.consistency", "Fujiki model agrees with Schubert calculus on F",
                              "Fujiki relation / Beauville-Bogomolov data", bad.empty(), residual);
  return e;
}

}  // namespace tautring
