#include "bergmanlab/chern.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bergmanlab::chern {

KPoly KPoly::variable() {
  KPoly p;
  p.coeffs_ = {Rational(0), Rational(1)};
  return p;
}

void KPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

KPoly KPoly::operator+(const KPoly& o) const {
  KPoly out;
  out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
  out.normalize();
  return out;
}

KPoly KPoly::operator-(const KPoly& o) const {
  KPoly out;
  out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
  out.normalize();
  return out;
}

KPoly KPoly::operator*(const KPoly& o) const {
  KPoly out;
  if (coeffs_.empty() || o.coeffs_.empty()) return out;
  out.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) out.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  out.normalize();
  return out;
}

Rational KPoly::eval(const Rational& k) const {
  Rational acc(0), p(1);
  for (const auto& c : coeffs_) {
    acc += c * p;
    p *= k;
  }
  return acc;
}

std::string KPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = degree(); j >= 0; --j) {
    const Rational& c = coeffs_[j];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    const Rational a = abs(c);
    if (j == 0 || a != 1) os << a.str();
    if (j >= 1) {
      if (a != 1) os << "*";
      os << "k";
      if (j > 1) os << "^" << j;
    }
    first = false;
  }
  return os.str();
}

int CohRing::degree_of(const std::vector<int>& exps) const {
  int d = 0;
  for (int i = 0; i < generators(); ++i) d += exps[i] * generator_degrees[i];
  return d;
}

void CohRing::validate() const {
  if (generator_names.size() != generator_degrees.size())
    throw std::invalid_argument("ring: name/degree count mismatch");
  for (int d : generator_degrees)
    if (d < 1) throw std::invalid_argument("ring: generator degree must be >= 1");
  if (static_cast<int>(top_monomial.size()) != generators())
    throw std::invalid_argument("ring: top monomial arity mismatch");
  if (degree_of(top_monomial) != top_degree)
    throw std::invalid_argument("ring: top monomial degree != top degree");
  for (const auto& rel : relations) {
    if (static_cast<int>(rel.lhs.size()) != generators())
      throw std::invalid_argument("ring: relation arity mismatch");
    const int dl = degree_of(rel.lhs);
    for (const auto& [m, c] : rel.rhs) {
      (void)c;
      if (static_cast<int>(m.size()) != generators())
        throw std::invalid_argument("ring: relation arity mismatch");
      if (degree_of(m) != dl) throw std::invalid_argument("ring: relation not degree-homogeneous");
    }
  }
}

CohRing CohRing::free_ring(int generators, int truncation) {
  CohRing r;
  for (int i = 0; i < generators; ++i) {
    r.generator_names.push_back("x" + std::to_string(i + 1));
    r.generator_degrees.push_back(1);
  }
  r.top_degree = truncation;
  // no designated top monomial; integration is not used on free rings
  r.top_monomial.assign(generators, 0);
  if (generators > 0) r.top_monomial[0] = truncation;
  return r;
}

CohRing CohRing::projective(int n) {
  CohRing r;
  r.generator_names = {"H"};
  r.generator_degrees = {1};
  r.top_degree = n;
  Relation rel;
  rel.lhs = {n + 1};
  r.relations.push_back(rel);
  r.top_monomial = {n};
  r.validate();
  return r;
}

CohRing CohRing::su3_flag() {
  CohRing r;
  r.generator_names = {"x1", "x2"};
  r.generator_degrees = {1, 1};
  r.top_degree = 3;
  // x2^2 -> -x1^2 - x1 x2  and  x1^3 -> 0
  Relation a;
  a.lhs = {0, 2};
  a.rhs[{2, 0}] = Rational(-1);
  a.rhs[{1, 1}] = Rational(-1);
  r.relations.push_back(a);
  Relation b;
  b.lhs = {3, 0};
  r.relations.push_back(b);
  r.top_monomial = {2, 1};
  r.validate();
  return r;
}

std::string CohRing::to_json() const {
  nlohmann::ordered_json doc;
  doc["generators"] = nlohmann::ordered_json::array();
  for (int i = 0; i < generators(); ++i)
    doc["generators"].push_back({{"name", generator_names[i]}, {"degree", generator_degrees[i]}});
  doc["top_degree"] = top_degree;
  doc["top_monomial"] = top_monomial;
  doc["relations"] = nlohmann::ordered_json::array();
  for (const auto& rel : relations) {
    nlohmann::ordered_json jr;
    jr["monomial"] = rel.lhs;
    jr["value"] = nlohmann::ordered_json::array();
    for (const auto& [m, c] : rel.rhs)
      jr["value"].push_back({{"monomial", m}, {"coeff", c.str()}});
    doc["relations"].push_back(jr);
  }
  return doc.dump(2);
}

CohRing CohRing::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  CohRing r;
  for (const auto& g : doc.at("generators")) {
    r.generator_names.push_back(g.at("name").get<std::string>());
    r.generator_degrees.push_back(g.at("degree").get<int>());
  }
  r.top_degree = doc.at("top_degree").get<int>();
  r.top_monomial = doc.at("top_monomial").get<std::vector<int>>();
  for (const auto& jr : doc.at("relations")) {
    Relation rel;
    rel.lhs = jr.at("monomial").get<std::vector<int>>();
    if (jr.contains("value"))
      for (const auto& t : jr.at("value"))
        rel.rhs[t.at("monomial").get<std::vector<int>>()] = Rational(t.at("coeff").get<std::string>());
    r.relations.push_back(rel);
  }
  r.validate();
  return r;
}

FormalClass FormalClass::constant(const CohRing* ring, KPoly c) {
  FormalClass f(ring);
  f.add_term(std::vector<int>(ring->generators(), 0), std::move(c));
  return f;
}

FormalClass FormalClass::generator(const CohRing* ring, int index) {
  FormalClass f(ring);
  std::vector<int> m(ring->generators(), 0);
  m[index] = 1;
  f.add_term(m, KPoly(Rational(1)));
  return f;
}

FormalClass FormalClass::combination(const CohRing* ring, const std::vector<Rational>& coeffs) {
  FormalClass f(ring);
  for (int i = 0; i < ring->generators(); ++i) {
    if (coeffs[i] == 0) continue;
    std::vector<int> m(ring->generators(), 0);
    m[i] = 1;
    f.add_term(m, KPoly(coeffs[i]));
  }
  return f;
}

KPoly FormalClass::coefficient(const std::vector<int>& monomial) const {
  auto it = coeffs_.find(monomial);
  return it == coeffs_.end() ? KPoly() : it->second;
}

bool FormalClass::positive_degree() const {
  for (const auto& [m, c] : coeffs_) {
    (void)c;
    if (ring_->degree_of(m) == 0) return false;
  }
  return true;
}

void FormalClass::add_term(const std::vector<int>& monomial, KPoly c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(monomial);
  if (it == coeffs_.end()) coeffs_.emplace(monomial, std::move(c));
  else {
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  reduce();
}

void FormalClass::reduce() {
  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 100000) throw std::runtime_error("ring relations do not terminate");
    changed = false;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      const auto& m = it->first;
      if (ring_->degree_of(m) > ring_->top_degree) {
        it = coeffs_.erase(it);
        changed = true;
        continue;
      }
      const CohRing::Relation* hit = nullptr;
      for (const auto& rel : ring_->relations) {
        bool divisible = true;
        for (int i = 0; i < ring_->generators(); ++i)
          if (m[i] < rel.lhs[i]) {
            divisible = false;
            break;
          }
        if (divisible) {
          hit = &rel;
          break;
        }
      }
      if (!hit) {
        ++it;
        continue;
      }
      const KPoly c = it->second;
      std::vector<int> quotient(m);
      for (int i = 0; i < ring_->generators(); ++i) quotient[i] -= hit->lhs[i];
      it = coeffs_.erase(it);
      for (const auto& [rm, rc] : hit->rhs) {
        std::vector<int> nm(quotient);
        for (int i = 0; i < ring_->generators(); ++i) nm[i] += rm[i];
        auto jt = coeffs_.find(nm);
        const KPoly add = c * KPoly(rc);
        if (jt == coeffs_.end()) coeffs_.emplace(nm, add);
        else {
          jt->second = jt->second + add;
          if (jt->second.is_zero()) coeffs_.erase(jt);
        }
      }
      changed = true;
      break;
    }
  }
}

FormalClass FormalClass::operator+(const FormalClass& o) const {
  FormalClass out = *this;
  for (const auto& [m, c] : o.coeffs_) out.add_term(m, c);
  return out;
}

FormalClass FormalClass::operator-(const FormalClass& o) const {
  FormalClass out = *this;
  for (const auto& [m, c] : o.coeffs_) out.add_term(m, KPoly() - c);
  return out;
}

FormalClass FormalClass::operator*(const FormalClass& o) const {
  FormalClass out(ring_);
  for (const auto& [ma, ca] : coeffs_)
    for (const auto& [mb, cb] : o.coeffs_) {
      std::vector<int> m(ma);
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      if (ring_->degree_of(m) > ring_->top_degree) continue;
      out.add_term(m, ca * cb);
    }
  return out;
}

FormalClass FormalClass::operator*(const KPoly& s) const {
  FormalClass out(ring_);
  for (const auto& [m, c] : coeffs_) out.add_term(m, c * s);
  return out;
}

FormalClass FormalClass::exp() const {
  if (!positive_degree())
    throw std::invalid_argument("exp needs a positive-degree class");
  FormalClass acc = FormalClass::constant(ring_, KPoly(Rational(1)));
  FormalClass power = acc;
  Rational factorial(1);
  for (int j = 1; j <= ring_->top_degree; ++j) {
    power = power * (*this);
    factorial *= j;
    acc = acc + power * KPoly(Rational(1) / factorial);
  }
  return acc;
}

KPoly FormalClass::integrate() const { return coefficient(ring_->top_monomial); }

Rational FormalClass::max_abs_coeff() const {
  Rational mx(0);
  for (const auto& [m, c] : coeffs_) {
    (void)m;
    for (const auto& r : c.coeffs())
      if (abs(r) > mx) mx = abs(r);
  }
  return mx;
}

std::vector<Rational> todd_coefficients(int trunc) {
  // series inversion of (1 - e^{-x}) / x = sum_{j>=0} (-1)^j x^j / (j+1)!
  std::vector<Rational> d(trunc + 1);
  Rational fact(1);
  for (int j = 0; j <= trunc; ++j) {
    fact *= (j + 1);
    d[j] = Rational((j % 2 == 0) ? 1 : -1) / fact;
  }
  std::vector<Rational> c(trunc + 1, Rational(0));
  c[0] = 1;
  for (int m = 1; m <= trunc; ++m) {
    Rational s(0);
    for (int j = 1; j <= m; ++j) s += d[j] * c[m - j];
    c[m] = -s;
  }
  return c;
}

FormalClass todd_line(const FormalClass& x, int trunc) {
  for (const auto& [m, c] : x.coeffs()) {
    (void)c;
    if (x.ring()->degree_of(m) != 1)
      throw std::invalid_argument("todd_line needs a homogeneous degree-1 class");
  }
  const int depth = std::min(trunc, x.ring()->top_degree);
  const auto coeff = todd_coefficients(depth);
  FormalClass acc = FormalClass::constant(x.ring(), KPoly(coeff[0]));
  FormalClass power = FormalClass::constant(x.ring(), KPoly(Rational(1)));
  for (int m = 1; m <= depth; ++m) {
    power = power * x;
    acc = acc + power * KPoly(coeff[m]);
  }
  return acc;
}

FormalClass todd_sum(const CohRing* ring, const std::vector<FormalClass>& roots) {
  FormalClass acc = FormalClass::constant(ring, KPoly(Rational(1)));
  for (const auto& r : roots) acc = acc * todd_line(r, ring->top_degree);
  return acc;
}

Rational verify_conjugate_identity(const std::vector<std::vector<Rational>>& root_rows, int trunc) {
  const int g = root_rows.empty() ? 1 : static_cast<int>(root_rows.front().size());
  static std::map<std::pair<int, int>, CohRing> cache;
  CohRing& ring = cache.emplace(std::make_pair(g, trunc), CohRing::free_ring(g, trunc)).first->second;

  std::vector<FormalClass> roots, negated;
  FormalClass c1(&ring);
  c1 = FormalClass::constant(&ring, KPoly());
  for (const auto& row : root_rows) {
    roots.push_back(FormalClass::combination(&ring, row));
    std::vector<Rational> neg(row);
    for (auto& v : neg) v = -v;
    negated.push_back(FormalClass::combination(&ring, neg));
    c1 = c1 + roots.back();
  }
  FormalClass lhs = todd_sum(&ring, negated) * c1.exp();
  FormalClass rhs = todd_sum(&ring, roots);
  return (lhs - rhs).max_abs_coeff();
}

KPoly rr_integral(const CohRing& ring, const std::vector<FormalClass>& tangent_roots,
                  const FormalClass& line_class, const std::optional<FormalClass>& extra_class) {
  FormalClass td = todd_sum(&ring, tangent_roots);
  FormalClass expo = line_class * KPoly::variable();
  if (extra_class) expo = expo + *extra_class;
  return (td * expo.exp()).integrate();
}

KPoly signed_dimension(const KPoly& chi, int q) {
  if (q % 2 == 0) return chi;
  return KPoly() - chi;
}

}  // namespace bergmanlab::chern
