#include "bergmanlab/polynomial.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace bergmanlab {

namespace {
constexpr double kDropTol = 1e-300;
}

bool Monomial::operator<(const Monomial& other) const {
  if (z != other.z) return z < other.z;
  if (zbar != other.zbar) return zbar < other.zbar;
  if (zeta != other.zeta) return zeta < other.zeta;
  return zetabar < other.zetabar;
}

bool Monomial::operator==(const Monomial& other) const {
  return z == other.z && zbar == other.zbar && zeta == other.zeta && zetabar == other.zetabar;
}

void PolySymbol::add_term(const Monomial& m, Complex c) {
  if (static_cast<int>(m.z.size()) != n_) throw std::invalid_argument("monomial dimension mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (std::abs(c) > kDropTol) terms_.emplace(m, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= kDropTol) terms_.erase(it);
  }
}

PolySymbol PolySymbol::operator+(const PolySymbol& g) const {
  PolySymbol out = *this;
  for (const auto& [m, c] : g.terms_) out.add_term(m, c);
  return out;
}

PolySymbol PolySymbol::operator-(const PolySymbol& g) const {
  PolySymbol out = *this;
  for (const auto& [m, c] : g.terms_) out.add_term(m, -c);
  return out;
}

PolySymbol PolySymbol::operator*(const PolySymbol& g) const {
  PolySymbol out(n_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : g.terms_) {
      Monomial m(n_);
      for (int j = 0; j < n_; ++j) {
        m.z[j] = ma.z[j] + mb.z[j];
        m.zbar[j] = ma.zbar[j] + mb.zbar[j];
        m.zeta[j] = ma.zeta[j] + mb.zeta[j];
        m.zetabar[j] = ma.zetabar[j] + mb.zetabar[j];
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

PolySymbol PolySymbol::operator*(Complex c) const {
  PolySymbol out(n_);
  for (const auto& [m, a] : terms_) out.add_term(m, a * c);
  return out;
}

PolySymbol PolySymbol::conjugate() const {
  PolySymbol out(n_);
  for (const auto& [m, c] : terms_) {
    Monomial mc(n_);
    mc.z = m.zbar;
    mc.zbar = m.z;
    mc.zeta = m.zetabar;
    mc.zetabar = m.zeta;
    out.add_term(mc, std::conj(c));
  }
  return out;
}

PolySymbol PolySymbol::derivative(Var block, int j) const {
  if (j < 0 || j >= n_) throw std::out_of_range("derivative index");
  PolySymbol out(n_);
  for (const auto& [m, c] : terms_) {
    const std::vector<int>* exps = nullptr;
    switch (block) {
      case Var::Z: exps = &m.z; break;
      case Var::ZBar: exps = &m.zbar; break;
      case Var::Zeta: exps = &m.zeta; break;
      case Var::ZetaBar: exps = &m.zetabar; break;
    }
    const int e = (*exps)[j];
    if (e == 0) continue;
    Monomial md = m;
    switch (block) {
      case Var::Z: md.z[j] -= 1; break;
      case Var::ZBar: md.zbar[j] -= 1; break;
      case Var::Zeta: md.zeta[j] -= 1; break;
      case Var::ZetaBar: md.zetabar[j] -= 1; break;
    }
    out.add_term(md, c * static_cast<double>(e));
  }
  return out;
}

Complex PolySymbol::eval(const std::vector<Complex>& z, const std::vector<Complex>& zeta) const {
  if (static_cast<int>(z.size()) != n_ || static_cast<int>(zeta.size()) != n_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  auto ipow = [](Complex b, int e) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  Complex total{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    Complex v = c;
    for (int j = 0; j < n_; ++j) {
      v *= ipow(z[j], m.z[j]);
      v *= ipow(std::conj(z[j]), m.zbar[j]);
      v *= ipow(zeta[j], m.zeta[j]);
      v *= ipow(std::conj(zeta[j]), m.zetabar[j]);
    }
    total += v;
  }
  return total;
}

Complex PolySymbol::eval_base(const std::vector<Complex>& z) const {
  return eval(z, std::vector<Complex>(n_, Complex{0.0, 0.0}));
}

bool PolySymbol::depends_on_fiber() const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (int j = 0; j < n_; ++j)
      if (m.zeta[j] != 0 || m.zetabar[j] != 0) return true;
  }
  return false;
}

double PolySymbol::max_abs_coeff() const {
  double mx = 0.0;
  for (const auto& [m, c] : terms_) {
    (void)m;
    mx = std::max(mx, std::abs(c));
  }
  return mx;
}

PolySymbol PolySymbol::variable(int n, Var block, int j) {
  PolySymbol p(n);
  Monomial m(n);
  switch (block) {
    case Var::Z: m.z[j] = 1; break;
    case Var::ZBar: m.zbar[j] = 1; break;
    case Var::Zeta: m.zeta[j] = 1; break;
    case Var::ZetaBar: m.zetabar[j] = 1; break;
  }
  p.add_term(m, Complex{1.0, 0.0});
  return p;
}

PolySymbol PolySymbol::constant(int n, Complex c) {
  PolySymbol p(n);
  p.add_term(Monomial(n), c);
  return p;
}

WeightFunction::WeightFunction(int n, const std::vector<Term>& terms) : n_(n), poly_(n) {
  PolySymbol raw(n);
  for (const auto& t : terms) {
    if (static_cast<int>(t.zpow.size()) != n || static_cast<int>(t.zbarpow.size()) != n)
      throw std::invalid_argument("weight term dimension mismatch");
    Monomial m(n);
    m.z = t.zpow;
    m.zbar = t.zbarpow;
    raw.add_term(m, t.coeff);
  }
  // Real projection: phi := (raw + conj(raw)) / 2. The discarded part
  // (raw - conj(raw)) / 2 measures how far the input was from real.
  PolySymbol sym = (raw + raw.conjugate()) * Complex{0.5, 0.0};
  PolySymbol skew = (raw - raw.conjugate()) * Complex{0.5, 0.0};
  poly_ = sym;
  defect_ = skew.max_abs_coeff();
}

double WeightFunction::eval(const std::vector<Complex>& z) const {
  return poly_.eval_base(z).real();
}

PolySymbol WeightFunction::derivative(const std::vector<int>& zorders,
                                      const std::vector<int>& zbarorders) const {
  PolySymbol p = poly_;
  for (int j = 0; j < n_; ++j) {
    for (int r = 0; r < (j < (int)zorders.size() ? zorders[j] : 0); ++r)
      p = p.derivative(PolySymbol::Var::Z, j);
    for (int r = 0; r < (j < (int)zbarorders.size() ? zbarorders[j] : 0); ++r)
      p = p.derivative(PolySymbol::Var::ZBar, j);
  }
  return p;
}

Complex WeightFunction::derivative_at(const std::vector<int>& zorders,
                                      const std::vector<int>& zbarorders,
                                      const std::vector<Complex>& z) const {
  return derivative(zorders, zbarorders).eval_base(z);
}

std::vector<WeightFunction::Term> WeightFunction::terms() const {
  std::vector<Term> out;
  for (const auto& [m, c] : poly_.terms()) out.push_back({m.z, m.zbar, c});
  return out;
}

std::string WeightFunction::to_json() const {
  nlohmann::ordered_json doc;
  doc["n"] = n_;
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : terms()) {
    nlohmann::ordered_json jt;
    jt["zpow"] = t.zpow;
    jt["zbarpow"] = t.zbarpow;
    jt["re"] = t.coeff.real();
    jt["im"] = t.coeff.imag();
    doc["terms"].push_back(jt);
  }
  return doc.dump(2);
}

WeightFunction WeightFunction::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  const int n = doc.at("n").get<int>();
  std::vector<Term> ts;
  for (const auto& jt : doc.at("terms")) {
    Term t;
    t.zpow = jt.at("zpow").get<std::vector<int>>();
    t.zbarpow = jt.at("zbarpow").get<std::vector<int>>();
    t.coeff = Complex{jt.at("re").get<double>(), jt.at("im").get<double>()};
    ts.push_back(t);
  }
  return WeightFunction(n, ts);
}

}  // namespace bergmanlab
