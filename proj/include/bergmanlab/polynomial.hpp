#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergmanlab {

using Complex = std::complex<double>;

/// Exponent data of one monomial in the phase-space variables
/// (z_1..z_n, zbar_1..zbar_n, zeta_1..zeta_n, zetabar_1..zetabar_n).
/// Weight functions use only the (z, zbar) blocks.
struct Monomial {
  std::vector<int> z, zbar, zeta, zetabar;

  explicit Monomial(int n) : z(n, 0), zbar(n, 0), zeta(n, 0), zetabar(n, 0) {}
  Monomial() = default;

  bool operator<(const Monomial& other) const;
  bool operator==(const Monomial& other) const;
  int dimension() const { return static_cast<int>(z.size()); }
};

/// Sparse polynomial over C in the four variable blocks above.
/// Coefficients below 1e-300 in magnitude are dropped on normalization.
class PolySymbol {
 public:
  PolySymbol() : n_(0) {}
  explicit PolySymbol(int n) : n_(n) {}

  int dimension() const { return n_; }
  bool empty() const { return terms_.empty(); }
  const std::map<Monomial, Complex>& terms() const { return terms_; }

  void add_term(const Monomial& m, Complex c);

  PolySymbol operator+(const PolySymbol& g) const;
  PolySymbol operator-(const PolySymbol& g) const;
  PolySymbol operator*(const PolySymbol& g) const;
  PolySymbol operator*(Complex c) const;

  /// Complex conjugate: swaps z <-> zbar and zeta <-> zetabar blocks and
  /// conjugates coefficients.
  PolySymbol conjugate() const;

  enum class Var { Z, ZBar, Zeta, ZetaBar };
  /// Term-wise Wirtinger derivative with respect to one variable; exact.
  PolySymbol derivative(Var block, int j) const;

  /// Evaluate at a phase-space point; zbar/zetabar slots take the literal
  /// conjugates of the supplied vectors.
  Complex eval(const std::vector<Complex>& z, const std::vector<Complex>& zeta) const;
  /// Evaluate a (z, zbar)-only polynomial at a base point.
  Complex eval_base(const std::vector<Complex>& z) const;

  bool depends_on_fiber() const;
  double max_abs_coeff() const;

  static PolySymbol variable(int n, Var block, int j);
  static PolySymbol constant(int n, Complex c);

 private:
  int n_ = 0;
  std::map<Monomial, Complex> terms_;
};

/// Local fiber-metric potential: a real-valued polynomial in (z, zbar).
/// Reality is enforced at construction by symmetrizing coefficients under
/// the conjugate swap of the z / zbar exponents; the asymmetry discarded by
/// that projection is recorded so callers can reject non-real input.
class WeightFunction {
 public:
  struct Term {
    std::vector<int> zpow;
    std::vector<int> zbarpow;
    Complex coeff;
  };

  WeightFunction(int n, const std::vector<Term>& terms);

  int dimension() const { return n_; }
  const PolySymbol& poly() const { return poly_; }
  double symmetrization_defect() const { return defect_; }
  bool is_real() const { return defect_ <= 1e-12; }

  double eval(const std::vector<Complex>& z) const;
  /// d/dz_j or d/dzbar_j, any order, exact term-wise differentiation.
  PolySymbol derivative(const std::vector<int>& zorders, const std::vector<int>& zbarorders) const;
  Complex derivative_at(const std::vector<int>& zorders, const std::vector<int>& zbarorders,
                        const std::vector<Complex>& z) const;

  std::vector<Term> terms() const;

  /// Structured-text (JSON) serialization; see docs. Round-trips exactly.
  std::string to_json() const;
  static WeightFunction from_json(const std::string& text);

 private:
  int n_;
  PolySymbol poly_;
  double defect_ = 0.0;
};

}  // namespace bergmanlab
