#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bergmanlab::chern {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in the symbolic tensor power k, exact rational coefficients.
class KPoly {
 public:
  KPoly() = default;
  KPoly(Rational constant) { coeffs_ = {std::move(constant)}; normalize(); }
  static KPoly variable();  // the polynomial "k"

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  KPoly operator+(const KPoly& o) const;
  KPoly operator-(const KPoly& o) const;
  KPoly operator*(const KPoly& o) const;
  bool operator==(const KPoly& o) const { return coeffs_ == o.coeffs_; }

  Rational eval(const Rational& k) const;
  std::string str() const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;  // coeffs_[j] multiplies k^j
};

/// Truncated graded-commutative polynomial ring presentation: generators with
/// degrees, monomial rewrite relations, a designated top monomial whose
/// coefficient is the integration functional.
struct CohRing {
  struct Relation {
    std::vector<int> lhs;                          // monomial exponents
    std::map<std::vector<int>, Rational> rhs;      // replacement polynomial
  };

  std::vector<std::string> generator_names;
  std::vector<int> generator_degrees;
  int top_degree = 0;
  std::vector<Relation> relations;
  std::vector<int> top_monomial;

  int generators() const { return static_cast<int>(generator_names.size()); }
  int degree_of(const std::vector<int>& exps) const;
  void validate() const;

  static CohRing free_ring(int generators, int truncation);
  static CohRing projective(int n);
  /// Full flag of SU(3): Q[x1,x2] / (x1^2 + x1 x2 + x2^2, x1 x2 (x1 + x2)),
  /// top monomial x1^2 x2 with integral 1.
  static CohRing su3_flag();

  std::string to_json() const;
  static CohRing from_json(const std::string& text);
};

/// Element of a CohRing with KPoly coefficients, degree-truncated products.
class FormalClass {
 public:
  explicit FormalClass(const CohRing* ring) : ring_(ring) {}
  static FormalClass constant(const CohRing* ring, KPoly c);
  static FormalClass generator(const CohRing* ring, int index);
  /// Integer linear combination of generators.
  static FormalClass combination(const CohRing* ring, const std::vector<Rational>& coeffs);

  const CohRing* ring() const { return ring_; }
  const std::map<std::vector<int>, KPoly>& coeffs() const { return coeffs_; }
  KPoly coefficient(const std::vector<int>& monomial) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// True when every monomial has degree >= 1.
  bool positive_degree() const;

  FormalClass operator+(const FormalClass& o) const;
  FormalClass operator-(const FormalClass& o) const;
  FormalClass operator*(const FormalClass& o) const;
  FormalClass operator*(const KPoly& s) const;

  void add_term(const std::vector<int>& monomial, KPoly c);

  /// exp of a positive-degree class, truncated by the ring.
  FormalClass exp() const;
  /// Coefficient of the ring's top monomial.
  KPoly integrate() const;
  /// Largest absolute coefficient over all monomials and k-powers.
  Rational max_abs_coeff() const;

 private:
  void reduce();
  const CohRing* ring_;
  std::map<std::vector<int>, KPoly> coeffs_;
};

/// Coefficients c_0..c_trunc of x / (1 - e^{-x}) = sum c_m x^m, exact.
std::vector<Rational> todd_coefficients(int trunc);

/// Todd class of a line bundle with first Chern class x (degree-1), truncated.
FormalClass todd_line(const FormalClass& x, int trunc);

/// Todd class of a sum of line bundles: product of the line Todd classes;
/// the empty sum is the unit class.
FormalClass todd_sum(const CohRing* ring, const std::vector<FormalClass>& roots);

/// Exact residual of Td(conjugate) * e^{c1} - Td in a free truncated ring:
/// roots are degree-1 combinations given by rational coefficient rows.
Rational verify_conjugate_identity(const std::vector<std::vector<Rational>>& root_rows, int trunc);

/// integral of Td(tangent roots) * exp(k * line + extra) as a polynomial in k.
KPoly rr_integral(const CohRing& ring, const std::vector<FormalClass>& tangent_roots,
                  const FormalClass& line_class,
                  const std::optional<FormalClass>& extra_class = std::nullopt);

/// Degree-q dimension from an Euler characteristic: (-1)^q * chi. The
/// orientation sign is always an explicit input, never inferred.
KPoly signed_dimension(const KPoly& chi, int q);

}  // namespace bergmanlab::chern
