#include <doctest.h>

#include "bergmanlab/polynomial.hpp"

using namespace bergmanlab;

namespace {

WeightFunction gaussian_weight(double lambda) {
  return WeightFunction(1, {{{1}, {1}, {lambda, 0.0}}});
}

}  // namespace

TEST_CASE("weight reality is enforced by symmetrization") {
  // z^2 alone is not real; the symmetrized part is (z^2 + zbar^2)/2
  WeightFunction skew(1, {{{2}, {0}, {1.0, 0.0}}});
  CHECK(!skew.is_real());
  WeightFunction sym(1, {{{2}, {0}, {0.5, 0.0}}, {{0}, {2}, {0.5, 0.0}}});
  CHECK(sym.is_real());
  CHECK(sym.eval({Complex{1.0, 0.5}}) == doctest::Approx(((Complex{1.0, 0.5}) * (Complex{1.0, 0.5})).real()));
}

TEST_CASE("derivatives are exact term-wise") {
  // phi = |z|^2/2 + Re(z^2 zbar)
  WeightFunction phi(1, {{{1}, {1}, {0.5, 0.0}},
                         {{2}, {1}, {0.5, 0.0}},
                         {{1}, {2}, {0.5, 0.0}}});
  REQUIRE(phi.is_real());
  const std::vector<Complex> z{Complex{0.3, -0.2}};
  // d/dz: zbar/2 + z zbar + zbar^2/2
  const Complex zb = std::conj(z[0]);
  const Complex expect = 0.5 * zb + z[0] * zb + 0.5 * zb * zb;
  CHECK(std::abs(phi.derivative_at({1}, {0}, z) - expect) < 1e-15);
  // mixed second derivative d2/dzbar dz = 1/2 + z + zbar
  const Complex expect2 = 0.5 + z[0] + zb;
  CHECK(std::abs(phi.derivative_at({1}, {1}, z) - expect2) < 1e-15);
}

TEST_CASE("serialization round-trips exactly") {
  WeightFunction phi(2, {{{1, 0}, {1, 0}, {0.5, 0.0}},
                         {{0, 1}, {0, 1}, {-0.5, 0.0}},
                         {{2, 0}, {0, 1}, {0.1234567890123456789, 0.25}}});
  const std::string doc = phi.to_json();
  const WeightFunction back = WeightFunction::from_json(doc);
  const auto a = phi.terms();
  const auto b = back.terms();
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].zpow == b[i].zpow);
    CHECK(a[i].zbarpow == b[i].zbarpow);
    CHECK(a[i].coeff.real() == b[i].coeff.real());
    CHECK(a[i].coeff.imag() == b[i].coeff.imag());
  }
  CHECK(back.to_json() == doc);
}

TEST_CASE("conjugation and products") {
  PolySymbol z = PolySymbol::variable(1, PolySymbol::Var::Z, 0);
  PolySymbol zetabar = PolySymbol::variable(1, PolySymbol::Var::ZetaBar, 0);
  PolySymbol q = zetabar * Complex{0.0, 0.5} + z * Complex{0.5, 0.0};
  PolySymbol qc = q.conjugate();
  const std::vector<Complex> zp{Complex{0.7, 0.1}}, cp{Complex{-0.4, 0.9}};
  CHECK(std::abs(qc.eval(zp, cp) - std::conj(q.eval(zp, cp))) < 1e-15);
  CHECK(std::abs((q * qc).eval(zp, cp) - q.eval(zp, cp) * qc.eval(zp, cp)) < 1e-15);
  CHECK(gaussian_weight(1.0).poly().depends_on_fiber() == false);
  CHECK(q.depends_on_fiber());
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS(WeightFunction::from_json("not json"));
  CHECK_THROWS(WeightFunction::from_json("{\"n\": 1}"));
}
