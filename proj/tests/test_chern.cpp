#include <doctest.h>

#include <functional>
#include <random>

#include "bergmanlab/chern.hpp"

using namespace bergmanlab::chern;

namespace {

// independent oracle: Bernoulli numbers with B1 = +1/2 through the standard
// recursion sum_{j=0}^{m} C(m+1, j) B_j = m + 1 (for the B1 = -1/2 family),
// then flipping the sign of B1
std::vector<Rational> bernoulli_plus(int count) {
  std::vector<Rational> B(count + 1, Rational(0));
  std::vector<std::vector<Rational>> choose(count + 2, std::vector<Rational>(count + 2, Rational(0)));
  for (int i = 0; i <= count + 1; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : Rational(0));
  }
  B[0] = 1;
  for (int m = 1; m <= count; ++m) {
    Rational s(0);
    for (int j = 0; j < m; ++j) s += choose[m + 1][j] * B[j];
    B[m] = (Rational(m + 1) - s) / choose[m + 1][m];
  }
  // that recursion yields the B1 = +1/2 normalization directly
  return B;
}

Rational rat(long long p, long long q = 1) { return Rational(p) / Rational(q); }

}  // namespace

TEST_CASE("todd series coefficients") {
  const auto c = todd_coefficients(8);
  CHECK(c[0] == rat(1));
  CHECK(c[1] == rat(1, 2));
  CHECK(c[2] == rat(1, 12));
  CHECK(c[3] == rat(0));
  CHECK(c[4] == rat(-1, 720));
  CHECK(c[5] == rat(0));
  CHECK(c[6] == rat(1, 30240));

  // Bernoulli oracle: c_m = B_m^+ / m!
  const auto B = bernoulli_plus(8);
  Rational fact(1);
  for (int m = 0; m <= 8; ++m) {
    if (m > 0) fact *= m;
    CHECK(c[m] == B[m] / fact);
  }
}

TEST_CASE("line Todd class and products") {
  const CohRing ring = CohRing::free_ring(1, 6);
  const auto x = FormalClass::generator(&ring, 0);

  const auto td = todd_line(x, 6);
  CHECK(td.coefficient({0}) == KPoly(rat(1)));
  CHECK(td.coefficient({1}) == KPoly(rat(1, 2)));
  CHECK(td.coefficient({2}) == KPoly(rat(1, 12)));
  CHECK(td.coefficient({4}) == KPoly(rat(-1, 720)));

  // zero class: unit Todd class
  const FormalClass zero(&ring);
  CHECK(todd_line(zero, 6).coefficient({0}) == KPoly(rat(1)));

  // empty sum is the unit class
  CHECK(todd_sum(&ring, {}).coefficient({0}) == KPoly(rat(1)));

  // two equal roots against direct series multiplication
  const auto two = todd_sum(&ring, {x, x});
  const auto direct = todd_line(x, 6) * todd_line(x, 6);
  CHECK((two - direct).max_abs_coeff() == rat(0));
  CHECK(two.coefficient({2}) == KPoly(rat(1, 4) + rat(2, 12)));

  // reordering invariance
  const CohRing ring2 = CohRing::free_ring(2, 5);
  const auto a = FormalClass::generator(&ring2, 0);
  const auto b = FormalClass::generator(&ring2, 1);
  CHECK((todd_sum(&ring2, {a, b}) - todd_sum(&ring2, {b, a})).max_abs_coeff() == rat(0));

  CHECK_THROWS(todd_line(x * x, 6));
}

TEST_CASE("conjugate-bundle identity is exactly zero") {
  CHECK(verify_conjugate_identity({{rat(1)}}, 8) == rat(0));
  CHECK(verify_conjugate_identity({{rat(2), rat(-3)}, {rat(1, 3), rat(1, 2)}, {rat(-5), rat(7, 4)}},
                                  6) == rat(0));
  CHECK(verify_conjugate_identity({{rat(1)}}, 0) == rat(0));
  CHECK(verify_conjugate_identity({}, 4) == rat(0));

  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5), cnt(1, 4), tr(1, 8), g(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int gens = g(rng);
    const int roots = cnt(rng);
    std::vector<std::vector<Rational>> rows;
    for (int r = 0; r < roots; ++r) {
      std::vector<Rational> row;
      for (int c = 0; c < gens; ++c) row.push_back(rat(num(rng), den(rng)));
      rows.push_back(row);
    }
    CHECK(verify_conjugate_identity(rows, tr(rng)) == rat(0));
  }
}

TEST_CASE("projective space Riemann-Roch") {
  {
    const auto ring = CohRing::projective(1);
    const auto H = FormalClass::generator(&ring, 0);
    const auto poly = rr_integral(ring, {H * KPoly(rat(2))}, H);
    CHECK(poly.str() == "k + 1");
  }
  // monomial-count oracle: dim of degree-k forms in n+1 variables
  auto count_monomials = [](int n, int k) {
    // choose(k + n, n) by direct enumeration for small sizes
    long long total = 0;
    std::vector<int> e(n + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n) {
        ++total;
        return;
      }
      for (int v = 0; v <= left; ++v) rec(pos + 1, left - v);
    };
    rec(0, k);
    return total;
  };
  for (int n = 1; n <= 3; ++n) {
    const auto ring = CohRing::projective(n);
    const auto H = FormalClass::generator(&ring, 0);
    std::vector<FormalClass> tangent(n + 1, H);
    const KPoly poly = rr_integral(ring, tangent, H);
    for (int k = 0; k <= 6; ++k) {
      CHECK(poly.eval(Rational(k)) == Rational(count_monomials(n, k)));
    }
  }
}

TEST_CASE("su3 flag ring: Euler characteristic and Weyl dimensions") {
  const auto ring = CohRing::su3_flag();
  const auto x1 = FormalClass::generator(&ring, 0);
  const auto x2 = FormalClass::generator(&ring, 1);
  const std::vector<FormalClass> tangent{x1 - x2, x1 + x2 * KPoly(rat(2)),
                                         x1 * KPoly(rat(2)) + x2};

  // chi(O) = 1: the Todd class integrates to one
  CHECK(todd_sum(&ring, tangent).integrate() == KPoly(rat(1)));

  // the top Chern class integrates to the Weyl group order
  const auto euler = (x1 - x2) * (x1 + x2 * KPoly(rat(2))) * (x1 * KPoly(rat(2)) + x2);
  CHECK(euler.integrate() == KPoly(rat(6)));

  // dominant weights: the polynomial at k = 1 is the Weyl dimension
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      const auto line = FormalClass::combination(&ring, {rat(m + n), rat(n)});
      const KPoly chi = rr_integral(ring, tangent, line);
      const Rational want = rat((m + 1) * (n + 1) * (m + n + 2), 2);
      CHECK(chi.eval(Rational(1)) == want);
    }
}

TEST_CASE("form-level conjugation identity integrates equally") {
  // projective line, negative weight -m: tangent root 2H flips, twist is 2H
  {
    const auto ring = CohRing::projective(1);
    const auto H = FormalClass::generator(&ring, 0);
    const auto twoH = H * KPoly(rat(2));
    const auto line = H * KPoly(rat(-3));  // L_{-3}
    const KPoly lhs = rr_integral(ring, {twoH}, line);
    const KPoly rhs = rr_integral(ring, {FormalClass(&ring) - twoH}, line, twoH);
    CHECK(lhs == rhs);
    // signed interpretation: dim H^1(O(-3k)) = (-1)^1 * chi = 3k - 1
    CHECK(signed_dimension(lhs, 1).str() == "3*k - 1");
    CHECK(signed_dimension(lhs, 0) == lhs);
  }
  // su3 flag with the index-2 weight (2, -5)
  {
    const auto ring = CohRing::su3_flag();
    const auto x1 = FormalClass::generator(&ring, 0);
    const auto x2 = FormalClass::generator(&ring, 1);
    const auto r1 = x1 - x2;
    const auto r2 = x1 + x2 * KPoly(rat(2));
    const auto r3 = x1 * KPoly(rat(2)) + x2;
    const auto line = FormalClass::combination(&ring, {rat(-3), rat(-5)});  // c1(L_{(2,-5)})
    const KPoly lhs = rr_integral(ring, {r1, r2, r3}, line);
    // pairings of (2,-5) with (a1, a2, a1+a2) are (2, -5, -3): flip r2, r3
    const auto zero = FormalClass(&ring);
    const KPoly rhs = rr_integral(ring, {r1, zero - r2, zero - r3}, line, r2 + r3);
    CHECK(lhs == rhs);
    // index 2: chi = (+1) dim H^2, which is 6 at k = 1
    CHECK(signed_dimension(lhs, 2).eval(Rational(1)) == Rational(6));
  }
}

TEST_CASE("ring presentations validate and round-trip") {
  const auto ring = CohRing::su3_flag();
  const auto back = CohRing::from_json(ring.to_json());
  CHECK(back.generator_names == ring.generator_names);
  CHECK(back.top_degree == ring.top_degree);
  CHECK(back.top_monomial == ring.top_monomial);
  REQUIRE(back.relations.size() == ring.relations.size());

  CohRing bad = ring;
  bad.top_monomial = {1, 0};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("k-polynomial arithmetic") {
  const KPoly k = KPoly::variable();
  const KPoly p = k * k + k * KPoly(rat(3)) + KPoly(rat(2));
  CHECK(p.eval(rat(5)) == rat(42));
  CHECK(p.str() == "k^2 + 3*k + 2");
  CHECK((p - p).is_zero());
  CHECK(KPoly(rat(0)).str() == "0");
}
