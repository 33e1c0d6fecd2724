#include <doctest.h>

#include <cmath>
#include <random>

#include "bergmanlab/geometry.hpp"
#include "bergmanlab/heat.hpp"

using namespace bergmanlab;
using namespace bergmanlab::heat;

namespace {

// generating function extraction from an explicit flow matrix, re-derived
// here independently of flow_phase
QuadraticPhase phase_from_flow_matrix(const Eigen::MatrixXcd& K, int n) {
  const Eigen::MatrixXcd K11 = K.topLeftCorner(n, n);
  const Eigen::MatrixXcd K12 = K.topRightCorner(n, n);
  const Eigen::MatrixXcd K21 = K.bottomLeftCorner(n, n);
  const Eigen::MatrixXcd K11inv = K11.fullPivLu().inverse();
  QuadraticPhase p;
  p.A = K21 * K11inv;
  p.B = K11inv.transpose();
  p.C = -K11inv * K12;
  return p;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  Eigen::VectorXcd e(es.eigenvalues().size());
  for (int i = 0; i < e.size(); ++i) e(i) = std::exp(t * es.eigenvalues()(i));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("model spectrum is {+-2 mu_j}") {
  const auto m1 = build_model({1.0});
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m1.M);
  std::vector<double> ev;
  for (int i = 0; i < 2; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-2.0));
  CHECK(ev[1] == doctest::Approx(2.0));
  for (int i = 0; i < 2; ++i) CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-10);

  const auto m2 = build_model({1.0, -1.0});
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es2(m2.M);
  std::vector<double> ev2;
  for (int i = 0; i < 4; ++i) ev2.push_back(es2.eigenvalues()(i).real());
  std::sort(ev2.begin(), ev2.end());
  CHECK(ev2[0] == doctest::Approx(-2.0));
  CHECK(ev2[1] == doctest::Approx(-2.0));
  CHECK(ev2[2] == doctest::Approx(2.0));
  CHECK(ev2[3] == doctest::Approx(2.0));

  // linear scaling for positive multiples
  const auto mc = build_model({2.5, -5.0});
  CHECK((mc.M - 2.5 * build_model({1.0, -2.0}).M).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS(build_model({1.0, 0.0}));
  CHECK_THROWS(build_model({}));
}

TEST_CASE("model symbol matches the geometry route") {
  const auto model = build_model({0.8, -1.3});
  const auto phi = model.weight();
  const auto p0 = model.p0_symbol();
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    geometry::SymbolPoint pt;
    for (int j = 0; j < 2; ++j) {
      pt.z.push_back(Complex{u(rng), u(rng)});
      pt.zeta.push_back(Complex{u(rng), u(rng)});
    }
    const Complex sym = p0.eval(pt.z, pt.zeta);
    CHECK(std::abs(sym.imag()) < 1e-12);
    CHECK(sym.real() == doctest::Approx(geometry::p0_eval(phi, pt)).epsilon(1e-12));
    CHECK(sym.real() >= 0.0);
  }
  // the symbol vanishes on the characteristic points of its own weight
  const auto sigma = geometry::sigma_point(phi, {Complex{0.4, -0.2}, Complex{0.1, 0.9}});
  CHECK(std::abs(p0.eval(sigma.z, sigma.zeta)) < 1e-12);
}

TEST_CASE("phase at t = 0 is exactly x . eta") {
  const auto phase = evolve_phase(build_model({1.0, -2.0}), 0.0);
  CHECK(phase.A.cwiseAbs().maxCoeff() == 0.0);
  CHECK(phase.C.cwiseAbs().maxCoeff() == 0.0);
  CHECK((phase.B - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("riccati flow matches the hyperbolic closed form") {
  // for a single unit eigenvalue: A = C = i tanh(2t), B = sech(2t)
  const auto model = build_model({1.0});
  for (double t : {0.1, 0.5, 1.7, 3.0}) {
    const auto p = evolve_phase(model, t, 1e-3);
    CHECK(std::abs(p.A(0, 0) - Complex{0.0, std::tanh(2 * t)}) < 1e-10);
    CHECK(std::abs(p.B(0, 0) - 1.0 / std::cosh(2 * t)) < 1e-10);
    CHECK(std::abs(p.C(0, 0) - Complex{0.0, std::tanh(2 * t)}) < 1e-10);
  }
}

TEST_CASE("riccati and flow-map routes agree") {
  for (const auto& mu : {std::vector<double>{1.0}, {1.0, -1.0}, {2.0, -1.0, 3.0}}) {
    const auto model = build_model(mu);
    for (double t : {0.25, 1.0, 4.0, 10.0}) {
      CHECK(evolve_phase(model, t, 1e-3).dist(flow_phase(model, t)) < 1e-8);
    }
  }
}

TEST_CASE("small-time imaginary growth is linear with two-sided bounds") {
  const auto model = build_model({1.0, -3.0, 0.5});
  double mu_min = 0.5, mu_max = 3.0;
  for (double t : {0.01, 0.05, 0.1}) {
    const auto p = flow_phase(model, t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.im_hessian());
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    CHECK(lo >= 0.5 * 2.0 * mu_min * t);
    CHECK(hi <= 2.0 * mu_max * t * 1.0001);
  }
  // derivative of the imaginary Hessian at t = 0 is positive definite
  const auto p = flow_phase(build_model({1.0}), 1e-6);
  CHECK(p.im_hessian().eigenvalues().real().minCoeff() / 1e-6 == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("imaginary Hessian stays positive semidefinite, definite for t > 0") {
  const auto model = build_model({1.5, -0.7});
  for (double t : {0.0, 0.2, 1.0, 5.0}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(flow_phase(model, t).im_hessian());
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    if (t > 0) CHECK(es.eigenvalues().minCoeff() > 0);
  }
}

TEST_CASE("semigroup law of the flow generating functions") {
  const auto model = build_model({1.0, -2.0});
  const double t = 0.7, s = 1.9;
  const Eigen::MatrixXcd prod = expm(model.M, t) * expm(model.M, s);
  const auto composed = phase_from_flow_matrix(prod, model.n());
  CHECK(composed.dist(flow_phase(model, t + s)) < 1e-8);
  CHECK(composed.dist(evolve_phase(model, t + s, 1e-3)) < 1e-8);
}

TEST_CASE("outgoing and incoming subspaces") {
  const auto model = build_model({1.0});
  const auto pair = stable_subspaces(model);
  // the outgoing line is spanned by (-i, 1), i.e. eta = i x on it
  Eigen::Vector2cd v = pair.J_plus.col(0);
  CHECK(std::abs(v(1) / v(0) - Complex{0.0, 1.0}) < 1e-10);

  // conjugation
  CHECK((pair.J_minus - pair.J_plus.conjugate()).cwiseAbs().maxCoeff() < 1e-12);

  // positivity of (1/i) sigma(v, conj v) on the outgoing space, any signature
  for (const auto& mu : {std::vector<double>{1.0}, {-1.0}, {1.0, -1.0}, {2.0, -1.0, 3.0}}) {
    const auto pr = stable_subspaces(build_model(mu));
    for (int c = 0; c < pr.J_plus.cols(); ++c) {
      const Eigen::VectorXcd w = pr.J_plus.col(c);
      const Complex s = symplectic_form(w, w.conjugate());
      CHECK((s / Complex{0.0, 1.0}).real() > 0);
      CHECK(std::abs((s / Complex{0.0, 1.0}).imag()) < 1e-12);
    }
    // sigma vanishes on pairs of outgoing vectors (involutivity)
    for (int a = 0; a < pr.J_plus.cols(); ++a)
      for (int b = 0; b < pr.J_plus.cols(); ++b)
        CHECK(std::abs(symplectic_form(pr.J_plus.col(a), pr.J_plus.col(b))) < 1e-10);
  }
}

TEST_CASE("limit phase from the limiting canonical relation") {
  const auto model = build_model({1.0});
  const auto limit = phase_limit(model);
  CHECK(std::abs(limit.A(0, 0) - Complex{0.0, 1.0}) < 1e-12);
  CHECK(std::abs(limit.B(0, 0)) < 1e-12);
  CHECK(std::abs(limit.C(0, 0) - Complex{0.0, 1.0}) < 1e-12);

  // exponential convergence with positive measured rate
  const auto fit = convergence_rate(model);
  CHECK(fit.rate > 0);
  CHECK(fit.rate == doctest::Approx(2.0).epsilon(0.05));

  // monotone decrease of the coefficient distance beyond t = 1
  double prev = 1e300;
  for (double t = 1.0; t <= 6.0 + 1e-9; t += 0.5) {
    const double d = flow_phase(model, t).dist(limit);
    CHECK(d < prev);
    prev = d;
  }

  // the mixed model converges too and the limit is integrator-independent
  const auto mixed = build_model({1.0, -1.0});
  const auto lim2 = phase_limit(mixed);
  CHECK(convergence_rate(mixed).rate > 0);
  const auto coarse = evolve_phase(mixed, 12.0, 1e-3);
  const auto fine = evolve_phase(mixed, 12.0, 5e-4);
  CHECK(coarse.dist(lim2) < 1e-8);
  CHECK(std::abs(coarse.dist(lim2) - fine.dist(lim2)) < 1e-8);

  // long-time integration reproduces the limit
  CHECK(evolve_phase(model, 40.0, 1e-3).dist(limit) < 1e-10);

  // positive definite imaginary Hessian at t = infinity
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lim2.im_hessian());
  CHECK(es.eigenvalues().minCoeff() > 0);
}

TEST_CASE("step halving moves the measured rate by less than a percent") {
  const auto model = build_model({1.0, -1.0});
  const auto limit = phase_limit(model);
  auto rate_with_step = [&](double step) {
    std::vector<double> ts, ls;
    for (double t = 1.0; t <= 5.0 + 1e-9; t += 0.5) {
      ts.push_back(t);
      ls.push_back(std::log(evolve_phase(model, t, step).dist(limit)));
    }
    const int m = static_cast<int>(ts.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (int i = 0; i < m; ++i) {
      st += ts[i];
      sl += ls[i];
      stt += ts[i] * ts[i];
      stl += ts[i] * ls[i];
    }
    return -(m * stl - st * sl) / (m * stt - st * st);
  };
  const double r1 = rate_with_step(1e-3);
  const double r2 = rate_with_step(5e-4);
  CHECK(std::abs(r1 - r2) / r1 < 0.01);
}

TEST_CASE("the limit phase differential lands in the outgoing pair") {
  for (const auto& mu : {std::vector<double>{1.0}, {1.0, -1.0}, {2.0, -0.5}}) {
    const auto model = build_model(mu);
    const auto limit = phase_limit(model);
    const auto pair = stable_subspaces(model);
    const int n = model.n();
    // graph of x -> (x, A x) must lie in span(J_plus); test by projection
    Eigen::MatrixXcd graph(2 * n, n);
    graph.topRows(n) = Eigen::MatrixXcd::Identity(n, n);
    graph.bottomRows(n) = limit.A;
    const Eigen::MatrixXcd Q = pair.J_plus.householderQr().householderQ() *
                               Eigen::MatrixXcd::Identity(2 * n, n);
    const Eigen::MatrixXcd resid = graph - Q * (Q.adjoint() * graph);
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-10);
    // likewise eta -> (C eta, eta) lies in span(J_minus)
    Eigen::MatrixXcd graph2(2 * n, n);
    graph2.topRows(n) = limit.C;
    graph2.bottomRows(n) = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd Q2 = pair.J_minus.householderQr().householderQ() *
                                Eigen::MatrixXcd::Identity(2 * n, n);
    CHECK((graph2 - Q2 * (Q2.adjoint() * graph2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("kernel phase equals the closed Gaussian form") {
  for (double lambda : {0.5, 1.0, 2.3}) {
    const auto model = build_model({lambda});
    for (Complex z : {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.4, -0.8}}) {
      for (Complex w : {Complex{0.0, 0.0}, Complex{-0.3, 0.2}, Complex{1.0, 1.0}}) {
        const Complex got = kernel_phase(model, {z}, {w});
        const Complex want =
            lambda * (2.0 * z * std::conj(w) - std::norm(z) - std::norm(w));
        CHECK(std::abs(got - want) < 1e-10);
      }
    }
  }
  // product model
  const auto m2 = build_model({0.5, 1.5});
  const std::vector<Complex> z{Complex{0.2, 0.1}, Complex{-0.7, 0.5}};
  const std::vector<Complex> w{Complex{-0.1, 0.9}, Complex{0.3, 0.0}};
  Complex want{0.0, 0.0};
  const double lams[2] = {0.5, 1.5};
  for (int j = 0; j < 2; ++j)
    want += lams[j] * (2.0 * z[j] * std::conj(w[j]) - std::norm(z[j]) - std::norm(w[j]));
  CHECK(std::abs(kernel_phase(m2, z, w) - want) < 1e-10);
}

TEST_CASE("kernel phase identities for mixed signatures") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& mu : {std::vector<double>{1.0}, {-1.0}, {1.0, -1.0}, {0.5, -2.0, 1.0}}) {
    const auto model = build_model(mu);
    const int n = model.n();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Complex> x(n), y(n);
      for (int j = 0; j < n; ++j) {
        x[j] = Complex{u(rng), u(rng)};
        y[j] = Complex{u(rng), u(rng)};
      }
      CHECK(std::abs(kernel_phase(model, x, x)) < 1e-12);
      const Complex pxy = kernel_phase(model, x, y);
      const Complex pyx = kernel_phase(model, y, x);
      CHECK(std::abs(pyx - std::conj(pxy)) < 1e-12);
      double sep = 0, mumin = 1e300;
      for (int j = 0; j < n; ++j) sep += std::norm(x[j] - y[j]);
      for (double m : mu) mumin = std::min(mumin, std::abs(m));
      CHECK(pxy.real() <= -mumin * sep + 1e-10);
      // the mixed phase is the conjugated-coordinate Gaussian form
      Complex want{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        const Complex uj = mu[j] < 0 ? std::conj(x[j]) : x[j];
        const Complex vj = mu[j] < 0 ? std::conj(y[j]) : y[j];
        want += std::abs(mu[j]) * (2.0 * uj * std::conj(vj) - std::norm(uj) - std::norm(vj));
      }
      CHECK(std::abs(pxy - want) < 1e-10);
    }
  }
}

TEST_CASE("kernel phase diagonal gradients match the weight gradients") {
  // central differences are exact for quadratics
  const std::vector<double> mu{0.8, -1.7};
  const auto model = build_model(mu);
  const double d = 1e-3;
  const std::vector<Complex> x{Complex{0.35, -0.6}, Complex{-0.2, 0.15}};
  auto first_slot = [&](int j, Complex dz) {
    std::vector<Complex> a = x, b = x;
    a[j] += dz;
    b[j] -= dz;
    return (kernel_phase(model, a, x) - kernel_phase(model, b, x)) / (2.0 * d);
  };
  for (int j = 0; j < 2; ++j) {
    const Complex dx1 = first_slot(j, Complex{d, 0.0});
    const Complex dy1 = first_slot(j, Complex{0.0, d});
    const Complex dz = 0.5 * (dx1 - Complex{0.0, 1.0} * dy1);
    const Complex dzbar = 0.5 * (dx1 + Complex{0.0, 1.0} * dy1);
    // d phi / dz_j = mu_j conj(z_j), d phi / dzbar_j = mu_j z_j
    CHECK(std::abs(dz - mu[j] * std::conj(x[j])) < 1e-9);
    CHECK(std::abs(dzbar + mu[j] * x[j]) < 1e-9);
  }
}

TEST_CASE("amplitude decay rates delegate to the subprincipal spectrum") {
  const auto model = build_model({1.0, -1.0});
  const auto r1 = amplitude_decay_rates(model, 1);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == doctest::Approx(0.0));
  CHECK(r1[1] == doctest::Approx(4.0));
  const auto r0 = amplitude_decay_rates(model, 0);
  CHECK(r0[0] == doctest::Approx(2.0));

  // transport ODE oracle: da/dt = -rate a integrates to e^{-rate t}
  for (double rate : r1) {
    double a = 1.0;
    const double h = 1e-4, T = 3.0;
    for (double t = 0; t < T - 1e-12; t += h) {
      const double k1 = -rate * a;
      const double k2 = -rate * (a + 0.5 * h * k1);
      const double k3 = -rate * (a + 0.5 * h * k2);
      const double k4 = -rate * (a + h * k3);
      a += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    CHECK(std::abs(a - std::exp(-rate * T)) < 1e-8);
  }

  // agreement across modules for random data
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.3, 2.5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<double> mu;
    for (int j = 0; j < n; ++j) mu.push_back(((rng() % 2) ? 1.0 : -1.0) * u(rng));
    const auto m = build_model(mu);
    std::vector<double> sorted(mu);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    for (int q = 0; q <= n; ++q) {
      const auto a = amplitude_decay_rates(m, q);
      const auto b = geometry::subprincipal_spectrum(sorted, q);
      REQUIRE(a.size() == b.size());
      for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
    }
  }
}

TEST_CASE("evolution error paths") {
  const auto model = build_model({1.0});
  CHECK_THROWS(evolve_phase(model, -1.0));
  CHECK_THROWS(evolve_phase(model, 1.0, 0.0));
  CHECK_THROWS(amplitude_decay_rates(model, 2));
  CHECK_THROWS(kernel_phase(model, {Complex{0, 0}, Complex{0, 0}}, {Complex{0, 0}}));
}
