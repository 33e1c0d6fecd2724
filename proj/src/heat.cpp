#include "bergmanlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bergmanlab/geometry.hpp"

namespace bergmanlab::heat {

namespace {

const Complex kI{0.0, 1.0};

MatrixXcd matrix_exp_hermitian(const MatrixXcd& M, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solve failed");
  Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd e(lam.size());
  for (int i = 0; i < lam.size(); ++i) e(i) = std::exp(t * lam(i));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Complex QuadraticPhase::eval(const VectorXcd& x, const VectorXcd& eta) const {
  return 0.5 * (x.transpose() * A * x)(0, 0) + (x.transpose() * B * eta)(0, 0) +
         0.5 * (eta.transpose() * C * eta)(0, 0);
}

MatrixXcd QuadraticPhase::hessian() const {
  const int m = n();
  MatrixXcd H(2 * m, 2 * m);
  H.topLeftCorner(m, m) = A;
  H.topRightCorner(m, m) = B;
  H.bottomLeftCorner(m, m) = B.transpose();
  H.bottomRightCorner(m, m) = C;
  return H;
}

MatrixXd QuadraticPhase::im_hessian() const { return hessian().imag(); }

double QuadraticPhase::dist(const QuadraticPhase& other) const {
  double d = (A - other.A).cwiseAbs().maxCoeff();
  d = std::max(d, (B - other.B).cwiseAbs().maxCoeff());
  d = std::max(d, (C - other.C).cwiseAbs().maxCoeff());
  return d;
}

WeightFunction QuadraticModel::weight() const {
  std::vector<WeightFunction::Term> terms;
  for (int j = 0; j < n(); ++j) {
    std::vector<int> zp(n(), 0), zbp(n(), 0);
    zp[j] = 1;
    zbp[j] = 1;
    terms.push_back({zp, zbp, Complex{mu[j], 0.0}});
  }
  return WeightFunction(n(), terms);
}

PolySymbol QuadraticModel::p0_symbol() const {
  using V = PolySymbol::Var;
  PolySymbol acc(n());
  for (int j = 0; j < n(); ++j) {
    PolySymbol qj = PolySymbol::variable(n(), V::ZetaBar, j) * Complex{0.0, 0.5} +
                    PolySymbol::variable(n(), V::Z, j) * Complex{mu[j], 0.0};
    acc = acc + qj.conjugate() * qj;
  }
  return acc;
}

QuadraticModel build_model(const std::vector<double>& mu) {
  const int n = static_cast<int>(mu.size());
  if (n == 0) throw std::invalid_argument("empty eigenvalue list");
  for (double m : mu)
    if (m == 0.0)
      throw std::invalid_argument("zero curvature eigenvalue: characteristic variety not symplectic");
  QuadraticModel model;
  model.mu = mu;
  MatrixXcd M = MatrixXcd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(mu[j]);
    M(j, n + j) = -2.0 * kI * a;
    M(n + j, j) = 2.0 * kI * a;
  }
  model.M = M;
  return model;
}

QuadraticPhase evolve_phase(const QuadraticModel& model, double t, double step) {
  if (t < 0) throw std::invalid_argument("negative time");
  if (step <= 0) throw std::invalid_argument("non-positive step");
  const int n = model.n();
  Eigen::VectorXd d(n);
  for (int j = 0; j < n; ++j) d(j) = std::abs(model.mu[j]);
  const MatrixXcd D = d.cast<Complex>().asDiagonal();

  struct State {
    MatrixXcd A, B, C;
  };
  auto rhs = [&](const State& s) {
    State k;
    k.A = 2.0 * kI * (D + s.A * D * s.A);
    k.B = 2.0 * kI * (s.A * D * s.B);
    k.C = 2.0 * kI * (s.B.transpose() * D * s.B);
    return k;
  };
  State s{MatrixXcd::Zero(n, n), MatrixXcd::Identity(n, n), MatrixXcd::Zero(n, n)};
  double time = 0.0;
  while (time < t - 1e-15) {
    const double h = std::min(step, t - time);
    const State k1 = rhs(s);
    State s2{s.A + 0.5 * h * k1.A, s.B + 0.5 * h * k1.B, s.C + 0.5 * h * k1.C};
    const State k2 = rhs(s2);
    State s3{s.A + 0.5 * h * k2.A, s.B + 0.5 * h * k2.B, s.C + 0.5 * h * k2.C};
    const State k3 = rhs(s3);
    State s4{s.A + h * k3.A, s.B + h * k3.B, s.C + h * k3.C};
    const State k4 = rhs(s4);
    s.A += (h / 6.0) * (k1.A + 2.0 * k2.A + 2.0 * k3.A + k4.A);
    s.B += (h / 6.0) * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B);
    s.C += (h / 6.0) * (k1.C + 2.0 * k2.C + 2.0 * k3.C + k4.C);
    if (!s.A.allFinite() || !s.B.allFinite() || !s.C.allFinite())
      throw std::runtime_error("Riccati blow-up: caustic encountered (implementation bug for this class)");
    time += h;
  }
  QuadraticPhase out;
  out.A = s.A;
  out.B = s.B;
  out.C = s.C;
  out.time = t;
  return out;
}

QuadraticPhase flow_phase(const QuadraticModel& model, double t) {
  const int n = model.n();
  const MatrixXcd K = matrix_exp_hermitian(model.M, t);
  const MatrixXcd K11 = K.topLeftCorner(n, n);
  const MatrixXcd K12 = K.topRightCorner(n, n);
  const MatrixXcd K21 = K.bottomLeftCorner(n, n);
  // the block carries scales like cosh(2 mu t); judge invertibility by the
  // reconstruction residual, not by relative pivot thresholds
  const MatrixXcd K11inv = K11.partialPivLu().inverse();
  if (!K11inv.allFinite() ||
      (K11 * K11inv - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error("flow block not invertible");
  QuadraticPhase out;
  out.A = K21 * K11inv;
  out.B = K11inv.transpose();
  out.C = -K11inv * K12;
  out.time = t;
  return out;
}

Complex symplectic_form(const VectorXcd& u, const VectorXcd& w) {
  const int n = static_cast<int>(u.size()) / 2;
  Complex s{0.0, 0.0};
  for (int j = 0; j < n; ++j) s += u(n + j) * w(j) - u(j) * w(n + j);
  return s;
}

StablePair stable_subspaces(const QuadraticModel& model) {
  const int n = model.n();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(model.M);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solve failed");
  // Decay test under the backward flow exp(-tM): the outgoing space is the
  // one whose vectors die out as t -> -infinity.
  const MatrixXcd back1 = matrix_exp_hermitian(model.M, -1.0);
  const MatrixXcd back2 = matrix_exp_hermitian(model.M, -2.0);
  std::vector<int> outgoing;
  for (int c = 0; c < 2 * n; ++c) {
    const VectorXcd v = es.eigenvectors().col(c);
    const double r1 = (back1 * v).norm();
    const double r2 = (back2 * v).norm();
    if (r2 < r1 && r1 < 1.0) outgoing.push_back(c);
  }
  if (static_cast<int>(outgoing.size()) != n)
    throw std::runtime_error("decay test did not select an n-dimensional subspace");
  StablePair out;
  out.J_plus = MatrixXcd(2 * n, n);
  for (int c = 0; c < n; ++c) out.J_plus.col(c) = es.eigenvectors().col(outgoing[c]);
  out.J_minus = out.J_plus.conjugate();
  return out;
}

QuadraticPhase generating_from_relation(const MatrixXcd& basis, int m) {
  if (basis.rows() != 4 * m || basis.cols() != 2 * m)
    throw std::invalid_argument("relation basis must be 4m x 2m");
  MatrixXcd T(2 * m, 2 * m), S(2 * m, 2 * m);
  T.topRows(m) = basis.topRows(m);              // u_final
  T.bottomRows(m) = basis.bottomRows(m);        // p_initial
  S.topRows(m) = basis.middleRows(m, m);        // p_final
  S.bottomRows(m) = basis.middleRows(2 * m, m); // u_initial
  Eigen::FullPivLU<MatrixXcd> lu(T);
  if (!lu.isInvertible())
    throw std::runtime_error("canonical relation is not a graph over (u_final, p_initial)");
  const MatrixXcd G = S * lu.inverse();
  QuadraticPhase out;
  out.A = 0.5 * (G.topLeftCorner(m, m) + G.topLeftCorner(m, m).transpose());
  out.B = G.topRightCorner(m, m);
  out.C = 0.5 * (G.bottomRightCorner(m, m) + G.bottomRightCorner(m, m).transpose());
  const double defect =
      std::max((G.topLeftCorner(m, m) - G.topLeftCorner(m, m).transpose()).cwiseAbs().maxCoeff(),
               std::max((G.bottomRightCorner(m, m) - G.bottomRightCorner(m, m).transpose())
                            .cwiseAbs()
                            .maxCoeff(),
                        (G.bottomLeftCorner(m, m) - G.topRightCorner(m, m).transpose())
                            .cwiseAbs()
                            .maxCoeff()));
  if (defect > 1e-9) throw std::runtime_error("relation is not Lagrangian: generating blocks asymmetric");
  out.time = -1.0;
  return out;
}

QuadraticPhase phase_limit(const QuadraticModel& model) {
  const int n = model.n();
  const StablePair jp = stable_subspaces(model);
  MatrixXcd basis = MatrixXcd::Zero(4 * n, 2 * n);
  basis.topLeftCorner(2 * n, n) = jp.J_plus;
  basis.bottomRightCorner(2 * n, n) = jp.J_minus;
  QuadraticPhase out = generating_from_relation(basis, n);
  out.time = -1.0;
  return out;
}

namespace {

/// Per-direction limiting canonical relation of the full model over the base
/// C (real coordinates (x, y) with momenta (xi, eta)): columns span the
/// relation in C^8, rows ordered (x_f, y_f, xi_f, eta_f, x_i, y_i, xi_i, eta_i).
MatrixXcd full_block_relation(double lambda) {
  Eigen::Vector4cd sigma_s, sigma_u, hq, hqbar;
  sigma_s << 1.0, 0.0, 0.0, 2.0 * lambda;
  sigma_u << 0.0, 1.0, -2.0 * lambda, 0.0;
  hq << 0.5 * kI, -0.5, -lambda, -lambda * kI;
  hqbar << -0.5 * kI, -0.5, -lambda, lambda * kI;
  const Eigen::Vector4cd out_dir = lambda > 0 ? hq : hqbar;
  const Eigen::Vector4cd in_dir = lambda > 0 ? hqbar : hq;
  MatrixXcd basis = MatrixXcd::Zero(8, 4);
  basis.block<4, 1>(0, 0) = sigma_s;
  basis.block<4, 1>(4, 0) = sigma_s;
  basis.block<4, 1>(0, 1) = sigma_u;
  basis.block<4, 1>(4, 1) = sigma_u;
  basis.block<4, 1>(0, 2) = out_dir;
  basis.block<4, 1>(4, 3) = in_dir;
  return basis;
}

}  // namespace

Complex kernel_phase(const QuadraticModel& model, const std::vector<Complex>& x,
                     const std::vector<Complex>& y) {
  const int n = model.n();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("point dimension mismatch");
  Complex total{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const QuadraticPhase full = generating_from_relation(full_block_relation(model.mu[j]), 2);
    // stationary point of psi(X, H) - Y . H over the momentum label H
    Eigen::Vector2cd X, Y;
    X << x[j].real(), x[j].imag();
    Y << y[j].real(), y[j].imag();
    Eigen::FullPivLU<MatrixXcd> lu(full.C);
    if (!lu.isInvertible()) throw std::runtime_error("singular stationary system: degenerate model");
    const Eigen::Vector2cd H = lu.solve(Y - full.B.transpose() * X);
    const Complex phase = full.eval(X, H) - (Y.transpose() * H)(0, 0);
    total += kI * phase;
  }
  return total;
}

std::vector<double> amplitude_decay_rates(const QuadraticModel& model, int q) {
  std::vector<double> mu = model.mu;
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  return geometry::subprincipal_spectrum(mu, q);
}

RateFit convergence_rate(const QuadraticModel& model, double t_lo, double t_hi, double dt) {
  const QuadraticPhase limit = phase_limit(model);
  std::vector<double> ts, logs;
  for (double t = t_lo; t <= t_hi + 1e-12; t += dt) {
    const double d = flow_phase(model, t).dist(limit);
    if (d <= 0) break;
    ts.push_back(t);
    logs.push_back(std::log(d));
  }
  if (ts.size() < 3) throw std::runtime_error("not enough points for rate fit");
  const int m = static_cast<int>(ts.size());
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (int i = 0; i < m; ++i) {
    st += ts[i];
    sl += logs[i];
    stt += ts[i] * ts[i];
    stl += ts[i] * logs[i];
  }
  const double slope = (m * stl - st * sl) / (m * stt - st * st);
  const double intercept = (sl - slope * st) / m;
  RateFit fit;
  fit.rate = -slope;
  for (int i = 0; i < m; ++i)
    fit.residual = std::max(fit.residual, std::abs(intercept + slope * ts[i] - logs[i]));
  return fit;
}

}  // namespace bergmanlab::heat
