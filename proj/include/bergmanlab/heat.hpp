#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bergmanlab/polynomial.hpp"

namespace bergmanlab::heat {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

/// Quadratic normal form of the characteristic geometry for Levi eigenvalues
/// mu: reduced canonical coordinates (x, eta) on R^n x R^n in which the
/// characteristic variety is the origin and
///   p0(x, eta) = sum_j |mu_j| (x_j^2 + eta_j^2).
/// The flow matrix M generates the phase flow exp(tM) on the complexified
/// (x, eta) block; spectrum {+-2 mu_j}.
struct QuadraticModel {
  std::vector<double> mu;
  MatrixXcd M;  // 2n x 2n, Hermitian in this normal form

  int n() const { return static_cast<int>(mu.size()); }
  /// The underlying potential sum_j mu_j |z_j|^2.
  WeightFunction weight() const;
  /// Principal symbol sum_j |q_j|^2 on the (z, zeta) phase space.
  PolySymbol p0_symbol() const;
};

/// Quadratic generating function psi(x, eta) = x^T A x / 2 + x^T B eta + eta^T C eta / 2.
/// time < 0 encodes t = infinity.
struct QuadraticPhase {
  MatrixXcd A, B, C;
  double time = 0.0;

  int n() const { return static_cast<int>(A.rows()); }
  Complex eval(const VectorXcd& x, const VectorXcd& eta) const;
  /// Full Hessian [[A, B], [B^T, C]].
  MatrixXcd hessian() const;
  MatrixXd im_hessian() const;
  /// Max abs coefficient difference.
  double dist(const QuadraticPhase& other) const;
};

/// Outgoing / incoming invariant subspaces of the flow, as column spans in
/// the complexified reduced phase space C^{2n}. The outgoing space J_plus is
/// fixed by the decay test under the backward flow exp(-tM); it carries the
/// graph of the limit phase differential. J_minus is its conjugate.
struct StablePair {
  MatrixXcd J_plus;   // 2n x n
  MatrixXcd J_minus;  // 2n x n
};

QuadraticModel build_model(const std::vector<double>& mu);

/// Riccati integration of the eikonal equation
///   i d_t psi + p0(x, psi_x) = 0,  psi(0) = x . eta
/// by a fixed-step explicit RK4 scheme.
QuadraticPhase evolve_phase(const QuadraticModel& model, double t, double step = 1e-3);

/// Same phase through the exact route: generating function of exp(tM).
QuadraticPhase flow_phase(const QuadraticModel& model, double t);

StablePair stable_subspaces(const QuadraticModel& model);

/// Limit phase from the graph generating function of the limiting canonical
/// relation J_plus x J_minus.
QuadraticPhase phase_limit(const QuadraticModel& model);

/// Model symplectic pairing on C^{2n}: sigma(u, w) = sum_j (eta_u,j x_w,j - x_u,j eta_w,j).
Complex symplectic_form(const VectorXcd& u, const VectorXcd& w);

/// Two-point kernel phase on the model base C^n: the stationary value in eta
/// of psi(inf, x, eta) - y . eta for the full (base = C^n) quadratic model,
/// multiplied by i. For the positive model with phi = sum lambda_j |z_j|^2 it
/// equals sum_j lambda_j (2 z_j conj(w_j) - |z_j|^2 - |w_j|^2); negative
/// directions enter through their conjugated coordinates.
Complex kernel_phase(const QuadraticModel& model, const std::vector<Complex>& x,
                     const std::vector<Complex>& y);

/// Decay-rate spectrum of the first transport flow on (0,q)-forms; equals the
/// subprincipal spectrum of the eigenvalue list.
std::vector<double> amplitude_decay_rates(const QuadraticModel& model, int q);

struct RateFit {
  double rate = 0.0;       // decay exponent, positive when converging
  double residual = 0.0;   // max abs regression residual on log-distances
};

/// Least-squares exponential fit of ||psi(t) - psi(inf)|| over [t_lo, t_hi].
RateFit convergence_rate(const QuadraticModel& model, double t_lo = 1.0, double t_hi = 6.0,
                         double dt = 0.25);

/// Extract the generating function blocks (A, B, C) of a linear canonical
/// relation given by the column span of `basis` (4m x 2m), rows ordered as
/// (u_final, p_final, u_initial, p_initial).
QuadraticPhase generating_from_relation(const MatrixXcd& basis, int m);

}  // namespace bergmanlab::heat
