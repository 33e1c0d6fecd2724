#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bergmanlab/polynomial.hpp"

namespace bergmanlab::geometry {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

/// Hermitian matrix of second mixed derivatives d^2 phi / dzbar_j dz_k.
/// The curvature two-form matrix is twice this; every operation that needs
/// the curvature normalization multiplies by 2 at the point of use.
struct LeviMatrix {
  MatrixXcd H;
  double hermitian_defect = 0.0;  // max |H - H^*| entry

  int dimension() const { return static_cast<int>(H.rows()); }
};

struct Signature {
  int n_minus = 0;
  int n_plus = 0;
  std::vector<double> eigenvalues;  // sorted descending, positives first
  bool degenerate = false;
};

/// Point of T*X in the (z, zeta) identification, zeta_j = xi_j - i eta_j.
struct SymbolPoint {
  std::vector<Complex> z;
  std::vector<Complex> zeta;
};

/// The same point in real coordinates (x, y; xi, eta), z = x + iy.
struct RealPhasePoint {
  std::vector<double> x, y, xi, eta;
};

RealPhasePoint symbol_to_real(const SymbolPoint& pt);
SymbolPoint real_to_symbol(const RealPhasePoint& pt);

/// Unitary frame diagonalizing the Levi matrix together with the mask of
/// directions that get conjugated (the negative eigendirections); the
/// conjugated structure has positive definite curvature diag(|lambda_i|).
struct ConjugationFrame {
  MatrixXcd frame;               // unitary, columns are eigenvectors
  std::vector<bool> conjugated;  // true on negative directions
  std::vector<double> eigenvalues;
  double unitary_defect = 0.0;
};

LeviMatrix levi_matrix(const WeightFunction& phi, const std::vector<Complex>& z);

Signature signature(const MatrixXcd& H, double tol = 1e-10);
Signature signature(const LeviMatrix& H, double tol = 1e-10);

/// The point of the characteristic variety over z: zeta_j = (2/i) dphi/dz_j.
SymbolPoint sigma_point(const WeightFunction& phi, const std::vector<Complex>& z);

/// Principal symbol p0 = sum_j |q_j|^2 with q_j = (i/2) conj(zeta_j) + dphi/dzbar_j,
/// in the trivial frame. Non-negative; vanishes exactly on the characteristic variety.
double p0_eval(const WeightFunction& phi, const SymbolPoint& pt);

/// Poisson bracket {f,g} of polynomial symbols in the (z, zeta) coordinates:
///   {f,g} = 2[(f_zeta . g_z + f_zetabar . g_zbar) - (f_z . g_zeta + f_zbar . g_zetabar)].
PolySymbol poisson_bracket(const PolySymbol& f, const PolySymbol& g);

/// Eigenvalues of the subprincipal part on (0,q)-forms:
///   -2 sum_{j>n_plus} mu_j + 2(mu_{j1} + ... + mu_{jq}),  j1 < ... < jq.
/// Input mu must be sorted with the positive entries first.
std::vector<double> subprincipal_spectrum(const std::vector<double>& mu, int q);

struct FundamentalMatrixData {
  std::vector<Complex> eigenvalues;  // multiset {+-2 i mu_j}
  double half_trace = 0.0;           // sum |mu_j|
};
FundamentalMatrixData fundamental_matrix_data(const std::vector<double>& mu);

ConjugationFrame jprime_structure(const LeviMatrix& H, double tol = 1e-10);

enum class ObstructionMethod { ClosedForm, FiniteDifference };

/// Non-integrability obstruction of the conjugated structure on C^2 with
/// index-1 curvature diagonal at 0: the z_1-derivative of the (2,1) entry of
/// the diagonalizing frame, equal in closed form to
///   2 d^3 phi / dz_1 dz_1 dzbar_2 (0) / (lambda_2 - lambda_1),
/// lambda_i = twice the Levi eigenvalues.
Complex nijenhuis_obstruction(const WeightFunction& phi, ObstructionMethod method,
                              double step = 1e-4);

/// Max residual of i{q_i, qbar_j} - Theta(Z_i, Zbar_j) at the characteristic
/// point over z, trivial frame; the form evaluation gives
/// Theta(Z_i, Zbar_j) = -2 d^2 phi / dz_j dzbar_i.
double commutation_check(const WeightFunction& phi, const std::vector<Complex>& z);

/// Gauge fix for eigenvector matrices: per-column phase chosen so diagonal
/// entries are real and positive (falls back to the largest entry if the
/// diagonal one vanishes).
MatrixXcd fix_eigenvector_gauge(const MatrixXcd& V);

}  // namespace bergmanlab::geometry
