#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "bergmanlab/polynomial.hpp"

namespace bergmanlab::models {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

enum class ModelId { Fock, FockMixed, P1 };

std::string model_name(ModelId id);
ModelId model_from_name(const std::string& name);

/// Finite family of model sections. Fock bases are the monomials of total
/// degree <= degree in the holomorphic (or sign-conjugated) coordinates; the
/// projective model uses the k+1 affine-chart monomials.
struct SectionBasis {
  ModelId model = ModelId::Fock;
  int k = 1;
  VectorXd lambda;  // diagonal weight data; signed for FockMixed
  int degree = 12;  // truncation degree (Fock family only)

  int dimension() const;  // count of sections
  int variables() const { return model == ModelId::P1 ? 1 : static_cast<int>(lambda.size()); }
};

/// Tensor polar quadrature: Gauss-Legendre radially (on [0, radius] for the
/// Fock family, compactified to the whole plane for P1), equispaced
/// angularly. radius <= 0 selects the radius from the weight scale and the
/// truncation degree so the discarded Gaussian tail is negligible.
struct QuadratureSpec {
  int radial = 64;
  int angular = 48;
  double radius = 0.0;

  QuadratureSpec doubled() const { return {2 * radial, 2 * angular, radius}; }
};

struct GramMatrix {
  MatrixXcd G;
  double condition = 0.0;
  double hermitian_defect = 0.0;
};

/// Reduced Bargmann-Fock kernel for positive diagonal weights:
///   prod_j (2 k lambda_j / pi) exp(k lambda_j (2 z_j conj(w_j) - |z_j|^2 - |w_j|^2)).
Complex fock_kernel_exact(const VectorXd& lambda, int k, const std::vector<Complex>& z,
                          const std::vector<Complex>& w);

struct HarmonicKernelValue {
  Complex value{0.0, 0.0};
  bool trivial = false;            // requested degree carries no harmonic forms
  std::vector<int> form_index;     // directions carrying the rank-one form factor
};

/// Scalar coefficient of the rank-one harmonic (0,q)-kernel for a mixed
/// signature diagonal weight; non-trivial only at q = n_minus, where the
/// negative directions enter through conjugated coordinates.
HarmonicKernelValue fock_harmonic_kernel(const VectorXd& lambda, int k,
                                         const std::vector<Complex>& z,
                                         const std::vector<Complex>& w, int q);

/// Reduced projection kernel of O(k) -> P1 with Fubini-Study data, affine chart:
///   ((k+1)/pi) (1 + z conj(w))^k (1+|z|^2)^{-k/2} (1+|w|^2)^{-k/2}.
Complex p1_kernel_exact(int k, Complex z, Complex w);

GramMatrix gram_matrix(const SectionBasis& basis, const QuadratureSpec& quad);

/// Kernel through the Gram route:
///   sum_{ij} s_i(x) (G^{-1})_{ij} conj(s_j(y)) e^{-k phi(x) - k phi(y)}.
Complex gram_bergman(const SectionBasis& basis, const QuadratureSpec& quad,
                     const std::vector<Complex>& x, const std::vector<Complex>& y);

/// Same, with a precomputed Gram factorization for repeated evaluation.
class GramKernel {
 public:
  GramKernel(const SectionBasis& basis, const QuadratureSpec& quad);
  Complex operator()(const std::vector<Complex>& x, const std::vector<Complex>& y) const;
  const GramMatrix& gram() const { return gram_; }
  int dimension() const { return basis_.dimension(); }

 private:
  SectionBasis basis_;
  GramMatrix gram_;
  Eigen::LDLT<MatrixXcd> solver_;
  std::vector<std::vector<int>> indices_;
};

/// Max residual of the reproducing property over the basis sections at x,
/// one-variable models: | integral K(x,y) s(y) e^{-2k phi(y)} dV(y) - s(x) |.
double reproducing_residual(const SectionBasis& basis, const QuadratureSpec& quad,
                            const std::vector<Complex>& x);

struct ExpansionFit {
  double n_hat = 0.0;
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double residual = 0.0;  // max abs log-residual of the fit
};

/// Fit of diagonal samples K(k) against k^n (b0 + b1/k + b2/k^2).
ExpansionFit expansion_fit(const std::vector<int>& ks, const std::vector<double>& values);

struct DecayFit {
  double re_psi_hat = 0.0;      // k-linear rate of the normalized off-diagonal modulus
  double quadratic_coeff = 0.0; // rate / |x-y|^2
  int excluded = 0;             // samples below the underflow floor
};

/// Rate fit of log |normalized kernel| over a k-sweep; values are the
/// normalized samples K(x,y)/sqrt(K(x,x) K(y,y)).
DecayFit offdiag_decay(const std::vector<int>& ks, const std::vector<Complex>& normalized,
                       double separation_sq);

struct ProjectorReport {
  double idempotency = 0.0;   // ||P^2 - P||_2
  double self_adjointness = 0.0;  // ||P* - P||_2
  double trace_error = 0.0;   // |trace(P) - dim|
  int rank = 0;
  int dim = 0;
};

/// Discretized projector checks via symmetric Nystrom quadrature,
/// one-variable models.
ProjectorReport projector_checks(const SectionBasis& basis, const QuadratureSpec& quad);

/// Fubini-Study volume and diagonal trace by quadrature.
double p1_volume(const QuadratureSpec& quad);
double p1_trace(int k, const QuadratureSpec& quad);

/// Smallest truncation degree D >= 4 + 2 k lambda R^2 whose Gaussian tail
/// bound (2 k lambda R^2)^D / D! stays below `tail` on the tested radius R.
int recommended_truncation(int k, double lambda_max, double tested_radius, double tail = 1e-12);

/// Gauss-Legendre rule on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace bergmanlab::models
