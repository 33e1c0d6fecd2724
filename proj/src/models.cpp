#include "bergmanlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergmanlab::models {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::vector<int>> multi_indices(int n, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  while (true) {
    int total = 0;
    for (int v : cur) total += v;
    if (total <= max_total) out.push_back(cur);
    int j = n - 1;
    while (j >= 0) {
      ++cur[j];
      int t = 0;
      for (int v : cur) t += v;
      if (t <= max_total) break;
      cur[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int ta = 0, tb = 0;
    for (int v : a) ta += v;
    for (int v : b) tb += v;
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return out;
}

Complex ipow(Complex b, int e) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct Node {
  Complex z;
  double weight;  // quadrature weight for the model volume form
};

/// Radius covering the mass of r^{2 degree} e^{-a r^2} with ample margin.
double auto_radius(double a_weight, int degree) {
  return std::sqrt(3.0 * (degree + 10) / a_weight);
}

/// One-variable nodes integrating against Lebesgue measure on |z| <= R.
/// The angular count is raised past the working degree so no monomial
/// frequency aliases to zero.
std::vector<Node> fock_nodes(const QuadratureSpec& q, double a_weight, int degree) {
  const double R = q.radius > 0 ? q.radius : auto_radius(a_weight, degree);
  const int angular = std::max(q.angular, degree + 2);
  std::vector<double> xs, ws;
  gauss_legendre(q.radial, xs, ws);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<size_t>(q.radial) * angular);
  const double dtheta = 2.0 * kPi / angular;
  for (int i = 0; i < q.radial; ++i) {
    const double r = R * xs[i];
    const double wr = R * ws[i] * r;
    for (int a = 0; a < angular; ++a) {
      const double th = dtheta * a;
      nodes.push_back({Complex{r * std::cos(th), r * std::sin(th)}, wr * dtheta});
    }
  }
  return nodes;
}

/// One-variable nodes integrating against the Fubini-Study form on all of C,
/// radially compactified through s = tau / (1 - tau), s = r^2.
std::vector<Node> p1_nodes(const QuadratureSpec& q) {
  std::vector<double> xs, ws;
  gauss_legendre(q.radial, xs, ws);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<size_t>(q.radial) * q.angular);
  const double dtheta = 2.0 * kPi / q.angular;
  for (int i = 0; i < q.radial; ++i) {
    const double tau = xs[i];
    const double s = tau / (1.0 - tau);
    const double jac = 1.0 / ((1.0 - tau) * (1.0 - tau));
    const double r = std::sqrt(s);
    // dm = r dr dtheta = ds dtheta / 2; FS density (1+s)^{-2}
    const double wr = ws[i] * jac * 0.5 / ((1.0 + s) * (1.0 + s));
    for (int a = 0; a < q.angular; ++a) {
      const double th = dtheta * a;
      nodes.push_back({Complex{r * std::cos(th), r * std::sin(th)}, wr * dtheta});
    }
  }
  return nodes;
}

std::vector<Node> model_nodes(const SectionBasis& basis, const QuadratureSpec& quad) {
  if (basis.model == ModelId::P1) {
    QuadratureSpec q2 = quad;
    q2.angular = std::max(q2.angular, basis.k + 2);
    return p1_nodes(q2);
  }
  if (basis.variables() != 1)
    throw std::invalid_argument("node-based paths support one-variable models");
  return fock_nodes(quad, 2.0 * basis.k * std::abs(basis.lambda(0)), basis.degree);
}

/// Coordinates the sections are monomials in: identity for Fock/P1,
/// sign-conjugated for FockMixed.
Complex section_coordinate(const SectionBasis& basis, const std::vector<Complex>& z, int j) {
  if (basis.model == ModelId::FockMixed && basis.lambda(j) < 0) return std::conj(z[j]);
  return z[j];
}

double weight_phi(const SectionBasis& basis, const std::vector<Complex>& z) {
  if (basis.model == ModelId::P1) return 0.5 * std::log1p(std::norm(z[0]));
  double phi = 0.0;
  for (int j = 0; j < basis.variables(); ++j) phi += basis.lambda(j) * std::norm(z[j]);
  return phi;
}

/// Negative part of the weight, carried by the mixed-model sections.
double weight_phi_minus(const SectionBasis& basis, const std::vector<Complex>& z) {
  if (basis.model != ModelId::FockMixed) return 0.0;
  double phi = 0.0;
  for (int j = 0; j < basis.variables(); ++j)
    if (basis.lambda(j) < 0) phi += basis.lambda(j) * std::norm(z[j]);
  return phi;
}

Complex section_value(const SectionBasis& basis, const std::vector<int>& alpha,
                      const std::vector<Complex>& z) {
  Complex v{1.0, 0.0};
  for (int j = 0; j < basis.variables(); ++j) v *= ipow(section_coordinate(basis, z, j), alpha[j]);
  if (basis.model == ModelId::FockMixed)
    v *= std::exp(2.0 * basis.k * weight_phi_minus(basis, z));
  return v;
}

std::vector<std::vector<int>> basis_indices(const SectionBasis& basis) {
  if (basis.model == ModelId::P1) {
    std::vector<std::vector<int>> out;
    for (int m = 0; m <= basis.k; ++m) out.push_back({m});
    return out;
  }
  return multi_indices(basis.variables(), basis.degree);
}

/// One-dimensional weighted moment integrals I(a, b) =
/// int z^a conj(z)^b e^{-a_weight |z|^2} dm(z) by quadrature.
MatrixXcd fock_moments(double a_weight, int degree, const QuadratureSpec& quad) {
  const auto nodes = fock_nodes(quad, a_weight, degree);
  MatrixXcd I = MatrixXcd::Zero(degree + 1, degree + 1);
  for (const auto& nd : nodes) {
    const double w = nd.weight * std::exp(-a_weight * std::norm(nd.z));
    Complex za{1.0, 0.0};
    for (int a = 0; a <= degree; ++a) {
      Complex zb{1.0, 0.0};
      for (int b = 0; b <= degree; ++b) {
        I(a, b) += w * za * zb;
        zb *= std::conj(nd.z);
      }
      za *= nd.z;
    }
  }
  return I;
}

}  // namespace

std::string model_name(ModelId id) {
  switch (id) {
    case ModelId::Fock: return "fock";
    case ModelId::FockMixed: return "fock_mixed";
    case ModelId::P1: return "p1_oK";
  }
  return "unknown";
}

ModelId model_from_name(const std::string& name) {
  if (name == "fock") return ModelId::Fock;
  if (name == "fock_mixed") return ModelId::FockMixed;
  if (name == "p1_oK" || name == "p1") return ModelId::P1;
  throw std::invalid_argument("unknown model id: " + name);
}

int SectionBasis::dimension() const {
  if (model == ModelId::P1) return k + 1;
  return static_cast<int>(multi_indices(variables(), degree).size());
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate, on [-1, 1]
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = 0.5 * (x + 1.0);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(weights.begin(), weights.end());
}

Complex fock_kernel_exact(const VectorXd& lambda, int k, const std::vector<Complex>& z,
                          const std::vector<Complex>& w) {
  const int n = static_cast<int>(lambda.size());
  if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n)
    throw std::invalid_argument("point dimension mismatch");
  Complex out{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    if (lambda(j) <= 0)
      throw std::invalid_argument("fock_kernel_exact needs positive weights; use the harmonic kernel");
    const Complex expo = k * lambda(j) *
                         (2.0 * z[j] * std::conj(w[j]) - std::norm(z[j]) - std::norm(w[j]));
    out *= (2.0 * k * lambda(j) / kPi) * std::exp(expo);
  }
  return out;
}

HarmonicKernelValue fock_harmonic_kernel(const VectorXd& lambda, int k,
                                         const std::vector<Complex>& z,
                                         const std::vector<Complex>& w, int q) {
  const int n = static_cast<int>(lambda.size());
  if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n)
    throw std::invalid_argument("point dimension mismatch");
  HarmonicKernelValue out;
  int n_minus = 0;
  for (int j = 0; j < n; ++j) {
    if (lambda(j) == 0) throw std::invalid_argument("degenerate weight");
    if (lambda(j) < 0) {
      ++n_minus;
      out.form_index.push_back(j);
    }
  }
  if (q != n_minus) {
    out.trivial = true;
    out.value = Complex{0.0, 0.0};
    return out;
  }
  Complex v{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(lambda(j));
    const Complex u = lambda(j) < 0 ? std::conj(z[j]) : z[j];
    const Complex vv = lambda(j) < 0 ? std::conj(w[j]) : w[j];
    v *= (2.0 * k * a / kPi) *
         std::exp(k * a * (2.0 * u * std::conj(vv) - std::norm(u) - std::norm(vv)));
  }
  out.value = v;
  return out;
}

Complex p1_kernel_exact(int k, Complex z, Complex w) {
  if (k < 0) throw std::invalid_argument("negative power");
  const Complex base = 1.0 + z * std::conj(w);
  return ((k + 1) / kPi) * ipow(base, k) *
         std::pow(1.0 + std::norm(z), -0.5 * k) * std::pow(1.0 + std::norm(w), -0.5 * k);
}

GramMatrix gram_matrix(const SectionBasis& basis, const QuadratureSpec& quad) {
  const auto idx = basis_indices(basis);
  const int dim = static_cast<int>(idx.size());
  GramMatrix out;
  out.G = MatrixXcd::Zero(dim, dim);

  if (basis.model == ModelId::P1) {
    QuadratureSpec q2 = quad;
    q2.angular = std::max(q2.angular, basis.k + 2);
    const auto nodes = p1_nodes(q2);
    for (const auto& nd : nodes) {
      const double w = nd.weight * std::pow(1.0 + std::norm(nd.z), -basis.k);
      for (int a = 0; a < dim; ++a) {
        const Complex sa = ipow(nd.z, idx[a][0]);
        for (int b = 0; b < dim; ++b) out.G(a, b) += w * sa * std::conj(ipow(nd.z, idx[b][0]));
      }
    }
  } else {
    // separable weight: the Gram entries are products of one-dimensional
    // quadrature moments per variable
    const int n = basis.variables();
    std::vector<MatrixXcd> moments;
    for (int j = 0; j < n; ++j)
      moments.push_back(
          fock_moments(2.0 * basis.k * std::abs(basis.lambda(j)), basis.degree, quad));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Complex v{1.0, 0.0};
        for (int j = 0; j < n; ++j) v *= moments[j](idx[a][j], idx[b][j]);
        out.G(a, b) = v;
      }
  }
  out.hermitian_defect = (out.G - out.G.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (out.G + out.G.adjoint()));
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0) throw std::runtime_error("Gram matrix not positive definite");
  out.condition = hi / lo;
  if (out.condition > 1e12)
    throw std::runtime_error(
        "Gram matrix condition exceeds 1e12; use a smaller k or higher precision");
  return out;
}

GramKernel::GramKernel(const SectionBasis& basis, const QuadratureSpec& quad)
    : basis_(basis), gram_(gram_matrix(basis, quad)), indices_(basis_indices(basis)) {
  solver_.compute(gram_.G);
}

Complex GramKernel::operator()(const std::vector<Complex>& x, const std::vector<Complex>& y) const {
  const auto& idx = indices_;
  const int dim = static_cast<int>(idx.size());
  Eigen::VectorXcd sx(dim), sy(dim);
  for (int a = 0; a < dim; ++a) {
    sx(a) = section_value(basis_, idx[a], x);
    sy(a) = section_value(basis_, idx[a], y);
  }
  const Eigen::VectorXcd g = solver_.solve(sy.conjugate());
  const Complex raw = (sx.transpose() * g)(0, 0);
  return raw * std::exp(-static_cast<double>(basis_.k) *
                        (weight_phi(basis_, x) + weight_phi(basis_, y)));
}

Complex gram_bergman(const SectionBasis& basis, const QuadratureSpec& quad,
                     const std::vector<Complex>& x, const std::vector<Complex>& y) {
  return GramKernel(basis, quad)(x, y);
}

double reproducing_residual(const SectionBasis& basis, const QuadratureSpec& quad,
                            const std::vector<Complex>& x) {
  if (basis.variables() != 1)
    throw std::invalid_argument("reproducing check supports one-variable models");
  GramKernel kernel(basis, quad);
  const auto nodes = model_nodes(basis, quad);
  const auto idx = basis_indices(basis);
  double worst = 0.0;
  for (const auto& alpha : idx) {
    Complex acc{0.0, 0.0};
    for (const auto& nd : nodes) {
      const std::vector<Complex> y{nd.z};
      const Complex sred =
          section_value(basis, alpha, y) * std::exp(-static_cast<double>(basis.k) * weight_phi(basis, y));
      acc += kernel(x, y) * sred * nd.weight;
    }
    const Complex expected = section_value(basis, alpha, x) *
                             std::exp(-static_cast<double>(basis.k) * weight_phi(basis, x));
    worst = std::max(worst, std::abs(acc - expected));
  }
  return worst;
}

ExpansionFit expansion_fit(const std::vector<int>& ks, const std::vector<double>& values) {
  if (ks.size() != values.size()) throw std::invalid_argument("sample size mismatch");
  if (ks.size() < 6) throw std::invalid_argument("need at least 6 powers");
  for (double v : values)
    if (!(v > 0)) throw std::invalid_argument("non-positive diagonal sample");
  const int m = static_cast<int>(ks.size());

  auto fit_b = [&](double n, double* b) {
    // linear least squares for B(k) = b0 + b1/k + b2/k^2 against values/k^n
    Eigen::MatrixXd V(m, 3);
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      const double k = ks[i];
      V(i, 0) = 1.0;
      V(i, 1) = 1.0 / k;
      V(i, 2) = 1.0 / (k * k);
      r(i) = values[i] * std::pow(k, -n);
    }
    const Eigen::Vector3d sol = (V.transpose() * V).ldlt().solve(V.transpose() * r);
    for (int j = 0; j < 3; ++j) b[j] = sol(j);
    double sse = 0.0;
    for (int i = 0; i < m; ++i) {
      const double k = ks[i];
      const double pred = sol(0) + sol(1) / k + sol(2) / (k * k);
      const double logres =
          pred > 0 ? std::log(values[i]) - n * std::log(k) - std::log(pred) : 1e9;
      sse += logres * logres;
    }
    return sse;
  };

  // The family k^n (b0 + b1/k + b2/k^2) is shift-degenerate: raising n by
  // one and sliding the coefficients fits equally well whenever the tail
  // coefficient is free. Report the smallest growth order reaching the
  // minimal residual: scan a grid, then bisect the left edge of the
  // near-minimal set.
  double b[3];
  const double step = 0.05;
  std::vector<double> grid, sses;
  double sse_min = 1e300;
  for (double n = 0.0; n <= 8.0 + 1e-9; n += step) {
    grid.push_back(n);
    sses.push_back(fit_b(n, b));
    sse_min = std::min(sse_min, sses.back());
  }
  const double floor_sse = std::max(4.0 * sse_min, 1e-18);
  size_t first = 0;
  while (first < sses.size() && sses[first] > floor_sse) ++first;
  if (first == sses.size()) throw std::runtime_error("expansion fit did not converge");
  double lo = first == 0 ? 0.0 : grid[first - 1];
  double hi = grid[first];
  for (int it = 0; it < 80 && first > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fit_b(mid, b) <= floor_sse) hi = mid;
    else lo = mid;
  }
  ExpansionFit out;
  out.n_hat = hi;
  const double sse = fit_b(out.n_hat, b);
  out.b0 = b[0];
  out.b1 = b[1];
  out.b2 = b[2];
  out.residual = std::sqrt(sse / m);
  return out;
}

DecayFit offdiag_decay(const std::vector<int>& ks, const std::vector<Complex>& normalized,
                       double separation_sq) {
  if (ks.size() != normalized.size()) throw std::invalid_argument("sample size mismatch");
  if (ks.size() < 6) throw std::invalid_argument("need at least 6 powers");
  std::vector<double> xs, ys;
  DecayFit out;
  for (size_t i = 0; i < ks.size(); ++i) {
    const double mod = std::abs(normalized[i]);
    if (mod < 1e-300) {
      ++out.excluded;
      continue;
    }
    xs.push_back(ks[i]);
    ys.push_back(std::log(mod));
  }
  if (xs.size() < 3) throw std::runtime_error("too few usable samples after underflow exclusion");
  const int m = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  out.re_psi_hat = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  out.quadratic_coeff = separation_sq > 0 ? out.re_psi_hat / separation_sq : 0.0;
  return out;
}

ProjectorReport projector_checks(const SectionBasis& basis, const QuadratureSpec& quad) {
  if (basis.variables() != 1)
    throw std::invalid_argument("projector checks support one-variable models");
  // assembly Gram from a finer rule than the node set, so the projector
  // residuals measure a genuine quadrature reproduction error
  const GramMatrix fine = gram_matrix(basis, quad.doubled());
  const auto nodes = model_nodes(basis, quad);
  const auto idx = basis_indices(basis);
  const int dim = static_cast<int>(idx.size());
  const int N = static_cast<int>(nodes.size());

  // discretized projector P = S M S^* with M = G^{-1} and S the row-scaled
  // section values sqrt(w_i) e^{-k phi(x_i)} s_a(x_i); every spectral
  // quantity of P lives on the rank-dim factor T = H^{1/2} M H^{1/2},
  // H = S^* S the node Gram
  MatrixXcd S(N, dim);
  for (int i = 0; i < N; ++i) {
    const std::vector<Complex> z{nodes[i].z};
    const double scale =
        std::sqrt(nodes[i].weight) * std::exp(-static_cast<double>(basis.k) * weight_phi(basis, z));
    for (int a = 0; a < dim; ++a) S(i, a) = scale * section_value(basis, idx[a], z);
  }
  const MatrixXcd H = S.adjoint() * S;
  const MatrixXcd M = fine.G.ldlt().solve(MatrixXcd::Identity(dim, dim));

  Eigen::SelfAdjointEigenSolver<MatrixXcd> esH(0.5 * (H + H.adjoint()));
  Eigen::VectorXd hev = esH.eigenvalues();
  for (int i = 0; i < dim; ++i)
    if (hev(i) < 0) hev(i) = 0;
  const MatrixXcd Hhalf =
      esH.eigenvectors() * hev.cwiseSqrt().asDiagonal() * esH.eigenvectors().adjoint();
  const MatrixXcd T = Hhalf * M * Hhalf;

  ProjectorReport rep;
  rep.dim = dim;
  // departure of M (hence P) from self-adjointness, in the same metric
  const MatrixXcd skew = Hhalf * (M - M.adjoint()) * Hhalf;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> esSkew(skew * Complex{0.0, 1.0});
  rep.self_adjointness = esSkew.eigenvalues().cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<MatrixXcd> esT(0.5 * (T + T.adjoint()));
  double worst = 0.0;
  double trace = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double t = esT.eigenvalues()(i);
    worst = std::max(worst, std::abs(t * t - t));
    trace += t;
    if (t >= 0.5) ++rep.rank;
  }
  rep.idempotency = worst;
  rep.trace_error = std::abs(trace - dim);
  return rep;
}

double p1_volume(const QuadratureSpec& quad) {
  double v = 0.0;
  for (const auto& nd : p1_nodes(quad)) v += nd.weight;
  return v;
}

double p1_trace(int k, const QuadratureSpec& quad) {
  double t = 0.0;
  for (const auto& nd : p1_nodes(quad)) t += nd.weight * p1_kernel_exact(k, nd.z, nd.z).real();
  return t;
}

int recommended_truncation(int k, double lambda_max, double tested_radius, double tail) {
  const double a = 2.0 * k * lambda_max * tested_radius * tested_radius;
  int d = static_cast<int>(std::ceil(4.0 + a));
  double term = 1.0;
  for (int i = 1; i <= d; ++i) term *= a / i;
  while (!(term < tail) && d < 400) {
    ++d;
    term *= a / d;
  }
  return d;
}

}  // namespace bergmanlab::models
