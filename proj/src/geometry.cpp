#include "bergmanlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bergmanlab::geometry {

namespace {

std::vector<int> unit_orders(int n, int j, int count = 1) {
  std::vector<int> v(n, 0);
  v[j] = count;
  return v;
}

}  // namespace

LeviMatrix levi_matrix(const WeightFunction& phi, const std::vector<Complex>& z) {
  if (!phi.is_real())
    throw std::invalid_argument("weight function is not real-valued (symmetrization defect " +
                                std::to_string(phi.symmetrization_defect()) + ")");
  const int n = phi.dimension();
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("point dimension mismatch");
  LeviMatrix out;
  out.H = MatrixXcd(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.H(j, k) = phi.derivative_at(unit_orders(n, k), unit_orders(n, j), z);
  out.hermitian_defect = (out.H - out.H.adjoint()).cwiseAbs().maxCoeff();
  return out;
}

Signature signature(const MatrixXcd& H, double tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solve failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + H.rows());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  const double scale = ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
  const double cut = tol * std::max(scale, 1e-300);
  Signature s;
  s.eigenvalues = ev;
  for (double v : ev) {
    if (std::abs(v) <= cut) s.degenerate = true;
    else if (v > 0) ++s.n_plus;
    else ++s.n_minus;
  }
  return s;
}

Signature signature(const LeviMatrix& H, double tol) { return signature(H.H, tol); }

RealPhasePoint symbol_to_real(const SymbolPoint& pt) {
  RealPhasePoint out;
  for (size_t j = 0; j < pt.z.size(); ++j) {
    out.x.push_back(pt.z[j].real());
    out.y.push_back(pt.z[j].imag());
    out.xi.push_back(pt.zeta[j].real());
    out.eta.push_back(-pt.zeta[j].imag());
  }
  return out;
}

SymbolPoint real_to_symbol(const RealPhasePoint& pt) {
  SymbolPoint out;
  for (size_t j = 0; j < pt.x.size(); ++j) {
    out.z.emplace_back(pt.x[j], pt.y[j]);
    out.zeta.emplace_back(pt.xi[j], -pt.eta[j]);
  }
  return out;
}

SymbolPoint sigma_point(const WeightFunction& phi, const std::vector<Complex>& z) {
  const int n = phi.dimension();
  SymbolPoint pt;
  pt.z = z;
  pt.zeta.resize(n);
  const Complex minus_two_i{0.0, -2.0};
  for (int j = 0; j < n; ++j)
    pt.zeta[j] = minus_two_i * phi.derivative_at(unit_orders(n, j), std::vector<int>(n, 0), z);
  return pt;
}

double p0_eval(const WeightFunction& phi, const SymbolPoint& pt) {
  const int n = phi.dimension();
  const Complex half_i{0.0, 0.5};
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex qj =
        half_i * std::conj(pt.zeta[j]) +
        phi.derivative_at(std::vector<int>(n, 0), unit_orders(n, j), pt.z);
    total += std::norm(qj);
  }
  return total;
}

PolySymbol poisson_bracket(const PolySymbol& f, const PolySymbol& g) {
  if (f.dimension() != g.dimension()) throw std::invalid_argument("bracket dimension mismatch");
  const int n = f.dimension();
  using V = PolySymbol::Var;
  PolySymbol acc(n);
  for (int j = 0; j < n; ++j) {
    acc = acc + f.derivative(V::Zeta, j) * g.derivative(V::Z, j);
    acc = acc + f.derivative(V::ZetaBar, j) * g.derivative(V::ZBar, j);
    acc = acc - f.derivative(V::Z, j) * g.derivative(V::Zeta, j);
    acc = acc - f.derivative(V::ZBar, j) * g.derivative(V::ZetaBar, j);
  }
  return acc * Complex{2.0, 0.0};
}

std::vector<double> subprincipal_spectrum(const std::vector<double>& mu, int q) {
  const int n = static_cast<int>(mu.size());
  if (q < 0 || q > n) throw std::out_of_range("form degree out of range");
  double base = 0.0;
  for (double m : mu)
    if (m < 0) base -= 2.0 * m;
  // enumerate q-subsets of {0..n-1}
  std::vector<double> out;
  std::vector<int> idx(q);
  std::iota(idx.begin(), idx.end(), 0);
  auto emit = [&]() {
    double v = base;
    for (int i : idx) v += 2.0 * mu[i];
    out.push_back(v);
  };
  if (q == 0) {
    out.push_back(base);
  } else {
    while (true) {
      emit();
      int i = q - 1;
      while (i >= 0 && idx[i] == n - q + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int t = i + 1; t < q; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FundamentalMatrixData fundamental_matrix_data(const std::vector<double>& mu) {
  FundamentalMatrixData out;
  for (double m : mu) {
    out.eigenvalues.push_back(Complex{0.0, 2.0 * m});
    out.eigenvalues.push_back(Complex{0.0, -2.0 * m});
    out.half_trace += std::abs(m);
  }
  return out;
}

MatrixXcd fix_eigenvector_gauge(const MatrixXcd& V) {
  MatrixXcd out = V;
  for (int c = 0; c < V.cols(); ++c) {
    Complex pivot = out(c, c);
    if (std::abs(pivot) < 1e-14) {
      int r;
      out.col(c).cwiseAbs().maxCoeff(&r);
      pivot = out(r, c);
    }
    if (std::abs(pivot) > 0) out.col(c) *= std::conj(pivot) / std::abs(pivot);
  }
  return out;
}

ConjugationFrame jprime_structure(const LeviMatrix& H, double tol) {
  const Signature sig = signature(H, tol);
  if (sig.degenerate) throw std::invalid_argument("degenerate Levi matrix");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H.H);
  const int n = H.dimension();
  // reorder descending so positive directions come first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
  ConjugationFrame out;
  out.frame = MatrixXcd(n, n);
  for (int c = 0; c < n; ++c) {
    out.frame.col(c) = es.eigenvectors().col(order[c]);
    const double lam = es.eigenvalues()(order[c]);
    out.eigenvalues.push_back(lam);
    out.conjugated.push_back(lam < 0);
  }
  out.frame = fix_eigenvector_gauge(out.frame);
  out.unitary_defect =
      (out.frame.adjoint() * out.frame - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

namespace {

/// Diagonalizing frame of the doubled Levi matrix at z, with eigenvalue slots
/// matched to the reference diagonal and columns gauge-fixed. Rows of the
/// returned frame are the conjugated eigenvectors (U M U^* = D convention).
MatrixXcd curvature_frame(const WeightFunction& phi, const std::vector<Complex>& z,
                          const Eigen::VectorXd& ref) {
  const LeviMatrix L = levi_matrix(phi, z);
  const MatrixXcd M2 = 2.0 * L.H;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M2);
  const int n = static_cast<int>(ref.size());
  // match each reference slot to the closest computed eigenvalue
  std::vector<int> taken(n, 0), order(n, -1);
  for (int slot = 0; slot < n; ++slot) {
    int best = -1;
    double bestd = 0.0;
    for (int c = 0; c < n; ++c) {
      if (taken[c]) continue;
      const double d = std::abs(es.eigenvalues()(c) - ref(slot));
      if (best < 0 || d < bestd) {
        best = c;
        bestd = d;
      }
    }
    order[slot] = best;
    taken[best] = 1;
  }
  MatrixXcd V(n, n);
  for (int c = 0; c < n; ++c) V.col(c) = es.eigenvectors().col(order[c]);
  V = fix_eigenvector_gauge(V);
  return V.adjoint();
}

}  // namespace

Complex nijenhuis_obstruction(const WeightFunction& phi, ObstructionMethod method, double step) {
  if (phi.dimension() != 2) throw std::invalid_argument("obstruction requires two variables");
  const std::vector<Complex> origin(2, Complex{0.0, 0.0});
  const LeviMatrix L0 = levi_matrix(phi, origin);
  if (std::abs(L0.H(0, 1)) > 1e-12 || std::abs(L0.H(1, 0)) > 1e-12)
    throw std::invalid_argument("Levi matrix not diagonal at 0; pre-rotate the frame");
  const double lam1 = 2.0 * L0.H(0, 0).real();
  const double lam2 = 2.0 * L0.H(1, 1).real();
  if (std::abs(lam1 - lam2) < 1e-12)
    throw std::invalid_argument("equal curvature eigenvalues: obstruction formula singular");

  if (method == ObstructionMethod::ClosedForm) {
    const Complex third = phi.derivative_at({2, 0}, {0, 1}, origin);
    return 2.0 * third / (lam2 - lam1);
  }

  Eigen::VectorXd ref(2);
  ref << lam1, lam2;
  auto u21 = [&](Complex z1) {
    return curvature_frame(phi, {z1, Complex{0.0, 0.0}}, ref)(1, 0);
  };
  // Wirtinger derivative d/dz_1 by central differences; exact up to O(step^2).
  const double d = step;
  const Complex dx = (u21(Complex{d, 0.0}) - u21(Complex{-d, 0.0})) / (2.0 * d);
  const Complex dy = (u21(Complex{0.0, d}) - u21(Complex{0.0, -d})) / (2.0 * d);
  return 0.5 * (dx - Complex{0.0, 1.0} * dy);
}

double commutation_check(const WeightFunction& phi, const std::vector<Complex>& z) {
  const int n = phi.dimension();
  using V = PolySymbol::Var;
  // q_i = (i/2) zetabar_i + dphi/dzbar_i as polynomial symbols
  std::vector<PolySymbol> q;
  for (int i = 0; i < n; ++i) {
    PolySymbol qi = PolySymbol::variable(n, V::ZetaBar, i) * Complex{0.0, 0.5};
    qi = qi + phi.poly().derivative(V::ZBar, i);
    q.push_back(qi);
  }
  const SymbolPoint pt = sigma_point(phi, z);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PolySymbol br = poisson_bracket(q[i], q[j].conjugate());
      const Complex lhs = Complex{0.0, 1.0} * br.eval(pt.z, pt.zeta);
      // curvature form on the frame pair: Theta(Z_i, Zbar_j) = -2 phi_{z_j zbar_i}
      const Complex rhs =
          -2.0 * phi.derivative_at([&] {
            std::vector<int> v(n, 0);
            v[j] = 1;
            return v;
          }(), [&] {
            std::vector<int> v(n, 0);
            v[i] = 1;
            return v;
          }(), z);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace bergmanlab::geometry
