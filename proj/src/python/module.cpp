#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergmanlab/chern.hpp"
#include "bergmanlab/flag.hpp"
#include "bergmanlab/geometry.hpp"
#include "bergmanlab/heat.hpp"
#include "bergmanlab/models.hpp"

namespace py = pybind11;
using namespace bergmanlab;

namespace {

WeightFunction make_weight(int n,
                           const std::vector<std::tuple<std::vector<int>, std::vector<int>, Complex>>& terms) {
  std::vector<WeightFunction::Term> ts;
  for (const auto& [zp, zbp, c] : terms) ts.push_back({zp, zbp, c});
  return WeightFunction(n, ts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "model Bergman/Hodge kernel verification kit";

  // ---- geometry ----------------------------------------------------------
  py::class_<WeightFunction>(m, "WeightFunction")
      .def(py::init(&make_weight), py::arg("n"), py::arg("terms"))
      .def_property_readonly("n", &WeightFunction::dimension)
      .def_property_readonly("is_real", &WeightFunction::is_real)
      .def("eval", &WeightFunction::eval)
      .def("derivative_at", &WeightFunction::derivative_at)
      .def("to_json", &WeightFunction::to_json)
      .def_static("from_json", &WeightFunction::from_json);

  py::class_<geometry::LeviMatrix>(m, "LeviMatrix")
      .def_readonly("H", &geometry::LeviMatrix::H)
      .def_readonly("hermitian_defect", &geometry::LeviMatrix::hermitian_defect);

  py::class_<geometry::Signature>(m, "Signature")
      .def_readonly("n_minus", &geometry::Signature::n_minus)
      .def_readonly("n_plus", &geometry::Signature::n_plus)
      .def_readonly("eigenvalues", &geometry::Signature::eigenvalues)
      .def_readonly("degenerate", &geometry::Signature::degenerate);

  py::class_<geometry::SymbolPoint>(m, "SymbolPoint")
      .def_readonly("z", &geometry::SymbolPoint::z)
      .def_readonly("zeta", &geometry::SymbolPoint::zeta);

  py::class_<geometry::ConjugationFrame>(m, "ConjugationFrame")
      .def_readonly("frame", &geometry::ConjugationFrame::frame)
      .def_readonly("conjugated", &geometry::ConjugationFrame::conjugated)
      .def_readonly("eigenvalues", &geometry::ConjugationFrame::eigenvalues)
      .def_readonly("unitary_defect", &geometry::ConjugationFrame::unitary_defect);

  m.def("levi_matrix", &geometry::levi_matrix);
  m.def("signature",
        py::overload_cast<const geometry::LeviMatrix&, double>(&geometry::signature),
        py::arg("H"), py::arg("tol") = 1e-10);
  m.def("signature_of",
        py::overload_cast<const Eigen::MatrixXcd&, double>(&geometry::signature),
        py::arg("H"), py::arg("tol") = 1e-10);
  m.def("sigma_point", &geometry::sigma_point);
  m.def("p0_eval", &geometry::p0_eval);
  m.def("subprincipal_spectrum", &geometry::subprincipal_spectrum);
  m.def("fundamental_matrix_data", [](const std::vector<double>& mu) {
    const auto d = geometry::fundamental_matrix_data(mu);
    return py::make_tuple(d.eigenvalues, d.half_trace);
  });
  m.def("jprime_structure", &geometry::jprime_structure, py::arg("H"), py::arg("tol") = 1e-10);
  m.def("nijenhuis_obstruction",
        [](const WeightFunction& phi, const std::string& method, double step) {
          return geometry::nijenhuis_obstruction(
              phi,
              method == "closed_form" ? geometry::ObstructionMethod::ClosedForm
                                      : geometry::ObstructionMethod::FiniteDifference,
              step);
        },
        py::arg("phi"), py::arg("method") = "closed_form", py::arg("step") = 1e-4);
  m.def("commutation_check", &geometry::commutation_check);

  // ---- heat ---------------------------------------------------------------
  py::class_<heat::QuadraticModel>(m, "QuadraticModel")
      .def_readonly("mu", &heat::QuadraticModel::mu)
      .def_readonly("M", &heat::QuadraticModel::M);

  py::class_<heat::QuadraticPhase>(m, "QuadraticPhase")
      .def_readonly("A", &heat::QuadraticPhase::A)
      .def_readonly("B", &heat::QuadraticPhase::B)
      .def_readonly("C", &heat::QuadraticPhase::C)
      .def_readonly("time", &heat::QuadraticPhase::time)
      .def("im_hessian", &heat::QuadraticPhase::im_hessian)
      .def("dist", &heat::QuadraticPhase::dist);

  py::class_<heat::StablePair>(m, "StablePair")
      .def_readonly("J_plus", &heat::StablePair::J_plus)
      .def_readonly("J_minus", &heat::StablePair::J_minus);

  m.def("build_model", &heat::build_model);
  m.def("evolve_phase", &heat::evolve_phase, py::arg("model"), py::arg("t"), py::arg("step") = 1e-3);
  m.def("flow_phase", &heat::flow_phase);
  m.def("stable_subspaces", &heat::stable_subspaces);
  m.def("phase_limit", &heat::phase_limit);
  m.def("kernel_phase", &heat::kernel_phase);
  m.def("amplitude_decay_rates", &heat::amplitude_decay_rates);
  m.def("convergence_rate", [](const heat::QuadraticModel& model) {
    const auto fit = heat::convergence_rate(model);
    return py::make_tuple(fit.rate, fit.residual);
  });

  // ---- models -------------------------------------------------------------
  py::class_<models::SectionBasis>(m, "SectionBasis")
      .def(py::init([](const std::string& model, int k, const Eigen::VectorXd& lambda, int degree) {
             models::SectionBasis b;
             b.model = models::model_from_name(model);
             b.k = k;
             b.lambda = lambda;
             b.degree = degree;
             return b;
           }),
           py::arg("model"), py::arg("k"), py::arg("lambda"), py::arg("degree") = 12)
      .def_property_readonly("dimension", &models::SectionBasis::dimension);

  py::class_<models::QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init([](int radial, int angular, double radius) {
             return models::QuadratureSpec{radial, angular, radius};
           }),
           py::arg("radial") = 64, py::arg("angular") = 48, py::arg("radius") = 6.0);

  m.def("fock_kernel_exact", &models::fock_kernel_exact);
  m.def("fock_harmonic_kernel", [](const Eigen::VectorXd& lambda, int k,
                                   const std::vector<Complex>& z, const std::vector<Complex>& w,
                                   int q) {
    const auto v = models::fock_harmonic_kernel(lambda, k, z, w, q);
    return py::make_tuple(v.value, v.trivial, v.form_index);
  });
  m.def("p1_kernel_exact", &models::p1_kernel_exact);
  m.def("gram_bergman", &models::gram_bergman);
  m.def("expansion_fit", [](const std::vector<int>& ks, const std::vector<double>& values) {
    const auto f = models::expansion_fit(ks, values);
    return py::make_tuple(f.n_hat, f.b0, f.b1, f.b2, f.residual);
  });
  m.def("offdiag_decay", [](const std::vector<int>& ks, const std::vector<Complex>& normalized,
                            double sep2) {
    const auto d = models::offdiag_decay(ks, normalized, sep2);
    return py::make_tuple(d.re_psi_hat, d.quadratic_coeff, d.excluded);
  });
  m.def("projector_checks", [](const models::SectionBasis& b, const models::QuadratureSpec& q) {
    const auto r = models::projector_checks(b, q);
    py::dict out;
    out["idempotency"] = r.idempotency;
    out["self_adjointness"] = r.self_adjointness;
    out["trace_error"] = r.trace_error;
    out["rank"] = r.rank;
    out["dim"] = r.dim;
    return out;
  });
  m.def("p1_volume", &models::p1_volume);
  m.def("p1_trace", &models::p1_trace);

  // ---- chern --------------------------------------------------------------
  m.def("todd_coefficients", [](int trunc) {
    std::vector<std::string> out;
    for (const auto& c : chern::todd_coefficients(trunc)) out.push_back(c.str());
    return out;
  });
  m.def("verify_conjugate_identity",
        [](const std::vector<std::vector<std::string>>& roots, int trunc) {
          std::vector<std::vector<chern::Rational>> rows;
          for (const auto& r : roots) {
            std::vector<chern::Rational> row;
            for (const auto& v : r) row.emplace_back(v);
            rows.push_back(row);
          }
          return chern::verify_conjugate_identity(rows, trunc).str();
        });
  m.def("rr_projective", [](int n) {
    const auto ring = chern::CohRing::projective(n);
    const auto H = chern::FormalClass::generator(&ring, 0);
    std::vector<chern::FormalClass> tangent(n + 1, H);
    return chern::rr_integral(ring, tangent, H).str();
  });
  m.def("rr_su3_flag", [](long long mw, long long nw) {
    const auto ring = chern::CohRing::su3_flag();
    const auto x1 = chern::FormalClass::generator(&ring, 0);
    const auto x2 = chern::FormalClass::generator(&ring, 1);
    const std::vector<chern::FormalClass> tangent{
        x1 - x2, x1 + x2 * chern::KPoly(chern::Rational(2)),
        x1 * chern::KPoly(chern::Rational(2)) + x2};
    const auto line =
        chern::FormalClass::combination(&ring, {chern::Rational(mw + nw), chern::Rational(nw)});
    return chern::rr_integral(ring, tangent, line).str();
  });

  // ---- flag ---------------------------------------------------------------
  py::class_<flag::RootSystem>(m, "RootSystem")
      .def_static("typeA", &flag::RootSystem::typeA)
      .def_property_readonly("rank", &flag::RootSystem::rank)
      .def_property_readonly("weyl_order",
                             [](const flag::RootSystem& rs) { return rs.weyl_group().size(); })
      .def("positive_roots", &flag::RootSystem::positive_roots);

  py::class_<flag::Weight>(m, "Weight")
      .def_readonly("fund", &flag::Weight::fund)
      .def_readonly("realization_scaled", &flag::Weight::realization_scaled);

  m.def("weight", [](const flag::RootSystem& rs, const std::vector<long long>& fund) {
    return rs.weight(fund);
  });
  m.def("index_of_weight", &flag::index_of_weight);
  m.def("to_dominant", [](const flag::RootSystem& rs, const flag::Weight& w) {
    const auto d = flag::to_dominant(rs, w);
    return py::make_tuple(d.w.word, d.w.length, d.dominant);
  });
  m.def("weyl_dim", &flag::weyl_dim);
  m.def("bott_dim", [](const flag::RootSystem& rs, const flag::Weight& w, int q) {
    const auto b = flag::bott_dim(rs, w, q);
    return py::make_tuple(b.value, b.wall);
  });
  m.def("kx_minus_weight", [](const flag::RootSystem& rs, const flag::Weight& w) {
    const auto t = flag::kx_minus_weight(rs, w);
    return py::make_tuple(t.weight, t.negative_first);
  });
  m.def("curvature_index_of_weight", &flag::curvature_index_of_weight);
  m.def("monomial_count_su3_flag", &flag::monomial_count_su3_flag);
  m.def("serre_duality_check",
        [](const flag::RootSystem& rs, const flag::Weight& w, const std::vector<int>& ks) {
          const auto rep = flag::serre_duality_check(rs, w, ks);
          py::list rows;
          for (const auto& r : rep.rows)
            rows.append(py::make_tuple(r.k, r.skipped, r.lhs, r.rhs, r.equal));
          py::dict out;
          out["q"] = rep.q;
          out["word"] = rep.word;
          out["rows"] = rows;
          out["k0"] = rep.k0;
          return out;
        });

  m.attr("__version__") = "0.1.0";
}
