#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polydet/cone.hpp"
#include "polydet/config.hpp"
#include "polydet/golden.hpp"
#include "polydet/highergenus.hpp"
#include "polydet/special_fn.hpp"
#include "polydet/surface_pack.hpp"
#include "polydet/torus.hpp"
#include "polydet/variation.hpp"

namespace py = pybind11;
using namespace polydet;

namespace {

ThetaCharacteristic characteristic(const std::vector<double>& a, const std::vector<double>& b) {
    ThetaCharacteristic ch{a, b};
    ch.validate();
    return ch;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "zeta-regularized determinants for flat conical metrics";
    m.attr("__version__") = POLYDET_VERSION;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def(
        "jacobi_theta",
        [](double a, double b, cplx z, cplx B, bool derivative) {
            const ThetaCharacteristic ch{{a}, {b}};
            return derivative ? jacobi_theta_z_derivative(ch, z, {B}) : jacobi_theta(ch, z, {B});
        },
        py::arg("a"), py::arg("b"), py::arg("z"), py::arg("B"), py::arg("derivative") = false);
    m.def(
        "riemann_theta",
        [](const Eigen::VectorXcd& z, const Eigen::MatrixXcd& B, const std::vector<double>& a,
           const std::vector<double>& b) {
            PeriodMatrix pm{B};
            pm.validate();
            return riemann_theta(z, pm, characteristic(a, b));
        },
        py::arg("z"), py::arg("B"), py::arg("a"), py::arg("b"));
    m.def("dedekind_eta", [](cplx B) { return dedekind_eta({B}); }, py::arg("B"));
    m.def("macdonald_k0", py::overload_cast<cplx>(&macdonald_k0), py::arg("w"));

    py::class_<SpectralCoefficients>(m, "SpectralCoefficients")
        .def_readonly("I", &SpectralCoefficients::I)
        .def_readonly("Itilde", &SpectralCoefficients::Itilde)
        .def_readonly("d", &SpectralCoefficients::d);
    m.def("spectral_coefficients", &spectral_coefficients, py::arg("beta"));
    m.def("coefficient_I", &coefficient_I, py::arg("beta"));
    m.def("coefficient_Itilde", &coefficient_Itilde, py::arg("beta"));
    m.def("coefficient_d", &coefficient_d, py::arg("beta"), py::arg("torus_mode") = false,
          py::arg("theta_prime_abs") = 0.0);
    m.def(
        "cone_heat_kernel",
        [](double t, double beta, std::pair<double, double> x, std::pair<double, double> xp) {
            return cone_heat_kernel(t, beta, {x.first, x.second}, {xp.first, xp.second});
        },
        py::arg("t"), py::arg("beta"), py::arg("x"), py::arg("xp"));
    m.def("a_mu", &a_mu, py::arg("r"), py::arg("beta"), py::arg("mu"));

    py::class_<ConeFit>(m, "ConeFit")
        .def_readonly("I_est", &ConeFit::I_est)
        .def_readonly("Itilde_est", &ConeFit::Itilde_est)
        .def_readonly("slope", &ConeFit::slope)
        .def_readonly("slope_expected", &ConeFit::slope_expected)
        .def_readonly("residual", &ConeFit::residual);
    m.def(
        "coefficient_I_numeric",
        [](double beta, const std::vector<double>& mu_list, double eps) {
            py::gil_scoped_release nogil;
            return coefficient_I_numeric(beta, mu_list, eps);
        },
        py::arg("beta"), py::arg("mu_list") = std::vector<double>{-100, -200, -400}, py::arg("eps") = 0.5);

    py::class_<DivisorPoint>(m, "DivisorPoint")
        .def(py::init([](cplx P, double b) { return DivisorPoint{P, b}; }), py::arg("P"), py::arg("b"))
        .def_readwrite("P", &DivisorPoint::P)
        .def_readwrite("b", &DivisorPoint::b);

    py::class_<TorusMetricSpec>(m, "TorusMetricSpec")
        .def(py::init([](cplx B, std::vector<DivisorPoint> pts, double C) {
                 TorusMetricSpec s{{B}, std::move(pts), C};
                 s.validate();
                 return s;
             }),
             py::arg("B"), py::arg("points") = std::vector<DivisorPoint>{}, py::arg("C") = 1.0)
        .def_property_readonly("B", [](const TorusMetricSpec& s) { return s.B.B; })
        .def_readonly("points", &TorusMetricSpec::points)
        .def_readonly("C", &TorusMetricSpec::C)
        .def("betas", &TorusMetricSpec::betas);

    py::class_<DetResult>(m, "DetResult")
        .def_readonly("log_det_over_area", &DetResult::log_det_over_area)
        .def_readonly("D", &DetResult::D)
        .def_readonly("sum_log_d2", &DetResult::sum_log_d2)
        .def_readonly("scaling_term", &DetResult::scaling_term)
        .def_readonly("log_c0", &DetResult::log_c0)
        .def_readonly("area", &DetResult::area)
        .def("log_det", &DetResult::log_det);

    m.def("torus_phi", &torus_phi, py::arg("spec"), py::arg("z"));
    m.def("torus_D", &torus_D, py::arg("spec"));
    m.def("torus_c0", [](cplx B) { return torus_c0({B}); }, py::arg("B"));
    m.def(
        "torus_log_det",
        [](const TorusMetricSpec& s, bool with_area) {
            py::gil_scoped_release nogil;
            return torus_log_det(s, with_area);
        },
        py::arg("spec"), py::arg("with_area") = false);

    py::class_<Tau>(m, "Tau")
        .def_static("point", &Tau::point, py::arg("index"), py::arg("imaginary") = false)
        .def_static("angle", &Tau::angle, py::arg("index"), py::arg("partner"))
        .def_static("scale", &Tau::scale);
    py::class_<VariationReport>(m, "VariationReport")
        .def_readonly("lhs", &VariationReport::lhs)
        .def_readonly("rhs", &VariationReport::rhs)
        .def_readonly("residual", &VariationReport::residual)
        .def_readonly("step", &VariationReport::step);
    py::class_<HalvingReport>(m, "HalvingReport")
        .def_readonly("full", &HalvingReport::full)
        .def_readonly("half", &HalvingReport::half)
        .def_readonly("ratio", &HalvingReport::ratio);
    m.def("verify_variation", &verify_variation, py::arg("spec"), py::arg("tau"), py::arg("step") = 1e-5);
    m.def("verify_variation_halving", &verify_variation_halving, py::arg("spec"), py::arg("tau"),
          py::arg("step") = 1e-5);

    py::class_<SurfacePack, std::shared_ptr<SurfacePack>>(m, "SurfacePack")
        .def_static("load", [](const std::string& p) { return std::make_shared<SurfacePack>(SurfacePack::load(p)); })
        .def_property_readonly("genus", &SurfacePack::genus)
        .def_property_readonly("period_matrix", [](const SurfacePack& p) { return p.period_matrix.B; })
        .def_property_readonly("handles",
                               [](const SurfacePack& p) {
                                   std::vector<std::string> h;
                                   for (const auto& r : p.points) h.push_back(r.handle);
                                   return h;
                               })
        .def("validate", &SurfacePack::validate)
        .def("prime_form",
             [](const SurfacePack& p, const std::string& z, const std::string& zp) {
                 return prime_form(p.point(z), p.point(zp), p);
             })
        .def("q_bilinear", [](const SurfacePack& p, const std::string& z, const std::string& zp) {
            return q_bilinear(z, zp, p);
        });

    m.def(
        "higher_genus_log_det",
        [](std::shared_ptr<SurfacePack> pack, const std::vector<std::pair<std::string, double>>& divisor,
           double C) {
            HigherGenusMetricSpec s;
            s.pack = std::move(pack);
            for (const auto& [h, b] : divisor) s.divisor.push_back({h, b});
            s.C = C;
            return higher_genus_log_det(s);
        },
        py::arg("pack"), py::arg("divisor"), py::arg("C") = 1.0);

    m.def("normalize_config", &normalize_config, py::arg("text"));
    m.def(
        "check_golden",
        [](const std::string& path, std::shared_ptr<SurfacePack> pack) {
            const GoldenFile f = GoldenFile::load(path);
            std::vector<std::string> failed;
            for (const GoldenVector& v : f.vectors)
                if (!golden_match(evaluate_golden(v, pack), v.value)) failed.push_back(v.key);
            return failed;
        },
        py::arg("path"), py::arg("pack") = nullptr);
}
