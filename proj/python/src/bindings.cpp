#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "wdvv/bellpoly.hpp"
#include "wdvv/flat.hpp"
#include "wdvv/identities.hpp"
#include "wdvv/prepotential.hpp"
#include "wdvv/qdeform.hpp"
#include "wdvv/suites.hpp"

namespace py = pybind11;
using namespace wdvv;

namespace {

BranchProfile profile_of(const std::vector<int>& orders)
{
    BranchProfile p{orders};
    p.validate();
    return p;
}

HurwitzPoint sample_point(const std::vector<int>& orders, cplx tau, std::uint64_t seed, double coeff_radius)
{
    std::mt19937_64 rng(seed);
    SamplerOptions opt;
    opt.coeff_radius = coeff_radius;
    opt.min_abs_x1 = 0.8;
    return random_point(profile_of(orders), Modulus(tau), rng, opt);
}

std::string suite_json(const std::string& name, std::uint64_t seed, std::optional<std::vector<int>> profile,
                       std::optional<double> tol)
{
    const auto s = parse_suite(name);
    if (!s) throw Error(ErrorCode::ParseError, "unknown suite '" + name + "'");
    SuiteOptions opt;
    opt.seed = seed;
    opt.tol = tol;
    opt.threads = default_threads();
    if (profile) opt.profile = profile_of(*profile);
    py::gil_scoped_release release;
    return run_suite(*s, opt).to_json().dump();
}

double wdvv_max(const FlatChart& ch, const std::vector<cplx>& coords, std::optional<cplx> q)
{
    py::gil_scoped_release release;
    const Prepotential F = q ? q_prepotential(ch, *q) : phi_prepotential(ch);
    const SingularDistance cap = q ? q_chart_cap(ch, *q) : chart_cap(ch);
    const ThirdTensor T = Jet(F, coords, verification_config(), cap).third_tensor(default_threads());
    double worst = 0.0;
    for (const auto& e : wdvv_report(T, 1e-7).entries()) worst = std::max(worst, e.residual);
    return worst;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Genus-one WDVV prepotentials on Hurwitz spaces";
    py::register_exception<Error>(m, "WdvvError", PyExc_ValueError);

    py::class_<Modulus>(m, "Modulus")
        .def(py::init<cplx, double>(), py::arg("tau"), py::arg("series_tol") = 1e-16)
        .def_property_readonly("tau", &Modulus::tau)
        .def_property_readonly("nome", &Modulus::nome)
        .def("G", &Modulus::G, py::arg("weight"))
        .def("G2", &Modulus::G2)
        .def("__repr__", [](const Modulus& md) { return "Modulus(" + std::string(py::str(py::cast(md.tau()))) + ")"; });

    m.def("theta1", &theta1, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("wp", &wp, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("wzeta", &wzeta, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("wsigma", &wsigma, py::arg("v"), py::arg("modulus"));
    m.def("log_sigma", &bigK, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("script_w", &script_w, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("psi", &psi_fn, py::arg("v"), py::arg("modulus"), py::arg("k") = 0);
    m.def("eisenstein", &eisenstein, py::arg("weight"), py::arg("modulus"));
    m.def("eisenstein_dtau", &eisenstein_dtau, py::arg("weight"), py::arg("modulus"));
    m.def("ramanujan_residual", &ramanujan_residual, py::arg("m"), py::arg("modulus"));

    m.def("bell_partial", [](int n, int k, const std::vector<cplx>& xs) { return bell_partial(n, k, xs); });
    m.def("bell_complete", [](int n, const std::vector<cplx>& xs) { return bell_complete(n, xs); });
    m.def("r_function", [](int mu, int k, const std::vector<cplx>& xs) { return r_function(mu, k, xs); });

    py::class_<HurwitzPoint>(m, "HurwitzPoint")
        .def(py::init([](const std::vector<int>& orders, cplx tau, std::vector<cplx> poles,
                         std::vector<std::vector<cplx>> x, cplx u) {
                 return HurwitzPoint(profile_of(orders), Modulus(tau), std::move(poles), std::move(x), u);
             }),
             py::arg("profile"), py::arg("tau"), py::arg("poles"), py::arg("x"), py::arg("u"))
        .def_property_readonly("profile", [](const HurwitzPoint& p) { return p.profile().orders; })
        .def_property_readonly("tau", &HurwitzPoint::tau)
        .def_property_readonly("u", &HurwitzPoint::u)
        .def_property_readonly("poles", &HurwitzPoint::poles)
        .def_property_readonly("modulus", &HurwitzPoint::modulus)
        .def("x", &HurwitzPoint::x, py::arg("j"), py::arg("alpha"))
        .def("to_json", [](const HurwitzPoint& p) { return to_json(p).dump(); })
        .def_static("from_json", [](const std::string& s) { return point_from_json(nlohmann::json::parse(s)); });

    m.def("random_point", &sample_point, py::arg("profile"), py::arg("tau") = cplx(0.1, 1.1), py::arg("seed") = 7,
          py::arg("coeff_radius") = 0.6);
    m.def("lambda_eval", &lambda_eval, py::arg("point"), py::arg("z"));
    m.def("f_coeff", &f_coeff, py::arg("point"), py::arg("j"), py::arg("ell"));
    m.def("extended_x", &extended_x, py::arg("point"), py::arg("j"), py::arg("alpha"));
    m.def("residue_sum", &residue_sum, py::arg("point"));
    m.def("validate_point", [](const HurwitzPoint& p) { return validate_point(p).to_json().dump(); });

    m.def("f_phi", py::overload_cast<const HurwitzPoint&>(&f_phi), py::arg("point"));
    m.def("first_line", &first_line, py::arg("point"));
    m.def("sigma2", py::overload_cast<const HurwitzPoint&>(&sigma2), py::arg("point"));
    m.def("sigma3", py::overload_cast<const HurwitzPoint&>(&sigma3), py::arg("point"));
    m.def("sigma4", &sigma4, py::arg("point"));
    m.def("f_phi_An", [](int n, cplx u, const std::vector<cplx>& xs, cplx tau) {
        return f_phi_An(n, u, xs, Modulus(tau));
    });

    py::class_<FlatChart>(m, "FlatChart")
        .def(py::init([](const std::vector<int>& orders) { return FlatChart(profile_of(orders)); }))
        .def_property_readonly("labels", &FlatChart::labels)
        .def("coords", py::overload_cast<const HurwitzPoint&>(&FlatChart::coords, py::const_))
        .def("point", [](const FlatChart& ch, const std::vector<cplx>& c) { return ch.point(c); })
        .def("euler_weights", &FlatChart::euler_weights);
    m.def("wdvv_max_residual", &wdvv_max, py::arg("chart"), py::arg("coords"), py::arg("q") = py::none());

    py::class_<QPoint>(m, "QPoint")
        .def_property_readonly("q", &QPoint::q)
        .def_property_readonly("tau_q", &QPoint::tau_q)
        .def_property_readonly("xi_q", &QPoint::xi_q)
        .def_property_readonly("base", &QPoint::base)
        .def("deformed_coords",
             [](const QPoint& qp) { return FlatChart(qp.profile()).coords(qp.deformed()); });
    m.def("t_q_map", &t_q_map, py::arg("point"), py::arg("q"));
    m.def("t_q_inverse", &t_q_inverse, py::arg("qpoint"));
    m.def("f_phi_q", py::overload_cast<const QPoint&>(&f_phi_q), py::arg("qpoint"));
    m.def("lambda_q_eval", &lambda_q_eval, py::arg("qpoint"), py::arg("z"));

    m.def("suite_names", [] {
        std::vector<std::string> out;
        for (Suite s : all_suites()) out.push_back(to_string(s));
        return out;
    });
    m.def("_run_suite_json", &suite_json, py::arg("name"), py::arg("seed") = 7, py::arg("profile") = py::none(),
          py::arg("tol") = py::none());
}
