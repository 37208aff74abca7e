#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riesz/config.hpp"
#include "riesz/errors.hpp"
#include "riesz/oracle.hpp"
#include "riesz/potential.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace py = pybind11;
using namespace riesz;

namespace {

SphereQuadrature rule_for(int d, int level)
{
    return sphere_quadrature(d, level > 0 ? level : default_quad_level(d));
}

py::dict estimate_dict(const PotentialEstimate& p)
{
    py::dict out;
    out["value"] = p.value;
    out["error_bound"] = p.error_bound;
    out["method"] = method_name(p.method);
    out["detail"] = p.detail;
    out["notes"] = p.notes;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Riesz potentials of ellipsoidal equilibrium measures";

    auto base = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    (void)base;

    py::class_<Ellipsoid>(m, "Ellipsoid")
        .def(py::init<Mat, Vec>(), py::arg("rotation"), py::arg("semi_axes"))
        .def_static("ball", &Ellipsoid::ball, py::arg("d"))
        .def_static("axis_aligned", &Ellipsoid::axis_aligned, py::arg("semi_axes"))
        .def_property_readonly("dim", &Ellipsoid::dim)
        .def_property_readonly("rotation", &Ellipsoid::rotation)
        .def_property_readonly("semi_axes", &Ellipsoid::semi_axes)
        .def("map", &Ellipsoid::map, py::arg("y"))
        .def("to_reference", &Ellipsoid::to_reference, py::arg("x"))
        .def("contains_interior", &Ellipsoid::contains_interior, py::arg("x"))
        .def("volume", &Ellipsoid::volume)
        .def("scaled", &Ellipsoid::scaled, py::arg("factor"));

    py::class_<EquilibriumMeasure>(m, "EquilibriumMeasure")
        .def(py::init<double, Ellipsoid>(), py::arg("q"), py::arg("ellipsoid"))
        .def_static("surface", &EquilibriumMeasure::surface, py::arg("ellipsoid"))
        .def_property_readonly("q", &EquilibriumMeasure::q)
        .def_property_readonly("dim", &EquilibriumMeasure::dim)
        .def_property_readonly("is_surface", &EquilibriumMeasure::is_surface)
        .def_property_readonly("ellipsoid", &EquilibriumMeasure::ellipsoid)
        .def_property_readonly("normalization", &EquilibriumMeasure::normalization);

    py::class_<Profile>(m, "Profile")
        .def_static("isotropic", &Profile::isotropic, py::arg("d"))
        .def_static("diagonal_quadratic", &Profile::diagonal_quadratic, py::arg("alpha"))
        .def_static(
            "from_json", [](const std::string& text, int d) { return profile_from_json(json::parse(text), d); },
            py::arg("text"), py::arg("d"))
        .def_property_readonly("dim", &Profile::dim)
        .def("__call__", &Profile::operator(), py::arg("x"));

    py::class_<Kernel>(m, "Kernel")
        .def(py::init<double, Profile>(), py::arg("s"), py::arg("profile"))
        .def_property_readonly("s", &Kernel::s)
        .def_property_readonly("dim", &Kernel::dim)
        .def("__call__", &Kernel::operator(), py::arg("x"));

    m.def("counterexample_profile", &counterexample_profile, py::arg("d"), py::arg("s"), py::arg("eps") = 0.0);

    m.def(
        "symbol",
        [](const Kernel& k, const Mat& omegas) {
            const FourierSymbol psi(k);
            Vec out(omegas.rows());
            for (Eigen::Index i = 0; i < omegas.rows(); ++i) {
                const Vec w = omegas.row(i).transpose();
                out(i) = psi(w / w.norm());
            }
            return out;
        },
        py::arg("kernel"), py::arg("directions"), "Psi at each row of directions (normalised).");

    m.def(
        "nonneg_criterion",
        [](const Vec& alpha, double s) {
            const auto r = nonneg_criterion(alpha, s, static_cast<int>(alpha.size()));
            return py::dict(py::arg("nonnegative") = r.nonnegative, py::arg("margin") = r.margin,
                            py::arg("closed_form") = r.closed_form);
        },
        py::arg("alpha"), py::arg("s"));

    m.def(
        "sample",
        [](const EquilibriumMeasure& mu, int n, std::uint64_t seed) {
            return Mat(sample(mu, n, seed).points.transpose());
        },
        py::arg("measure"), py::arg("n"), py::arg("seed"), "n x d array of draws.");

    m.def(
        "potential_inside",
        [](const Kernel& k, const EquilibriumMeasure& mu, const Mat& xs, int level) {
            PotentialEvaluator ev(k, mu, rule_for(mu.dim(), level));
            py::list out;
            for (Eigen::Index i = 0; i < xs.rows(); ++i)
                out.append(estimate_dict(ev.inside(xs.row(i).transpose())));
            return out;
        },
        py::arg("kernel"), py::arg("measure"), py::arg("points"), py::arg("level") = 0);

    m.def(
        "regularized_potential",
        [](const Kernel& k, const EquilibriumMeasure& mu, const Vec& x, double r, int level) {
            return estimate_dict(regularized_potential(k, mu, x, r, rule_for(mu.dim(), level)));
        },
        py::arg("kernel"), py::arg("measure"), py::arg("x"), py::arg("r"), py::arg("level") = 0);

    m.def(
        "constant_potential",
        [](const Kernel& k, const Ellipsoid& e, int level) {
            return estimate_dict(constant_potential(k, e, rule_for(e.dim(), level)));
        },
        py::arg("kernel"), py::arg("ellipsoid"), py::arg("level") = 0);

    m.def(
        "quadratic_potential",
        [](const Kernel& k, const Ellipsoid& e, int level) {
            const auto qp = quadratic_potential(k, e, rule_for(e.dim(), level));
            return py::make_tuple(qp.c0, qp.m, qp.error_bound);
        },
        py::arg("kernel"), py::arg("ellipsoid"), py::arg("level") = 0, "(c0, M, error_bound): c0 - x^T M x on E.");

    m.def(
        "isotropic_radial_potential",
        [](double s, double q, double t, int d) { return estimate_dict(isotropic_radial_potential(s, q, t, d)); },
        py::arg("s"), py::arg("q"), py::arg("t"), py::arg("d"));

    m.def(
        "mc_potential",
        [](const Kernel& k, const EquilibriumMeasure& mu, const Mat& xs, int n, std::uint64_t seed) {
            py::list out;
            for (const auto& e : mc_potential_many(k, mu, Mat(xs.transpose()), n, seed))
                out.append(estimate_dict(e));
            return out;
        },
        py::arg("kernel"), py::arg("measure"), py::arg("points"), py::arg("n"), py::arg("seed"));

    m.def(
        "energy_estimate",
        [](const Kernel& k, const EquilibriumMeasure& mu, int n, std::uint64_t seed) {
            const auto e = energy_estimate(k, mu, n, seed);
            return py::make_tuple(e.value, e.standard_error);
        },
        py::arg("kernel"), py::arg("measure"), py::arg("n"), py::arg("seed"), "(value, standard_error)");

    m.def(
        "el_check",
        [](const Kernel& k, const EquilibriumMeasure& mu, const Ellipsoid& e, int n_support, int n_grid,
           int mc_samples, std::uint64_t seed) {
            ElOptions o;
            o.n_support = n_support;
            o.n_grid = n_grid;
            o.mc_samples = mc_samples;
            o.seed = seed;
            return to_json(el_check(k, mu, e, o)).dump();
        },
        py::arg("kernel"), py::arg("candidate"), py::arg("ellipsoid"), py::arg("n_support") = 200,
        py::arg("n_grid") = 200, py::arg("mc_samples") = 1000000, py::arg("seed") = 1, "ElReport as a JSON string.");

    m.def(
        "counterexample_A",
        [](int d, double s, double eps) { return to_json(counterexample_A(d, s, eps)).dump(); },
        py::arg("d"), py::arg("s"), py::arg("eps") = 0.0, "CounterexampleReport as a JSON string.");
    m.def("counterexample_A_closed", &counterexample_A_closed, py::arg("d"), py::arg("s"), py::arg("eps") = 0.0);

    py::module_ spf = m.def_submodule("specfun");
    spf.def("gamma", &specfun::gamma, py::arg("x"));
    spf.def("beta", &specfun::beta, py::arg("x"), py::arg("y"));
    spf.def("pochhammer", &specfun::pochhammer, py::arg("x"), py::arg("n"));
    spf.def(
        "hyp2f1", [](double a, double b, double c, double z) { return specfun::hyp2f1(a, b, c, z).value; },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"));
    spf.def(
        "appell_f4",
        [](double a, double b, double c, double cp, double x, double y) {
            return specfun::appell_f4(a, b, c, cp, x, y).value;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("cp"), py::arg("x"), py::arg("y"));
    spf.def("bessel_j", &specfun::bessel_j, py::arg("nu"), py::arg("x"));
}
