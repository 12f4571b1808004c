#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "schrospec/cli.hpp"
#include "schrospec/spectrum.hpp"
#include "schrospec/stokes.hpp"
#include "schrospec/threshold.hpp"

namespace py = pybind11;
using namespace schrospec;

namespace {

py::dict check_dict(const PaperCheck& c) {
    py::dict d;
    d["id"] = c.id;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["value"] = c.value;
    d["reference"] = c.reference;
    d["value2"] = c.value2;
    d["reference2"] = c.reference2;
    return d;
}

py::array_t<std::complex<double>> to_array(const std::vector<ComplexValue>& v) {
    py::array_t<std::complex<double>> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict crossings_dict(const RayCrossingReport& r) {
    auto radii = [](const std::vector<RayCrossing>& v) {
        std::vector<double> out;
        for (const auto& x : v) out.push_back(x.radius);
        return out;
    };
    py::dict d;
    d["psi"] = r.psi;
    d["gamma"] = r.gamma;
    d["complex1"] = radii(r.crossings_complex1);
    d["complex2"] = radii(r.crossings_complex2);
    d["consistent"] = crossing_counts_consistent(r);
    d["compound"] = r.compound;
    if (r.extremum)
        d["extremum"] = py::make_tuple(r.extremum->tau0, r.extremum->beta0);
    else
        d["extremum"] = py::none();
    return d;
}

OperatorSpec make_spec(ComplexValue c, double alpha, double X, std::size_t grid_n) {
    OperatorSpec s{c, alpha, X, grid_n};
    s.validate();
    return s;
}

}  // namespace

PYBIND11_MODULE(_schrospec, m) {
    m.doc() = "Threshold angle, Stokes geometry and spectra of -y'' + c x^alpha y on the half-line";

    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NumericalError& e) {
            py::set_error(numerical_error, e.what());
        }
    });

    // threshold
    m.def("F_theta", &F_theta, py::arg("theta"));
    m.def("F_theta_action", &F_theta_action, py::arg("theta"));
    m.def("F_theta_closed", &F_theta_closed, py::arg("theta"));
    m.def("theta0", &theta0_cached, "theta0 solved to 1e-12");
    m.def(
        "solve_theta0",
        [](double tol) {
            const auto r = solve_theta0(tol);
            py::dict d;
            d["theta0"] = r.theta0;
            d["enclosure"] = py::make_tuple(r.enclosure.lo, r.enclosure.hi);
            d["f_lo"] = r.f_lo;
            d["f_hi"] = r.f_hi;
            d["iterations"] = r.iterations;
            d["samples_increasing"] = r.samples_increasing;
            return d;
        },
        py::arg("tol") = 1e-10);
    m.def("verify_paper_bounds", [] {
        py::list out;
        for (const auto& c : verify_paper_bounds()) out.append(check_dict(c));
        return out;
    });
    m.def(
        "completeness_verdict",
        [](ComplexValue c) {
            const auto v = completeness_verdict(c);
            py::dict d;
            d["margin"] = v.margin;
            d["complete_by_theorem"] = v.complete_by_theorem;
            d["classical_sector"] = v.classical_sector;
            return d;
        },
        py::arg("c"));

    // stokes
    m.def(
        "stokes_graph",
        [](double psi, double max_arclen) {
            const auto g = build_stokes_graph(PotentialQuadratic::z_form(psi), max_arclen);
            py::list curves;
            for (const auto& c : g.curves) {
                py::dict d;
                d["origin"] = c.origin_index;
                d["k"] = c.direction_index;
                d["initial_angle"] = c.initial_angle;
                d["points"] = to_array(c.points);
                d["to_infinity"] = c.terminal == StokesCurve::Terminal::ToInfinity;
                d["asymptotic_angle"] = c.asymptotic_angle;
                d["target"] = c.target_index;
                curves.append(d);
            }
            return py::make_tuple(curves, g.compound);
        },
        py::arg("psi"), py::arg("max_arclen") = 12.0,
        "Curves of the Stokes graph of e^{2 i psi} z (z - 1) and whether it is compound");
    m.def(
        "ray_crossing_report",
        [](double psi, double gamma) { return crossings_dict(ray_crossing_report(psi, gamma)); }, py::arg("psi"),
        py::arg("gamma"));

    // spectrum
    m.def("bs_constant", &bs_constant, py::arg("alpha"));
    m.def("t_asymptotic", &t_asymptotic, py::arg("n"), py::arg("alpha"));
    m.def("default_truncation", &default_truncation, py::arg("c"), py::arg("alpha"), py::arg("t_max"));
    m.def(
        "real_spectrum",
        [](double alpha, int n_max, double X, double tol) {
            if (X <= 0.0) X = default_truncation(1.0, alpha, 1.3 * t_asymptotic(n_max, alpha));
            return real_spectrum(alpha, n_max, X, tol);
        },
        py::arg("alpha"), py::arg("n_max"), py::arg("X") = 0.0, py::arg("tol") = 1e-12,
        "t_1 < ... < t_n for c = 1; X <= 0 picks a default truncation");
    m.def(
        "complex_spectrum",
        [](ComplexValue c, double alpha, int n_max, double tol) {
            const auto r = complex_spectrum(OperatorSpec::for_eigenvalues(c, alpha, n_max), n_max, tol);
            py::dict d;
            d["eigenvalues"] = to_array(r.eigenvalues);
            d["t"] = r.t_values;
            d["asymptotic_deviation"] = r.asymptotic_deviation;
            d["scaling_deviation"] = r.scaling_deviation;
            d["scaling_verified"] = r.scaling_verified;
            return d;
        },
        py::arg("c"), py::arg("alpha"), py::arg("n_max"), py::arg("tol") = 1e-10);
    m.def(
        "spectral_det",
        [](ComplexValue c, double alpha, double X, ComplexValue lambda) {
            return spectral_det(make_spec(c, alpha, X, 11), lambda);
        },
        py::arg("c"), py::arg("alpha"), py::arg("X"), py::arg("lam"));
    m.def(
        "s_numbers",
        [](ComplexValue c, double alpha, int n_max) {
            const auto s = s_numbers(OperatorSpec::for_eigenvalues(c, alpha, n_max), n_max);
            return py::make_tuple(s.values, s.fitted_slope, s.expected_slope);
        },
        py::arg("c"), py::arg("alpha"), py::arg("n_max"), "(s_n, fitted slope, expected slope)");
    m.def(
        "apply_inverse",
        [](ComplexValue c, double alpha, double X, py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> f) {
            if (f.ndim() != 1) throw NumericalError(ErrorKind::Domain, "f must be one-dimensional");
            const auto n = static_cast<std::size_t>(f.shape(0));
            SampledFunction s{X, std::vector<ComplexValue>(f.data(), f.data() + n)};
            const auto r = apply_inverse(make_spec(c, alpha, X, n), s);
            return py::make_tuple(to_array(r.y.values), r.wronskian, r.wronskian_variation);
        },
        py::arg("c"), py::arg("alpha"), py::arg("X"), py::arg("f"),
        "L^{-1} f for samples of f on the uniform grid of [0, X]; returns (y, wronskian, wronskian_variation)");

    // command line
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "(exit code, stdout, stderr) of one command line");
    m.attr("__version__") = cli::kVersion;
}
