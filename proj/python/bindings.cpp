#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/closedform.hpp"
#include "platoon_lab/config.hpp"
#include "platoon_lab/error.hpp"
#include "platoon_lab/platoon.hpp"
#include "platoon_lab/sim.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace platoon_lab;

namespace {

RationalTF make_tf(const std::vector<double>& num, const std::vector<double>& den) {
    return RationalTF(Polynomial(num), Polynomial(den));
}

py::dict tf_dict(const RationalTF& tf) {
    return py::dict("num"_a = tf.num.coeffs(), "den"_a = tf.den.coeffs());
}

FrequencyBand band_of(double lo, double hi, int grid_points) {
    return FrequencyBand{lo, hi, grid_points};
}

py::object optional_float(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict peak_dict(const BlockPeak& p) {
    return py::dict("lambda"_a = p.lambda, "kappa_max"_a = p.kappa_max, "stable"_a = p.stable,
                    "gamma"_a = p.gamma, "omega0"_a = p.omega0, "alpha"_a = optional_float(p.alpha),
                    "beta"_a = optional_float(p.beta), "zeta_min"_a = optional_float(p.zeta_min));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral and frequency-domain analysis of asymmetric bidirectional platoons";

    // Translators are tried newest first, so the derived type goes last.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<PlatoonConfig>(m, "PlatoonConfig")
        .def(py::init([](int n, const std::vector<double>& gains, const std::vector<double>& asymmetries,
                         const std::vector<double>& vehicle_num, const std::vector<double>& vehicle_den,
                         const std::vector<double>& controller_num, const std::vector<double>& controller_den,
                         double ref_distance) {
                 return PlatoonConfig::create(n, gains, asymmetries, make_tf(vehicle_num, vehicle_den),
                                              make_tf(controller_num, controller_den), ref_distance);
             }),
             "n"_a, "gains"_a, "asymmetries"_a, "vehicle_num"_a, "vehicle_den"_a, "controller_num"_a,
             "controller_den"_a, "ref_distance"_a = 1.0,
             "Coefficients are in ascending powers of s; the trailing asymmetry is forced to zero.")
        .def_property_readonly("n", &PlatoonConfig::n)
        .def_property_readonly("gains", [](const PlatoonConfig& c) {
            return std::vector<double>(c.gains().begin(), c.gains().end());
        })
        .def_property_readonly("asymmetries", [](const PlatoonConfig& c) {
            return std::vector<double>(c.asymmetries().begin(), c.asymmetries().end());
        })
        .def_property_readonly("vehicle", [](const PlatoonConfig& c) { return tf_dict(c.vehicle()); })
        .def_property_readonly("controller", [](const PlatoonConfig& c) { return tf_dict(c.controller()); })
        .def_property_readonly("ref_distance", &PlatoonConfig::ref_distance)
        .def_property_readonly("epsilon_max", &PlatoonConfig::epsilon_max)
        .def("__eq__", [](const PlatoonConfig& a, const PlatoonConfig& b) { return a == b; })
        .def("__repr__", [](const PlatoonConfig& c) {
            return "<PlatoonConfig n=" + std::to_string(c.n()) + ">";
        });

    m.def("parse_config", [](const std::string& text) { return parse_config(text).config; }, "text"_a);
    m.def("load_config", [](const std::string& path) { return load_config(path).config; }, "path"_a);

    m.def("laplacian", [](const PlatoonConfig& c) { return build_laplacian(c).matrix; }, "config"_a);
    m.def("reduced_laplacian", [](const PlatoonConfig& c) { return reduce(build_laplacian(c)).matrix; }, "config"_a);

    m.def("spectrum", [](const PlatoonConfig& c) {
        const SpectrumReport r = analyze_spectrum(c);
        return py::dict("eigenvalues"_a = r.eigenvalues, "fiedler"_a = r.fiedler, "lambda_max"_a = r.lambda_max,
                        "gershgorin_upper"_a = r.gershgorin_upper, "theorem1_lower"_a = optional_float(r.theorem1_lower),
                        "warnings"_a = r.warnings);
    }, "config"_a);

    m.def("theorem1_bound", py::overload_cast<double>(&theorem1_bound), "epsilon_max"_a);

    m.def("dominance_certificate", [](const PlatoonConfig& c) {
        const DominanceCertificate d = dominance_certificate(c);
        return py::dict("p"_a = d.p, "row_margins"_a = d.row_margins, "lower_bound"_a = d.lower_bound);
    }, "config"_a);

    m.def("closedform_eigenvalues", &closedform_eigenvalues, "n"_a, "eps"_a);
    m.def("solve_thetas", [](int n, double eps) { return solve_thetas(n, eps).thetas; }, "n"_a, "eps"_a);

    m.def("product_response", &product_response, "config"_a, "omega"_a);
    m.def("direct_response", &direct_response, "config"_a, "omega"_a);

    m.def("hinf_norm", [](const PlatoonConfig& c, double lo, double hi, int grid_points) {
        const HinfEstimate e = hinf_norm(ProductForm(c), band_of(lo, hi, grid_points));
        return py::make_tuple(e.gamma, e.omega0);
    }, "config"_a, "omega_lo"_a = 1e-3, "omega_hi"_a = 1e3, "grid_points"_a = 2000,
       "Peak of |T_N(j omega)| and its frequency.");

    m.def("kappa_modulus_sq", &kappa_modulus_sq, "kappa"_a, "alpha"_a, "beta"_a);

    m.def("harmonic_test", [](const PlatoonConfig& c, double lo, double hi, int grid_points) {
        const HarmonicVerdict v = harmonic_test(c, band_of(lo, hi, grid_points));
        return py::dict("verdict"_a = to_string(v.verdict), "blocks_stable"_a = v.blocks_stable,
                        "route"_a = v.route, "fiedler"_a = v.fiedler,
                        "theorem1_lower"_a = optional_float(v.theorem1_lower), "lambda_min_used"_a = v.lambda_min_used,
                        "hinf_gamma_min"_a = v.hinf_gamma_min, "omega0"_a = v.omega0,
                        "alpha"_a = optional_float(v.alpha), "beta"_a = optional_float(v.beta),
                        "zeta_min"_a = optional_float(v.zeta_min), "fiedler_route"_a = peak_dict(v.fiedler_route),
                        "uniform_route"_a = v.uniform_route ? py::object(peak_dict(*v.uniform_route)) : py::object(py::none()),
                        "notes"_a = v.notes);
    }, "config"_a, "omega_lo"_a = 1e-3, "omega_hi"_a = 1e3, "grid_points"_a = 2000);

    m.def("gamma_sequence", [](double gain, double asymmetry, const std::vector<double>& vehicle_num,
                               const std::vector<double>& vehicle_den, const std::vector<double>& controller_num,
                               const std::vector<double>& controller_den, const std::vector<int>& n_list) {
        const FamilyTemplate family{{gain}, {asymmetry}, make_tf(vehicle_num, vehicle_den),
                                    make_tf(controller_num, controller_den), 1.0};
        py::list rows;
        for (const GammaPoint& p : gamma_sequence(family, n_list))
            rows.append(py::dict("n"_a = p.n, "gamma"_a = p.gamma, "gamma_root_n"_a = p.gamma_root_n,
                                 "omega_peak"_a = p.omega_peak, "zeta_min"_a = optional_float(p.zeta_min),
                                 "zeta_min_lower"_a = optional_float(p.zeta_min_lower)));
        return rows;
    }, "gain"_a, "asymmetry"_a, "vehicle_num"_a, "vehicle_den"_a, "controller_num"_a, "controller_den"_a, "n_list"_a);

    m.def("frequency_response", [](const PlatoonConfig& c, int n_points, double lo, double hi) {
        const FreqSeries s = platoon_frequency_response(c, band_of(lo, hi, 2000), n_points);
        return py::make_tuple(s.omegas, s.values, s.magnitudes_db);
    }, "config"_a, "n_points"_a = 500, "omega_lo"_a = 1e-3, "omega_hi"_a = 1e3,
       "(omegas, mu_2*T_N values, magnitudes in dB); the first row is omega = 0.");

    m.def("max_time_step", &max_time_step, "config"_a);

    m.def("simulate_step", [](const PlatoonConfig& c, double t_end, double dt, double amplitude, bool deviations) {
        TimeSeries ts;
        {
            py::gil_scoped_release release;
            ts = simulate({c, LeaderSignal::step(amplitude), t_end, dt});
        }
        Eigen::MatrixXd pos = deviations ? ts.deviations : ts.absolute_positions();
        return py::make_tuple(ts.times, pos);
    }, "config"_a, "t_end"_a, "dt"_a, "amplitude"_a = 1.0, "deviations"_a = false,
       "(times, positions) with one column per follower.");

    m.def("verify_eigen_identities", [](const PlatoonConfig& c) {
        const IdentityResiduals r = verify_eigen_identities(c);
        return py::dict("power_sums"_a = r.power_sums, "inverse_sum"_a = r.inverse_sum,
                        "max_residual"_a = r.max_residual());
    }, "config"_a);

#ifdef VERSION_INFO
#define PLATOON_LAB_STR(x) #x
#define PLATOON_LAB_XSTR(x) PLATOON_LAB_STR(x)
    m.attr("__version__") = PLATOON_LAB_XSTR(VERSION_INFO);
#endif
}
