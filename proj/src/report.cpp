#include "platoon_lab/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace platoon_lab {
namespace {

using nlohmann::json;

// JSON has no infinities or NaNs; they are written as null.
json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json optional_number(const std::optional<double>& v) {
    return v ? number_or_null(*v) : json(nullptr);
}

json peak_json(const BlockPeak& peak) {
    return json{{"lambda", peak.lambda},
                {"kappa_max", number_or_null(peak.kappa_max)},
                {"block_stable", peak.stable},
                {"hinf_gamma", peak.gamma},
                {"omega0", peak.omega0},
                {"alpha", optional_number(peak.alpha)},
                {"beta", optional_number(peak.beta)},
                {"zeta_min", optional_number(peak.zeta_min)}};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_freq_csv(std::ostream& out, const FreqSeries& series) {
    out << "omega_rad_s,re,im,mag_db\n";
    for (std::size_t k = 0; k < series.omegas.size(); ++k) {
        out << format_double(series.omegas[k]) << ',' << format_double(series.values[k].real()) << ','
            << format_double(series.values[k].imag()) << ',' << format_double(series.magnitudes_db[k]) << '\n';
    }
}

void write_time_csv(std::ostream& out, std::span<const double> times, const Eigen::MatrixXd& positions) {
    out << 't';
    for (Eigen::Index i = 0; i < positions.cols(); ++i) out << ",pos_" << (i + 2);
    out << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << format_double(times[k]);
        for (Eigen::Index i = 0; i < positions.cols(); ++i)
            out << ',' << format_double(positions(static_cast<Eigen::Index>(k), i));
        out << '\n';
    }
}

void write_gamma_csv(std::ostream& out, std::span<const GammaPoint> points) {
    out << "n,gamma,gamma_root_n,zeta_min_lower\n";
    for (const GammaPoint& p : points) {
        out << p.n << ',' << format_double(p.gamma) << ',' << format_double(p.gamma_root_n) << ',';
        if (p.zeta_min_lower) out << format_double(*p.zeta_min_lower);
        out << '\n';
    }
}

std::string spectrum_json(const SpectrumReport& report, const std::optional<DominanceCertificate>& certificate) {
    json root;
    root["eigenvalues"] = report.eigenvalues;
    root["fiedler"] = report.fiedler;
    root["gershgorin_upper"] = report.gershgorin_upper;
    root["theorem1_lower"] = optional_number(report.theorem1_lower);
    if (certificate) {
        root["dominance_certificate"] = json{{"p", number_or_null(certificate->p)},
                                             {"row_margins", certificate->row_margins},
                                             {"lower_bound", certificate->lower_bound}};
    } else {
        root["dominance_certificate"] = nullptr;
    }
    root["warnings"] = report.warnings;
    return root.dump(2) + "\n";
}

std::string harmonic_json(const HarmonicVerdict& v) {
    json root;
    root["verdict"] = to_string(v.verdict);
    root["blocks_stable"] = v.blocks_stable;
    root["route"] = v.route;
    root["lambda_min_used"] = json{{"fiedler", v.fiedler},
                                   {"theorem1_bound", optional_number(v.theorem1_lower)},
                                   {"headline", v.lambda_min_used}};
    root["hinf_gamma_min"] = v.hinf_gamma_min;
    root["omega0"] = v.omega0;
    root["alpha"] = optional_number(v.alpha);
    root["beta"] = optional_number(v.beta);
    root["zeta_min"] = optional_number(v.zeta_min);
    root["fiedler_route"] = peak_json(v.fiedler_route);
    root["uniform_route"] = v.uniform_route ? peak_json(*v.uniform_route) : json(nullptr);
    root["omega_band"] = json{{"lo", v.band.lo}, {"hi", v.band.hi}, {"grid_points", v.band.grid_points}};
    root["notes"] = v.notes;
    return root.dump(2) + "\n";
}

}  // namespace platoon_lab
