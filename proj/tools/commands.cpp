#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/config.hpp"
#include "platoon_lab/error.hpp"
#include "platoon_lab/report.hpp"
#include "platoon_lab/sim.hpp"

namespace platoon_lab::cli {
namespace {

struct Options {
    std::string config;
    std::string out;
    int points = 500;
    int n_min = 5;
    int n_max = 50;
    int n_step = 5;
    double t_end = 100.0;
    double dt = 0.01;
    double amplitude = 1.0;
    bool deviations = false;
};

// Writes `text` to --out, or to the fallback stream when --out is absent.
void emit(const Options& opt, std::ostream& fallback, const std::string& text) {
    if (opt.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw Error("cannot write " + opt.out);
    file << text;
}

ConfigDocument load(const Options& opt, std::ostream& err) {
    ConfigDocument doc = load_config(opt.config);
    for (const auto& notice : doc.notices) err << "notice: " << notice << '\n';
    return doc;
}

int cmd_spectrum(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    const SpectrumReport report = analyze_spectrum(doc.config);
    for (const auto& w : report.warnings) err << "notice: " << w << '\n';
    std::optional<DominanceCertificate> cert;
    if (report.theorem1_lower) cert = dominance_certificate(doc.config);
    emit(opt, out, spectrum_json(report, cert));
    return kOk;
}

int cmd_harmonic(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    const HarmonicVerdict verdict = harmonic_test(doc.config, doc.band);
    emit(opt, out, harmonic_json(verdict));
    if (verdict.verdict == Verdict::unstable_blocks) {
        err << "error: closed-loop blocks are unstable; analysis is invalid\n";
        return kUnstableBlocks;
    }
    return kOk;
}

int cmd_freqresp(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    if (opt.points < 1) throw ConfigError("--points", "--points must be at least 1");
    std::ostringstream csv;
    write_freq_csv(csv, platoon_frequency_response(doc.config, doc.band, opt.points));
    emit(opt, out, csv.str());
    return kOk;
}

int cmd_gamma(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    const FamilyTemplate family = to_family(doc);
    if (opt.n_min < 2 || opt.n_max < opt.n_min || opt.n_step < 1)
        throw ConfigError("--n-min", "sweep needs 2 <= n-min <= n-max and n-step >= 1");
    std::vector<int> n_list;
    for (int n = opt.n_min; n <= opt.n_max; n += opt.n_step) n_list.push_back(n);
    std::ostringstream csv;
    write_gamma_csv(csv, gamma_sequence(family, n_list, doc.band));
    emit(opt, out, csv.str());
    return kOk;
}

int cmd_step(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    const double dt_max = max_time_step(doc.config);
    if (!(opt.dt > 0.0) || opt.dt > dt_max) {
        err << "error: dt = " << opt.dt << " violates the integrator bound; required dt <= "
            << format_double(dt_max) << '\n';
        return kConfigError;
    }
    const TimeSeries ts = simulate({doc.config, LeaderSignal::step(opt.amplitude), opt.t_end, opt.dt});
    for (const auto& w : ts.warnings) err << "warning: " << w << '\n';
    std::ostringstream csv;
    write_time_csv(csv, ts.times, opt.deviations ? ts.deviations : ts.absolute_positions());
    emit(opt, out, csv.str());
    return kOk;
}

int cmd_identities(const Options& opt, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load(opt, err);
    IdentityResiduals res;
    try {
        res = verify_eigen_identities(doc.config);
    } catch (const Error& e) {
        err << "error: simple eigenvalues required (" << e.what() << ")\n";
        return kIdentityFailure;
    }
    std::ostringstream text;
    for (std::size_t m = 0; m < res.power_sums.size(); ++m)
        text << "power_sum m=" << m << " residual=" << format_double(res.power_sums[m]) << '\n';
    text << "inverse_sum residual=" << format_double(res.inverse_sum) << '\n';
    const bool pass = res.max_residual() <= 1e-6;
    text << "max_residual=" << format_double(res.max_residual()) << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    emit(opt, out, text.str());
    return pass ? kOk : kIdentityFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral and frequency-domain analysis of asymmetric bidirectional vehicle platoons",
                 "platoon-lab"};
    app.require_subcommand(1);
    Options opt;
    std::function<int(const Options&, std::ostream&, std::ostream&)> action;

    auto add = [&](const char* name, const char* help, auto fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "platoon config (JSON)")->required();
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    add("spectrum", "Laplacian spectrum, Fiedler bounds and dominance certificate (JSON)", cmd_spectrum);
    add("harmonic", "single-block harmonic-instability test (JSON)", cmd_harmonic);
    add("freqresp", "frequency response of mu_2*T_N (CSV)", cmd_freqresp)
        ->add_option("--points", opt.points, "number of rows including the DC row");
    CLI::App* gamma = add("gamma", "H-infinity norm sweep over the platoon length (CSV)", cmd_gamma);
    gamma->add_option("--n-min", opt.n_min, "smallest N");
    gamma->add_option("--n-max", opt.n_max, "largest N");
    gamma->add_option("--n-step", opt.n_step, "N increment");
    CLI::App* step = add("step", "response to a leader position step (CSV)", cmd_step);
    step->add_option("--t-end", opt.t_end, "simulated time [s]");
    step->add_option("--dt", opt.dt, "integration step [s]");
    step->add_option("--amplitude", opt.amplitude, "step amplitude [m]");
    step->add_flag("--deviations", opt.deviations, "emit deviations from the reference slots");
    add("identities", "eigenvector identity residuals", cmd_identities);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kConfigError;
    }

    try {
        return action(opt, out, err);
    } catch (const ConfigError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace platoon_lab::cli
