#include "platoon_lab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "platoon_lab/error.hpp"
#include "platoon_lab/parallel.hpp"
#include "platoon_lab/state_space.hpp"

namespace platoon_lab {
namespace {

constexpr double kStabilityMargin = 1e-9;
constexpr double kTieTolerance = 1e-9;
constexpr double kInvGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

std::string omega_message(const char* what, double omega) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " at omega = " << omega;
    return msg.str();
}

// Golden-section search for the maximum of f on [a, b].
template <typename F>
std::pair<double, double> golden_maximize(F&& f, double a, double b, double tol) {
    double x1 = b - kInvGolden * (b - a);
    double x2 = a + kInvGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvGolden * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

RationalTF open_loop(const PlatoonConfig& cfg) {
    return rtf_mul(cfg.controller(), cfg.vehicle());
}

Block make_block(double lambda, const RationalTF& open_loop) {
    return {lambda, RationalTF(poly_scale(open_loop.num, lambda),
                               poly_add_scaled(open_loop.den, open_loop.num, lambda))};
}

std::vector<Complex> block_poles(const Block& block) {
    return poly_roots(block.tf.den);
}

bool block_stable(const Block& block) {
    if (block.tf.den.degree() < 1) return true;
    const auto poles = block_poles(block);
    return std::all_of(poles.begin(), poles.end(), [](Complex p) { return p.real() < -kStabilityMargin; });
}

Complex LogResponse::value() const {
    if (log_magnitude == -std::numeric_limits<double>::infinity()) return {};
    return std::polar(std::exp(log_magnitude), phase);
}

double LogResponse::magnitude_db() const {
    return 20.0 * log_magnitude / std::numbers::ln10;
}

ProductForm::ProductForm(const PlatoonConfig& cfg) : leader_gain_(cfg.gain(2)) {
    const RationalTF M = open_loop(cfg);
    const SpectrumReport spec = spectrum(reduce(build_laplacian(cfg)));
    blocks_.reserve(spec.eigenvalues.size());
    for (double lambda : spec.eigenvalues) blocks_.push_back(make_block(lambda, M));
}

LogResponse ProductForm::log_response(double omega) const {
    const Complex s{0.0, omega};
    LogResponse acc;
    acc.log_magnitude = -std::log(leader_gain_);
    for (const Block& b : blocks_) {
        const Complex v = rtf_eval(b.tf, s);
        if (v == Complex{}) {
            acc.log_magnitude = -std::numeric_limits<double>::infinity();
            return acc;
        }
        acc.log_magnitude += std::log(std::abs(v));
        acc.phase += std::arg(v);
    }
    return acc;
}

bool ProductForm::all_blocks_stable() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return block_stable(b); });
}

Complex product_response(const PlatoonConfig& cfg, double omega) {
    return ProductForm(cfg)(omega);
}

Complex direct_response(const PlatoonConfig& cfg, double omega) {
    const RationalTF M = open_loop(cfg);
    if (omega == 0.0 && M.den.zero_root_multiplicity() > 0) return product_response(cfg, 0.0);

    const int n = cfg.n();
    Eigen::MatrixXd input = Eigen::MatrixXd::Zero(n, 1);
    input(1, 0) = 1.0;
    const StateSpace sys = interconnect(controllable_canonical(M), build_laplacian(cfg).matrix, input);
    return evaluate_entry(sys, omega, n - 1, 0);
}

HinfEstimate hinf_norm(const FrequencyResponse& response, const FrequencyBand& band) {
    if (!(band.lo > 0.0) || !(band.hi > band.lo) || band.grid_points < 2)
        throw Error("frequency band must satisfy 0 < lo < hi with at least 2 grid points");

    const auto count = static_cast<std::size_t>(band.grid_points);
    const double log_lo = std::log(band.lo);
    const double log_step = (std::log(band.hi) - log_lo) / static_cast<double>(count - 1);
    std::vector<double> omegas(count);
    std::vector<double> mags(count);
    for (std::size_t k = 0; k < count; ++k) omegas[k] = std::exp(log_lo + log_step * static_cast<double>(k));
    omegas.back() = band.hi;

    auto magnitude = [&](double omega) {
        const double m = std::abs(response(omega));
        if (!std::isfinite(m)) throw Error(omega_message("non-finite response", omega));
        return m;
    };
    parallel_for(count, [&](std::size_t k) { mags[k] = magnitude(omegas[k]); });

    std::size_t best = 0;
    for (std::size_t k = 1; k < count; ++k)
        if (mags[k] > mags[best] * (1.0 + kTieTolerance)) best = k;

    HinfEstimate est{mags[best], omegas[best]};
    const double a = std::log(omegas[best == 0 ? 0 : best - 1]);
    const double b = std::log(omegas[std::min(best + 1, count - 1)]);
    const auto [x, peak] = golden_maximize([&](double lw) { return magnitude(std::exp(lw)); }, a, b, 1e-8);
    if (peak > est.gamma) est = {peak, std::exp(x)};

    try {
        const double dc = std::abs(response(0.0));
        if (std::isfinite(dc) && dc * (1.0 + kTieTolerance) >= est.gamma) est = {dc, 0.0};
    } catch (const Error&) {
        // pole at DC: the band value stands
    }
    return est;
}

double kappa_modulus_sq(double kappa, double alpha, double beta) {
    const double ka = kappa * alpha + 1.0;
    const double den = ka * ka + kappa * kappa * beta * beta;
    if (!(den > 0.0)) throw Error("closed-loop pole at the peak frequency");
    return 1.0 - (2.0 * kappa * alpha + 1.0) / den;
}

double zeta_min(double alpha, double beta, double kappa_max) {
    const double hi = std::max(1.0, kappa_max);
    auto g = [&](double k) { return kappa_modulus_sq(k, alpha, beta); };
    double best = std::min(g(1.0), g(hi));
    if (hi > 1.0) {
        const auto [k, neg] = golden_maximize([&](double k) { return -g(k); }, 1.0, hi, 1e-10 * hi);
        best = std::min(best, -neg);
        (void)k;
    }
    return std::sqrt(best);
}

BlockPeak analyze_block_peak(double lambda, double kappa_max, const RationalTF& open_loop,
                             const FrequencyBand& band) {
    BlockPeak peak;
    peak.lambda = lambda;
    peak.kappa_max = kappa_max;
    const Block block = make_block(lambda, open_loop);
    peak.stable = block_stable(block);
    if (!peak.stable) return peak;

    const HinfEstimate est = hinf_norm([&](double w) { return rtf_eval(block.tf, Complex{0.0, w}); }, band);
    peak.gamma = est.gamma;
    peak.omega0 = est.omega0;
    try {
        const Complex loop = lambda * rtf_eval(open_loop, Complex{0.0, est.omega0});
        peak.alpha = loop.real();
        peak.beta = loop.imag();
    } catch (const Error&) {
        return peak;  // open-loop pole at omega0 (DC integrator): alpha, beta undefined
    }
    if (peak.gamma > 1.0) peak.zeta_min = zeta_min(*peak.alpha, *peak.beta, kappa_max);
    return peak;
}

double zeta_min(const PlatoonConfig& cfg, const FrequencyBand& band) {
    const SpectrumReport spec = analyze_spectrum(cfg);
    const BlockPeak peak = analyze_block_peak(spec.fiedler, spec.lambda_max / spec.fiedler, open_loop(cfg), band);
    if (!peak.zeta_min) throw Error("zeta undefined: the Fiedler block does not peak above 1");
    return *peak.zeta_min;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::harmonically_unstable: return "harmonically-unstable";
        case Verdict::test_inconclusive: return "test-inconclusive";
        case Verdict::unstable_blocks: return "unstable-blocks";
    }
    return "unknown";
}

HarmonicVerdict harmonic_test(const PlatoonConfig& cfg, const FrequencyBand& band) {
    const SpectrumReport spec = analyze_spectrum(cfg);
    const RationalTF M = open_loop(cfg);

    HarmonicVerdict out;
    out.band = band;
    out.notes = spec.warnings;
    out.fiedler = spec.fiedler;
    out.theorem1_lower = spec.theorem1_lower;

    out.blocks_stable = true;
    for (double lambda : spec.eigenvalues) {
        if (!block_stable(make_block(lambda, M))) {
            out.blocks_stable = false;
            break;
        }
    }

    out.fiedler_route = analyze_block_peak(spec.fiedler, spec.lambda_max / spec.fiedler, M, band);
    if (spec.theorem1_lower)
        out.uniform_route = analyze_block_peak(*spec.theorem1_lower, spec.gershgorin_upper / *spec.theorem1_lower, M, band);

    const BlockPeak& headline = out.uniform_route ? *out.uniform_route : out.fiedler_route;
    out.route = out.uniform_route ? "theorem1-bound" : "fiedler";
    out.lambda_min_used = headline.lambda;
    out.hinf_gamma_min = headline.gamma;
    out.omega0 = headline.omega0;
    out.alpha = headline.alpha;
    out.beta = headline.beta;
    out.zeta_min = headline.zeta_min;

    if (!out.blocks_stable) {
        out.verdict = Verdict::unstable_blocks;
        out.notes.push_back("closed-loop blocks are unstable; the frequency-domain test does not apply");
    } else if (!out.uniform_route) {
        out.verdict = Verdict::test_inconclusive;
        out.notes.push_back("no uniform eigenvalue bound: the single-block test is not applicable");
    } else if (!out.uniform_route->stable) {
        out.verdict = Verdict::test_inconclusive;
        out.notes.push_back("the block at the uniform bound is unstable; its peak is undefined");
    } else if (out.uniform_route->gamma > 1.0) {
        out.verdict = Verdict::harmonically_unstable;
    } else {
        out.verdict = Verdict::test_inconclusive;
    }
    return out;
}

PlatoonConfig FamilyTemplate::instantiate(int n) const {
    if (gain_pattern.empty() || asymmetry_pattern.empty()) throw ConfigError("gains", "family patterns must be nonempty");
    if (n < 2) throw ConfigError("n", "n must be at least 2 (leader plus one follower)");
    std::vector<double> gains(static_cast<std::size_t>(n - 1));
    std::vector<double> asym(static_cast<std::size_t>(n - 1));
    for (std::size_t k = 0; k < gains.size(); ++k) {
        gains[k] = gain_pattern[k % gain_pattern.size()];
        asym[k] = asymmetry_pattern[k % asymmetry_pattern.size()];
    }
    asym.back() = 0.0;
    return PlatoonConfig::create(n, std::move(gains), std::move(asym), vehicle, controller, ref_distance);
}

std::vector<GammaPoint> gamma_sequence(const FamilyTemplate& family, std::span<const int> n_list,
                                       const FrequencyBand& band) {
    std::vector<GammaPoint> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        const PlatoonConfig cfg = family.instantiate(n);
        const ProductForm product(cfg);
        const HinfEstimate est = hinf_norm([&](double w) { return product(w); }, band);

        GammaPoint pt;
        pt.n = n;
        pt.gamma = est.gamma;
        pt.gamma_root_n = std::pow(est.gamma, 1.0 / n);
        pt.omega_peak = est.omega0;

        const SpectrumReport spec = spectrum(reduce(build_laplacian(cfg)));
        const BlockPeak peak = analyze_block_peak(spec.fiedler, spec.lambda_max / spec.fiedler, open_loop(cfg), band);
        if (peak.zeta_min) {
            pt.zeta_min = peak.zeta_min;
            pt.zeta_min_lower = std::pow(*peak.zeta_min, n - 1);
        }
        out.push_back(pt);
    }
    return out;
}

double IdentityResiduals::max_residual() const {
    double worst = inverse_sum;
    for (double r : power_sums) worst = std::max(worst, r);
    return worst;
}

IdentityResiduals verify_eigen_identities(const PlatoonConfig& cfg) {
    const int n = cfg.n();
    const SpectrumReport spec = spectrum(reduce(build_laplacian(cfg)));
    for (std::size_t k = 1; k < spec.eigenvalues.size(); ++k)
        if (spec.eigenvalues[k] - spec.eigenvalues[k - 1] <= 1e-8)
            throw Error("identities require simple eigenvalues");

    const Eigen::MatrixXd L = build_laplacian(cfg).matrix;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(L, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) throw Error("Laplacian eigendecomposition did not converge");
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd V = solver.eigenvectors();

    Eigen::Index leader_mode = 0;
    for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(lambda(i)) < std::abs(lambda(leader_mode))) leader_mode = i;

    Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(n);
    e2(1) = 1.0;
    const Eigen::VectorXcd g = V.partialPivLu().solve(e2);

    IdentityResiduals out;
    for (int m = 0; m <= n - 3; ++m) {
        Complex sum{};
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == leader_mode) continue;
            sum += g(i) * V(n - 1, i) * std::pow(lambda(i), m);
        }
        out.power_sums.push_back(std::abs(sum));
    }
    Complex inv{};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == leader_mode) continue;
        inv += g(i) * V(n - 1, i) / lambda(i);
    }
    out.inverse_sum = std::abs(inv - 1.0 / cfg.gain(2));
    return out;
}

FreqSeries platoon_frequency_response(const PlatoonConfig& cfg, const FrequencyBand& band, int n_points) {
    if (n_points < 1) throw Error("n_points must be at least 1");
    if (!(band.lo > 0.0) || !(band.hi > band.lo)) throw Error("frequency band must satisfy 0 < lo < hi");

    FreqSeries series;
    series.omegas.push_back(0.0);
    const int logged = n_points - 1;
    for (int k = 0; k < logged; ++k) {
        const double t = logged == 1 ? 0.0 : static_cast<double>(k) / (logged - 1);
        series.omegas.push_back(k == logged - 1 && logged > 1 ? band.hi
                                                              : band.lo * std::pow(band.hi / band.lo, t));
    }

    const ProductForm product(cfg);
    const double log_mu2 = std::log(cfg.gain(2));
    const auto count = series.omegas.size();
    series.values.resize(count);
    series.magnitudes_db.resize(count);
    parallel_for(count, [&](std::size_t k) {
        LogResponse r = product.log_response(series.omegas[k]);
        r.log_magnitude += log_mu2;
        series.values[k] = r.value();
        series.magnitudes_db[k] = r.magnitude_db();
    });
    return series;
}

}  // namespace platoon_lab
