#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "platoon_lab/numerics.hpp"
#include "platoon_lab/platoon.hpp"

namespace platoon_lab {

/// Scan band for H-infinity estimates. Every report carries the band it used.
struct FrequencyBand {
    double lo = 1e-3;
    double hi = 1e3;
    int grid_points = 2000;
};

/// Closed loop of the open loop M under output feedback with gain lambda:
/// tf = lambda * num(M) / (den(M) + lambda * num(M)).
struct Block {
    double lambda = 0.0;
    RationalTF tf;
};

RationalTF open_loop(const PlatoonConfig& cfg);
Block make_block(double lambda, const RationalTF& open_loop);
std::vector<Complex> block_poles(const Block& block);
/// Every closed-loop pole has real part < -1e-9.
bool block_stable(const Block& block);

/// Response accumulated as log-magnitude and phase.
struct LogResponse {
    double log_magnitude = 0.0;
    double phase = 0.0;

    Complex value() const;
    double magnitude_db() const;
};

/**
 * Product form of the leader-to-last-vehicle transfer function
 *
 *     T_N(s) = (1/mu_2) * prod_i Gamma_i(s),  Gamma_i = make_block(lambda_i, M)
 *
 * over the reduced-Laplacian eigenvalues. Blocks are built once; evaluation
 * is cheap and thread-safe.
 */
class ProductForm {
public:
    explicit ProductForm(const PlatoonConfig& cfg);

    LogResponse log_response(double omega) const;
    Complex operator()(double omega) const { return log_response(omega).value(); }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    double leader_gain() const noexcept { return leader_gain_; }
    bool all_blocks_stable() const;

private:
    std::vector<Block> blocks_;
    double leader_gain_ = 1.0;
};

/// T_N(j omega) by the product form.
Complex product_response(const PlatoonConfig& cfg, double omega);

/// T_N(j omega) from the full Kronecker-structured state space, one dense
/// complex solve. At omega = 0 with an integrator in M the resolvent is
/// singular; the product-form DC value is returned instead.
Complex direct_response(const PlatoonConfig& cfg, double omega);

using FrequencyResponse = std::function<Complex(double)>;

struct HinfEstimate {
    double gamma = 0.0;
    double omega0 = 0.0;  ///< 0 when the DC value is the maximum
};

/// Log-spaced scan of |response| over the band, golden-section refinement of
/// the best bracket, then comparison against the DC value (skipped if the
/// response has a pole at 0).
HinfEstimate hinf_norm(const FrequencyResponse& response, const FrequencyBand& band = {});

/// |kappa L / (1 + kappa L)|^2 written through L = alpha + j beta.
double kappa_modulus_sq(double kappa, double alpha, double beta);

/// sqrt(min kappa_modulus_sq) over kappa in [1, kappa_max].
double zeta_min(double alpha, double beta, double kappa_max);

/// zeta_min for the Fiedler block of the platoon; throws Error("zeta
/// undefined") unless that block peaks above 1.
double zeta_min(const PlatoonConfig& cfg, const FrequencyBand& band = {});

enum class Verdict { harmonically_unstable, test_inconclusive, unstable_blocks };
std::string to_string(Verdict v);

/// Single-block test data for one choice of lambda_min.
struct BlockPeak {
    double lambda = 0.0;
    double kappa_max = 1.0;
    bool stable = false;
    double gamma = 0.0;
    double omega0 = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> zeta_min;
};

BlockPeak analyze_block_peak(double lambda, double kappa_max, const RationalTF& open_loop,
                             const FrequencyBand& band);

/**
 * Outcome of the harmonic-instability test. The headline fields come from the
 * uniform route (the certified eigenvalue lower bound) when a bound is certified, otherwise from
 * the Fiedler route; both routes are kept in full.
 *
 * verdict is harmonically_unstable only if every block is stable, a uniform
 * bound is certified, and that block's peak exceeds 1. The test is
 * sufficient, never necessary.
 */
struct HarmonicVerdict {
    double fiedler = 0.0;
    std::optional<double> theorem1_lower;
    double lambda_min_used = 0.0;
    std::string route;  ///< "theorem1-bound" or "fiedler"
    double hinf_gamma_min = 0.0;
    double omega0 = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> zeta_min;
    bool blocks_stable = false;
    Verdict verdict = Verdict::test_inconclusive;
    BlockPeak fiedler_route;
    std::optional<BlockPeak> uniform_route;
    FrequencyBand band;
    std::vector<std::string> notes;
};

HarmonicVerdict harmonic_test(const PlatoonConfig& cfg, const FrequencyBand& band = {});

/// Platoon family: gains and asymmetries repeat their patterns along the string.
struct FamilyTemplate {
    std::vector<double> gain_pattern{1.0};
    std::vector<double> asymmetry_pattern{0.0};
    RationalTF vehicle;
    RationalTF controller;
    double ref_distance = 1.0;

    PlatoonConfig instantiate(int n) const;
};

struct GammaPoint {
    int n = 0;
    double gamma = 0.0;
    double gamma_root_n = 0.0;
    double omega_peak = 0.0;
    std::optional<double> zeta_min;        ///< Fiedler-route zeta at this n
    std::optional<double> zeta_min_lower;  ///< zeta_min^(n-1)
};

std::vector<GammaPoint> gamma_sequence(const FamilyTemplate& family, std::span<const int> n_list,
                                       const FrequencyBand& band = {});

struct IdentityResiduals {
    std::vector<double> power_sums;  ///< |sum h_i lambda_i^m|, m = 0..N-3
    double inverse_sum = 0.0;        ///< |sum h_i / lambda_i - 1/mu_2|
    double max_residual() const;
};

/// Eigenvector identities of the full Laplacian; throws Error("identities
/// require simple eigenvalues") when two reduced eigenvalues are within 1e-8.
IdentityResiduals verify_eigen_identities(const PlatoonConfig& cfg);

/// Sampled frequency response. magnitudes_db is taken from the log-form
/// accumulation, so it stays exact where `values` would overflow.
struct FreqSeries {
    std::vector<double> omegas;
    std::vector<Complex> values;
    std::vector<double> magnitudes_db;
};

/// mu_2 * T_N(j omega): a DC row at omega = 0 followed by n_points - 1
/// log-spaced points on the band.
FreqSeries platoon_frequency_response(const PlatoonConfig& cfg, const FrequencyBand& band, int n_points);

}  // namespace platoon_lab
