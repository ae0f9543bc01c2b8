#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "platoon_lab/numerics.hpp"

namespace platoon_lab {

/**
 * Validated description of an N-vehicle platoon (vehicle 1 is the leader).
 *
 * gains()[k] and asymmetries()[k] belong to vehicle k+2. The trailing
 * vehicle has no follower, so its asymmetry is always stored as zero;
 * last_asymmetry_forced() reports whether the caller supplied something else.
 */
class PlatoonConfig {
public:
    /// Throws ConfigError naming the offending field.
    static PlatoonConfig create(int n, std::vector<double> gains, std::vector<double> asymmetries,
                                RationalTF vehicle, RationalTF controller, double ref_distance = 1.0);

    int n() const noexcept { return n_; }
    std::span<const double> gains() const noexcept { return gains_; }
    std::span<const double> asymmetries() const noexcept { return asymmetries_; }
    /// Gain mu_i of vehicle i, 2 <= i <= n.
    double gain(int vehicle) const { return gains_.at(static_cast<std::size_t>(vehicle - 2)); }
    double asymmetry(int vehicle) const { return asymmetries_.at(static_cast<std::size_t>(vehicle - 2)); }
    const RationalTF& vehicle() const noexcept { return vehicle_; }
    const RationalTF& controller() const noexcept { return controller_; }
    double ref_distance() const noexcept { return ref_distance_; }
    bool last_asymmetry_forced() const noexcept { return last_asymmetry_forced_; }

    double epsilon_max() const noexcept;
    double min_gain() const noexcept;

    friend bool operator==(const PlatoonConfig&, const PlatoonConfig&) = default;

private:
    PlatoonConfig() = default;

    int n_ = 0;
    std::vector<double> gains_;
    std::vector<double> asymmetries_;
    RationalTF vehicle_;
    RationalTF controller_;
    double ref_distance_ = 1.0;
    bool last_asymmetry_forced_ = false;
};

/// Full N x N platoon Laplacian; row 1 (the leader) is zero.
struct LaplacianMatrix {
    Eigen::MatrixXd matrix;
};

/// Laplacian with the leader's row and column removed; tridiagonal.
struct ReducedLaplacian {
    Eigen::MatrixXd matrix;
};

struct SpectrumReport {
    std::vector<double> eigenvalues;  ///< lambda_2..lambda_N, ascending
    double fiedler = 0.0;             ///< smallest entry of `eigenvalues`
    double lambda_max = 0.0;
    double gershgorin_upper = 0.0;    ///< 2 * max diagonal entry
    std::optional<double> theorem1_lower;
    std::vector<std::string> warnings;
};

struct DominanceCertificate {
    double p = 0.0;  ///< +infinity in the predecessor-following limit
    std::vector<double> row_margins;
    double lower_bound = 0.0;
};

LaplacianMatrix build_laplacian(const PlatoonConfig& cfg);
ReducedLaplacian reduce(const LaplacianMatrix& laplacian);

/// Real spectrum of a reduced Laplacian via block splitting, diagonal
/// symmetrization and tridiagonal QL. theorem1_lower is left empty; use
/// analyze_spectrum() for the config-aware report.
SpectrumReport spectrum(const ReducedLaplacian& reduced);
SpectrumReport analyze_spectrum(const PlatoonConfig& cfg);

/// (1 - e)^2 / (2 + 2e) at e = epsilon_max; empty when epsilon_max >= 1.
std::optional<double> theorem1_bound(const PlatoonConfig& cfg);
std::optional<double> theorem1_bound(double epsilon_max);

/// Row margins of P^-1 R P with P = diag(1, p, ..., p^(N-2)), p = (1 + 1/e_max)/2.
DominanceCertificate dominance_certificate(const PlatoonConfig& cfg);

}  // namespace platoon_lab
