#include "platoon_lab/platoon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "platoon_lab/error.hpp"
#include "platoon_lab/tridiagonal.hpp"

namespace platoon_lab {

PlatoonConfig PlatoonConfig::create(int n, std::vector<double> gains, std::vector<double> asymmetries,
                                    RationalTF vehicle, RationalTF controller, double ref_distance) {
    if (n < 2) throw ConfigError("n", "n must be at least 2 (leader plus one follower)");
    const auto followers = static_cast<std::size_t>(n - 1);
    if (gains.size() != followers)
        throw ConfigError("gains", "gains must have n-1 = " + std::to_string(followers) + " entries");
    if (asymmetries.size() != followers)
        throw ConfigError("asymmetries",
                          "asymmetries must have n-1 = " + std::to_string(followers) + " entries");
    for (double mu : gains)
        if (!std::isfinite(mu) || mu <= 0.0) throw ConfigError("gains", "every gain must be finite and > 0");
    for (double eps : asymmetries)
        if (!std::isfinite(eps) || eps < 0.0)
            throw ConfigError("asymmetries", "every asymmetry must be finite and >= 0");
    if (!std::isfinite(ref_distance)) throw ConfigError("ref_distance", "ref_distance must be finite");

    PlatoonConfig cfg;
    cfg.n_ = n;
    cfg.last_asymmetry_forced_ = asymmetries.back() != 0.0;
    asymmetries.back() = 0.0;
    cfg.gains_ = std::move(gains);
    cfg.asymmetries_ = std::move(asymmetries);
    cfg.vehicle_ = std::move(vehicle);
    cfg.controller_ = std::move(controller);
    cfg.ref_distance_ = ref_distance;
    return cfg;
}

double PlatoonConfig::epsilon_max() const noexcept {
    return *std::max_element(asymmetries_.begin(), asymmetries_.end());
}

double PlatoonConfig::min_gain() const noexcept {
    return *std::min_element(gains_.begin(), gains_.end());
}

LaplacianMatrix build_laplacian(const PlatoonConfig& cfg) {
    const int n = cfg.n();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double mu = cfg.gains()[static_cast<std::size_t>(i - 1)];
        const double eps = cfg.asymmetries()[static_cast<std::size_t>(i - 1)];
        L(i, i - 1) = -mu;
        if (i + 1 < n) {
            L(i, i) = mu * (1.0 + eps);
            L(i, i + 1) = -mu * eps;
        } else {
            L(i, i) = mu;
        }
    }
    return {std::move(L)};
}

ReducedLaplacian reduce(const LaplacianMatrix& laplacian) {
    const auto m = laplacian.matrix.rows() - 1;
    return {laplacian.matrix.bottomRightCorner(m, m)};
}

SpectrumReport spectrum(const ReducedLaplacian& reduced) {
    const Eigen::MatrixXd& R = reduced.matrix;
    if (!R.allFinite()) throw Error("reduced Laplacian has non-finite entries");
    const auto m = static_cast<std::size_t>(R.rows());
    std::vector<double> diag(m), sub(m - 1), super(m - 1);
    for (std::size_t k = 0; k < m; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        diag[k] = R(i, i);
        if (k + 1 < m) {
            sub[k] = R(i + 1, i);
            super[k] = R(i, i + 1);
        }
    }

    SpectrumReport report;
    report.eigenvalues = sign_symmetric_tridiagonal_eigenvalues(diag, sub, super);
    report.fiedler = report.eigenvalues.front();
    report.lambda_max = report.eigenvalues.back();
    report.gershgorin_upper = 2.0 * *std::max_element(diag.begin(), diag.end());
    return report;
}

std::optional<double> theorem1_bound(double epsilon_max) {
    if (!(epsilon_max < 1.0)) return std::nullopt;
    const double gap = 1.0 - epsilon_max;
    return gap * gap / (2.0 + 2.0 * epsilon_max);
}

std::optional<double> theorem1_bound(const PlatoonConfig& cfg) {
    return theorem1_bound(cfg.epsilon_max());
}

SpectrumReport analyze_spectrum(const PlatoonConfig& cfg) {
    SpectrumReport report = spectrum(reduce(build_laplacian(cfg)));
    report.theorem1_lower = theorem1_bound(cfg);
    if (!report.theorem1_lower) {
        std::ostringstream msg;
        msg << "epsilon_max = " << cfg.epsilon_max() << " >= 1: no uniform Fiedler bound is certified";
        report.warnings.push_back(msg.str());
    } else if (cfg.min_gain() < 1.0) {
        std::ostringstream msg;
        msg << "minimum gain " << cfg.min_gain()
            << " < 1: the certified uniform bound scales by min(mu_i)";
        report.warnings.push_back(msg.str());
    }
    return report;
}

DominanceCertificate dominance_certificate(const PlatoonConfig& cfg) {
    const double eps_max = cfg.epsilon_max();
    if (!(eps_max < 1.0)) throw Error("certificate requires epsilon_max < 1");

    const Eigen::MatrixXd R = reduce(build_laplacian(cfg)).matrix;
    const auto m = R.rows();

    DominanceCertificate cert;
    cert.row_margins.resize(static_cast<std::size_t>(m));

    if (eps_max == 0.0) {
        // Predecessor-following limit: p -> infinity, the scaled subdiagonal
        // vanishes and no superdiagonal exists, so each margin is the diagonal mu_i.
        cert.p = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) cert.row_margins[static_cast<std::size_t>(i)] = R(i, i);
    } else {
        const double p = 0.5 * (1.0 + 1.0 / eps_max);
        cert.p = p;

        // B = P^-1 R P, entrywise b_ij = r_ij p^(j-i). Zero entries are
        // skipped so far-off-band ratios never overflow.
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                if (R(i, j) != 0.0) B(i, j) = R(i, j) * std::pow(p, static_cast<double>(j - i));

        for (Eigen::Index i = 0; i < m; ++i) {
            const double mu = cfg.gains()[static_cast<std::size_t>(i)];
            const double eps = cfg.asymmetries()[static_cast<std::size_t>(i)];
            const double scale = mu * std::max(1.0, p);
            const double sym_diag = (i + 1 < m) ? mu * (1.0 + eps) : mu;
            bool ok = std::abs(B(i, i) - sym_diag) <= 1e-12 * scale;
            if (i > 0) ok = ok && std::abs(B(i, i - 1) + mu / p) <= 1e-12 * scale;
            if (i + 1 < m) ok = ok && std::abs(B(i, i + 1) + p * mu * eps) <= 1e-12 * scale;
            if (!ok) throw Error("scaled Laplacian row " + std::to_string(i + 2) + " deviates from its closed form");

            double off = 0.0;
            for (Eigen::Index j = 0; j < m; ++j)
                if (j != i) off += std::abs(B(i, j));
            cert.row_margins[static_cast<std::size_t>(i)] = B(i, i) - off;
        }
    }
    cert.lower_bound = *std::min_element(cert.row_margins.begin(), cert.row_margins.end());
    return cert;
}

}  // namespace platoon_lab
