#include "platoon_lab/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "platoon_lab/error.hpp"

namespace platoon_lab {
namespace {

constexpr double kResidualTarget = 1e-12;

double bisect(int n, double eps, double lo, double hi) {
    double f_lo = theta_residual(n, eps, lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = theta_residual(n, eps, mid);
        if (std::abs(f_mid) <= kResidualTarget || mid == lo || mid == hi) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> bracket_roots(int n, double eps, int grid_points) {
    std::vector<double> roots;
    const double step = std::numbers::pi / grid_points;
    double prev_theta = step;
    double prev_f = theta_residual(n, eps, prev_theta);
    if (prev_f == 0.0) roots.push_back(prev_theta);
    for (int k = 2; k < grid_points; ++k) {
        const double theta = k * step;
        const double f = theta_residual(n, eps, theta);
        if (f == 0.0) {
            roots.push_back(theta);
        } else if (prev_f != 0.0 && (f < 0.0) != (prev_f < 0.0)) {
            roots.push_back(bisect(n, eps, prev_theta, theta));
        }
        prev_theta = theta;
        prev_f = f;
    }
    return roots;
}

}  // namespace

double theta_residual(int n, double eps, double theta) {
    const int followers = n - 1;
    return std::sin(followers * theta) - std::sqrt(1.0 / eps) * std::sin((followers + 1) * theta);
}

ThetaRoots solve_thetas(int n, double eps) {
    if (n < 2) throw Error("closed form requires n >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw Error("closed form requires 0 < eps < 1");

    const auto wanted = static_cast<std::size_t>(n - 1);
    auto roots = bracket_roots(n, eps, 64 * n);
    if (roots.size() != wanted) roots = bracket_roots(n, eps, 256 * n);
    if (roots.size() != wanted)
        throw Error("root bracketing failed: found " + std::to_string(roots.size()) + " of " +
                    std::to_string(wanted) + " roots");
    return {std::move(roots), eps};
}

std::vector<double> closedform_eigenvalues(int n, double eps) {
    const ThetaRoots roots = solve_thetas(n, eps);
    const double root_eps = std::sqrt(eps);
    std::vector<double> values;
    values.reserve(roots.thetas.size());
    for (double theta : roots.thetas) values.push_back(1.0 + eps - 2.0 * root_eps * std::cos(theta));
    std::sort(values.begin(), values.end());
    return values;
}

}  // namespace platoon_lab
