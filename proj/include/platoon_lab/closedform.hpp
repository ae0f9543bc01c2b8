#pragma once

#include <vector>

namespace platoon_lab {

/// Roots theta of sin(m theta) - sqrt(1/eps) sin((m+1) theta) = 0 in (0, pi),
/// where m = n - 1 is the number of followers (the reduced-Laplacian size).
struct ThetaRoots {
    std::vector<double> thetas;  ///< ascending, N-1 entries
    double epsilon = 0.0;
};

/// Residual of the theta equation for an n-vehicle platoon (m = n - 1).
double theta_residual(int n, double eps, double theta);

/// Bracketing on a 64*N grid plus bisection; the grid is refined 4x once if
/// the root count comes out wrong. Requires n >= 2 and 0 < eps < 1.
ThetaRoots solve_thetas(int n, double eps);

/// Reduced-Laplacian eigenvalues of the homogeneous platoon (unit gains,
/// common asymmetry eps): 1 + eps - 2 sqrt(eps) cos(theta_i), ascending.
std::vector<double> closedform_eigenvalues(int n, double eps);

}  // namespace platoon_lab
