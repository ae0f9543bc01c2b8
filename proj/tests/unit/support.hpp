#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "platoon_lab/analysis.hpp"
#include "platoon_lab/numerics.hpp"
#include "platoon_lab/platoon.hpp"

namespace testing {

using namespace platoon_lab;

inline RationalTF double_integrator() { return {Polynomial{1.0}, Polynomial{0.0, 0.0, 1.0}}; }
inline RationalTF lead_lag() { return {Polynomial{3.0, 43.0, 110.0}, Polynomial{1.0, 2.9, 1.0}}; }
inline RationalTF unity() { return {Polynomial{1.0}, Polynomial{1.0}}; }

inline PlatoonConfig uniform(int n, double gain, double eps, RationalTF vehicle = double_integrator(),
                             RationalTF controller = lead_lag()) {
    return PlatoonConfig::create(n, std::vector<double>(n - 1, gain), std::vector<double>(n - 1, eps),
                                 std::move(vehicle), std::move(controller));
}

inline PlatoonConfig random_config(std::mt19937_64& rng, int n_lo, int n_hi, double mu_lo, double mu_hi,
                                   double eps_lo, double eps_hi, RationalTF vehicle = double_integrator(),
                                   RationalTF controller = lead_lag()) {
    std::uniform_int_distribution<int> nd(n_lo, n_hi);
    std::uniform_real_distribution<double> mu(mu_lo, mu_hi), eps(eps_lo, eps_hi);
    const int n = nd(rng);
    std::vector<double> gains(n - 1), asym(n - 1);
    for (auto& g : gains) g = mu(rng);
    for (auto& e : asym) e = eps(rng);
    return PlatoonConfig::create(n, gains, asym, std::move(vehicle), std::move(controller));
}

inline double rel_diff(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); }

}  // namespace testing
