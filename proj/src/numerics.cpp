#include "platoon_lab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "platoon_lab/error.hpp"

namespace platoon_lab {
namespace {

constexpr double kTrimRelative = 1e-14;

std::vector<double> normalized(std::vector<double> c) {
    for (double v : c) {
        if (!std::isfinite(v)) throw Error("polynomial coefficient is not finite");
    }
    double max_abs = 0.0;
    for (double v : c) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) return {0.0};
    const double cutoff = kTrimRelative * max_abs;
    while (c.size() > 1 && std::abs(c.back()) <= cutoff) c.pop_back();
    return c;
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(normalized(std::vector<double>(coeffs))) {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(normalized(std::move(coeffs))) {}

int Polynomial::zero_root_multiplicity() const noexcept {
    if (is_zero()) return 0;
    int k = 0;
    while (coeffs_[static_cast<std::size_t>(k)] == 0.0) ++k;
    return k;
}

Complex poly_eval(const Polynomial& p, Complex s) {
    const auto& c = p.coeffs();
    Complex acc{c.back(), 0.0};
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return Polynomial(std::move(out));
}

Polynomial poly_add_scaled(const Polynomial& a, const Polynomial& b, double c) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<double> out(std::max(x.size(), y.size()), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] += x[k];
    for (std::size_t k = 0; k < y.size(); ++k) out[k] += c * y[k];
    return Polynomial(std::move(out));
}

Polynomial poly_scale(const Polynomial& p, double c) {
    std::vector<double> out = p.coeffs();
    for (double& v : out) v *= c;
    return Polynomial(std::move(out));
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    if (p.degree() < 1) throw Error("no roots defined");
    const auto& c = p.coeffs();
    const int n = p.degree();
    const double lead = c.back();

    // Companion matrix of the monic polynomial: ones on the subdiagonal,
    // negated normalized coefficients in the last column.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    const Eigen::VectorXcd ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Polynomial poly_from_roots(std::span<const Complex> roots, double leading) {
    std::vector<Complex> acc{Complex{leading, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex{});
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k];
            next[k] -= r * acc[k];
        }
        acc = std::move(next);
    }
    std::vector<double> re(acc.size());
    std::transform(acc.begin(), acc.end(), re.begin(), [](Complex z) { return z.real(); });
    return Polynomial(std::move(re));
}

RationalTF::RationalTF(Polynomial numerator, Polynomial denominator)
    : num(std::move(numerator)), den(std::move(denominator)) {
    if (den.is_zero()) throw Error("transfer function denominator is identically zero");
}

Complex rtf_eval(const RationalTF& tf, Complex s) {
    const Complex d = poly_eval(tf.den, s);
    if (d == Complex{}) throw Error("pole at evaluation point");
    return poly_eval(tf.num, s) / d;
}

RationalTF rtf_mul(const RationalTF& a, const RationalTF& b) {
    return RationalTF(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

}  // namespace platoon_lab
