#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace platoon_lab {

using Complex = std::complex<double>;

/**
 * Real polynomial in the Laplace variable, coefficients stored in ascending
 * order: coeffs()[k] multiplies s^k.
 *
 * Always normalized: trailing coefficients with |c| <= 1e-14 * max|c| are
 * dropped, and the zero polynomial is the single coefficient 0.
 */
class Polynomial {
public:
    Polynomial();
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double leading() const noexcept { return coeffs_.back(); }
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root at s = 0.
    int zero_root_multiplicity() const noexcept;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coeffs_;
};

Complex poly_eval(const Polynomial& p, Complex s);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
/// a + c*b, zero-padded to the longer operand, renormalized.
Polynomial poly_add_scaled(const Polynomial& a, const Polynomial& b, double c);
Polynomial poly_scale(const Polynomial& p, double c);

/// All complex roots, as eigenvalues of the companion matrix of the monic
/// normalization. Order is unspecified. Throws Error for constant polynomials.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Rebuilds leading * prod (s - r) from a root list; imaginary parts of the
/// coefficients are discarded.
Polynomial poly_from_roots(std::span<const Complex> roots, double leading);

/// Ratio of two polynomials. No pole-zero cancellation is ever performed.
struct RationalTF {
    Polynomial num;
    Polynomial den{1.0};

    RationalTF() = default;
    RationalTF(Polynomial numerator, Polynomial denominator);

    bool is_proper() const noexcept { return num.degree() <= den.degree() || num.is_zero(); }
    bool is_strictly_proper() const noexcept { return num.degree() < den.degree() || num.is_zero(); }

    friend bool operator==(const RationalTF&, const RationalTF&) = default;
};

/// Throws Error("pole at evaluation point") when the denominator vanishes at s.
Complex rtf_eval(const RationalTF& tf, Complex s);
/// Series connection a*b, numerators and denominators multiplied verbatim.
RationalTF rtf_mul(const RationalTF& a, const RationalTF& b);

}  // namespace platoon_lab
