#include "platoon_lab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "platoon_lab/error.hpp"

namespace platoon_lab {

std::vector<double> symmetric_tridiagonal_eigenvalues(std::span<const double> diag,
                                                      std::span<const double> off) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return {};
    if (off.size() + 1 != diag.size()) throw Error("tridiagonal off-diagonal has wrong length");

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy(off.begin(), off.end(), e.begin());

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int kMaxSweeps = 60;

    for (int l = 0; l < n; ++l) {
        int sweeps = 0;
        int m = l;
        do {
            // Find the first negligible off-diagonal at or below l.
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++sweeps > kMaxSweeps) throw Error("tridiagonal QL iteration did not converge");

            // Wilkinson-style shift from the leading 2x2 of the active block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> sign_symmetric_tridiagonal_eigenvalues(std::span<const double> diag,
                                                           std::span<const double> sub,
                                                           std::span<const double> super) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (sub.size() + 1 != n || super.size() + 1 != n)
        throw Error("tridiagonal bands have inconsistent lengths");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(diag.begin(), diag.end(), finite) || !std::all_of(sub.begin(), sub.end(), finite) ||
        !std::all_of(super.begin(), super.end(), finite))
        throw Error("matrix has non-finite entries");

    std::vector<double> eigenvalues;
    eigenvalues.reserve(n);
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin;  // inclusive end of the irreducible block
        while (end + 1 < n) {
            const double product = sub[end] * super[end];
            if (product < 0.0) throw Error("tridiagonal matrix has a complex-spectrum sign pattern");
            if (product == 0.0) break;
            ++end;
        }
        if (end == begin) {
            eigenvalues.push_back(diag[begin]);
        } else {
            // D^-1 T D with d_{k+1}/d_k = sqrt(sub/super) makes both
            // off-diagonals equal to sqrt(sub*super) in magnitude.
            std::vector<double> d(diag.begin() + begin, diag.begin() + end + 1);
            std::vector<double> off;
            off.reserve(end - begin);
            for (std::size_t k = begin; k < end; ++k)
                off.push_back(-std::sqrt(sub[k] * super[k]));
            const auto block = symmetric_tridiagonal_eigenvalues(d, off);
            eigenvalues.insert(eigenvalues.end(), block.begin(), block.end());
        }
        begin = end + 1;
    }
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

}  // namespace platoon_lab
