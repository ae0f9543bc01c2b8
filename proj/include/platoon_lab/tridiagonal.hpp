#pragma once

#include <span>
#include <vector>

namespace platoon_lab {

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (off[k] couples rows k and k+1), by implicit-shift QL.
/// Returned sorted ascending.
std::vector<double> symmetric_tridiagonal_eigenvalues(std::span<const double> diag,
                                                      std::span<const double> off);

/// Eigenvalues of a real tridiagonal matrix whose off-diagonal products
/// sub[k]*super[k] are all >= 0 (so the spectrum is real).
///
/// The matrix is split into irreducible blocks wherever a product is zero;
/// each block is symmetrized by a diagonal similarity and handed to the
/// symmetric QL iteration. Throws Error on a negative product or non-finite input.
std::vector<double> sign_symmetric_tridiagonal_eigenvalues(std::span<const double> diag,
                                                           std::span<const double> sub,
                                                           std::span<const double> super);

}  // namespace platoon_lab
