#pragma once

#include "torusopt/types.hpp"

// Central home for every numerical tolerance. All residual checks are
// relative, scaled by the magnitude of the data with a floor of 1.

namespace torusopt::tol {

/// Closedness / period-consistency residuals: 1e-10 * max(1, max|w|).
inline constexpr Real kResidualRel = 1e-10;

/// Harmonicity (vertex-sum) residuals of solved forms and embeddings.
inline constexpr Real kHarmonicRel = 1e-9;

/// Stokes pairing identity.
inline constexpr Real kPairingRel = 1e-9;

/// Agreement between the eigenvalue and reduced-determinant energy routes.
inline constexpr Real kDetRouteRel = 1e-7;

/// Pivot threshold for the positive-definiteness test of the Gram matrix.
inline constexpr Real kPivotRel = 1e-12;

/// Eigenvalues below this fraction of the largest are treated as kernel.
inline constexpr Real kEigZeroRel = 1e-9;

/// Absolute tolerance for comparing moduli componentwise.
inline constexpr Real kTauAbs = 1e-8;

/// Dual/primal edge ratio must match the weight this tightly.
inline constexpr Real kDelaunayRatioRel = 1e-8;

/// Conjugate-period proportionality defect threshold for a PASS verdict.
inline constexpr Real kDelaunayDefect = 1e-8;

/// Strict-convexity cross-product threshold, scaled by edge length squared.
inline constexpr Real kConvexityRel = 1e-10;

/// Gradient norm at which the brute-force minimizer stops.
inline constexpr Real kOracleGrad = 1e-10;

}  // namespace torusopt::tol
