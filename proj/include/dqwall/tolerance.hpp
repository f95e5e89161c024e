#pragma once

#include "dqwall/grid.hpp"
#include "dqwall/star.hpp"

/// Frozen residual tolerances of the form C * (dx^2 + dp^2).
///
/// Each C was measured once on the E = 1 confined state on the desk grid
/// (dx^2 + dp^2 = 1.915e-3, default stencils) and rounded up with headroom;
/// the measured value is noted next to it. They are not adjusted per input.
namespace dqwall::tolerance {

/// Bopp-shift residuals (p^2 - E) * f on smooth data. Measured 1.4e-8 on the
/// full-line line spectrum; the confined state gives 665 (the expected failure).
inline constexpr double kBopp = 0.5;
/// (p^2 + delta'_-) * f - E f, per extrapolation rule. Measured 368, 10.4, 3.35.
inline constexpr double kDeltaPrimeFixed = 600.0;
inline constexpr double kDeltaPrimeRichardson2 = 25.0;
inline constexpr double kDeltaPrimeRichardson3 = 8.0;
/// Wall conditions f, f', f'' and the marginal at x = 0-. Measured 0.371.
inline constexpr double kBoundary = 1.0;
/// Fourth-order equation. Measured 0.0425 on the physical solution and 4.43
/// on a single exponential basis element.
inline constexpr double kFourthOrder = 10.0;
/// Triple star product on the physical solution. Measured 0.852.
inline constexpr double kTripleStar = 4.0;
/// Regular part of the equivalence chain. Measured 8.19.
inline constexpr double kEquivalenceRegular = 20.0;
/// Pure-state PDE on log Sigma (scale dy^2 + dp^2). Measured 0.021.
inline constexpr double kPureState = 0.05;
/// Moyal transport identity with the wall source. Measured 0.0407.
inline constexpr double kMoyal = 0.1;
/// Real-part identity of the exponential-wall eigenproblem (alpha = 1). Measured 1.3e-6.
inline constexpr double kWallRealPart = 1e-4;
/// Relative accuracy of the wall delta coefficient and of the third derivative.
inline constexpr double kDeltaCoefficientRelative = 0.01;
inline constexpr double kThirdDerivativeRelative = 0.01;
inline constexpr double kThirdDerivativeSpread = 1e-6;

inline double scaled(double C, const PhaseGrid& g) { return C * g.h2(); }

inline double deltaprime(Extrapolation e) {
    switch (e) {
        case Extrapolation::fixed: return kDeltaPrimeFixed;
        case Extrapolation::richardson2: return kDeltaPrimeRichardson2;
        case Extrapolation::richardson3: return kDeltaPrimeRichardson3;
    }
    return kDeltaPrimeFixed;
}

}  // namespace dqwall::tolerance
