#pragma once

#include <limits>
#include <vector>

#include "dqwall/calculus.hpp"
#include "dqwall/phase_function.hpp"
#include "dqwall/report.hpp"
#include "dqwall/wavefunction.hpp"

namespace dqwall {

/// psi(x, t) = sum_k c_k e^{-i E_k t} phi_{E_k}(x) with confined eigenstates phi_E.
struct TimeState {
    std::vector<cplx> c;
    std::vector<double> E;

    /// Validates: 1 to 4 terms, E_k > 0 and distinct.
    static TimeState make(std::vector<cplx> c, std::vector<double> E);

    WaveFunction psi_at(double t) const;
    /// d psi / dx at x = 0- (sum of c_k e^{-i E_k t} 2 i sqrt(E_k)).
    cplx wall_derivative(double t) const;
};

/// K(x, p, t) = (2/pi) Im[e^{-2ipx} psi'*(0, t) psi(2x, t)].
PhaseFunction source_term(const TimeState& state, double t, const PhaseGrid& grid);

struct MoyalOptions {
    StencilOptions stencil{};
    std::size_t edge_margin = 8;
    /// Drop the source (negative control).
    bool zero_source = false;
    double tolerance = std::numeric_limits<double>::quiet_NaN();
};

/// d_t rho + 2p d_x rho - K, with a centred time difference of step dt.
ResidualReport moyal_residual(const TimeState& state, double t, double dt, const PhaseGrid& grid,
                              const MoyalOptions& opt = {});

/// The residual field itself (same stencils as moyal_residual).
PhaseFunction moyal_residual_field(const TimeState& state, double t, double dt,
                                   const PhaseGrid& grid, const MoyalOptions& opt = {});

}  // namespace dqwall
