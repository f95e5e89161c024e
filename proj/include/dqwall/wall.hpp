#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dqwall/dp.hpp"
#include "dqwall/phase_function.hpp"
#include "dqwall/report.hpp"
#include "dqwall/wavefunction.hpp"

namespace dqwall {

/// Exponential wall V(x) = e^{2 alpha x}.
struct WallParameters {
    double alpha;
    double E;
    double x_match = -20.0;  // left end of the phase fit window [x_match, x_match/2]
    double x_far = 0.0;      // integration starts at x_far + 2/alpha

    /// x_far = ln(18 alpha + sqrt(E)) / alpha, deep in the forbidden region.
    static WallParameters make(double alpha, double E, double x_match = -20.0);
    double potential(double x) const;
    /// Throws std::invalid_argument when the parameter invariants fail.
    void validate() const;
};

struct RegularizedEigenstate {
    WallParameters params;
    WaveFunction xi;          // real, asymptotically 2 sin(k x + phase_shift)
    double phase_shift = 0.0; // in (-pi/2, pi/2]
    double fit_residual = 0.0;
    double integration_start = 0.0;
};

/// Integrates -xi'' + V xi = E xi leftward with fixed-step RK4 from the decaying
/// branch, down to min(x_match, x_left), and fixes amplitude and phase on the
/// fit window. n_nodes >= 2000.
RegularizedEigenstate solve_wall_state(const WallParameters& params, std::size_t n_nodes = 32769,
                                       double x_left = -30.0);

/// The soft wall makes the y integrand smooth, so a coarser quadrature step suffices.
inline WignerOptions wall_wigner_options() {
    WignerOptions o;
    o.quad_step = 0.01;
    return o;
}

/// Windowed-quadrature Wigner function of the sampled state.
PhaseFunction wigner_of_wall_state(const RegularizedEigenstate& state, const PhaseGrid& grid,
                                   const WignerOptions& opt = wall_wigner_options());

/// (p^2 - d^2/4) f + T - E f, where T is the Wigner-type transform of xi with
/// the weight (V(x+y) + V(x-y))/2 (the real part of V star f).
ResidualReport wall_real_part_residual(const RegularizedEigenstate& state, const PhaseGrid& grid,
                                       const ResidualOptions& opt = {},
                                       const WignerOptions& wopt = wall_wigner_options());

struct WallLimitRow {
    double alpha = 0.0;
    double sup_distance = 0.0;
    double phase_shift = 0.0;
    /// Relative change of sup_distance and absolute change of phase_shift
    /// when the integrator step is halved (NaN when not computed).
    double distance_change = 0.0, phase_change = 0.0;
};

struct WallLimitStudy {
    double E = 0.0;
    std::vector<WallLimitRow> rows;
    std::vector<PhaseFunction> f_alpha;
    bool monotone = true;
    std::string offending;  // first pair breaking strict decrease
    bool self_convergent = true;
    bool pass() const { return monotone && self_convergent; }
};

/// d(alpha) = max over nodes |f_alpha - f| against the confined Wigner function.
/// alphas must be strictly increasing with at least three values.
WallLimitStudy wall_limit_study(double E, const std::vector<double>& alphas,
                                const PhaseGrid& grid, std::size_t n_nodes = 32769,
                                bool check_convergence = true);

}  // namespace dqwall
