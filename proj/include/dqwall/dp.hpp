#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "dqwall/calculus.hpp"
#include "dqwall/phase_function.hpp"
#include "dqwall/report.hpp"
#include "dqwall/star.hpp"
#include "dqwall/wavefunction.hpp"

namespace dqwall {

/// Free particle confined to x < 0, phi = theta(-x)(e^{ikx} - e^{-ikx}), k = sqrt(E).
struct ConfinedEigenstate {
    double E;
    WaveFunction phi;
    cplx psi_prime_0;  // 2 i sqrt(E)

    static ConfinedEigenstate make(double E);
};

struct WignerOptions {
    /// y step of the windowed quadrature used for sampled wavefunctions.
    double quad_step = 0.0025;
    /// A sampled edge counts as decayed below this fraction of max |phi|.
    double decay_fraction = 1e-8;
};

/// f(x,p) = (1/pi) integral dy e^{-2ipy} phi*(x-y) phi(x+y).
/// Confined plane-wave sums use the exact finite-limit integral; sampled
/// wavefunctions use windowed quadrature. Full-line states have no grid
/// representation (see wigner_lines).
PhaseFunction wigner_transform(const WaveFunction& phi, const PhaseGrid& grid,
                               const WignerOptions& opt = {});

/// Pointwise closed form for confined plane-wave sums.
cplx wigner_at(const WaveFunction& phi, double x, double p);

/// Line spectrum of an unconfined plane-wave sum: lines at (k_m + k_n)/2
/// with coefficients a_m* a_n e^{i(k_n - k_m)x}.
LineSpectrum wigner_lines(const WaveFunction& phi, const PhaseGrid& grid);

/// Windowed quadrature (1/pi) integral dy e^{-2ipy} w(x,y) phi*(x-y) phi(x+y)
/// for a sampled phi; w must be even in y (defaults to 1).
PhaseFunction wigner_quadrature(const WaveFunction& phi, const PhaseGrid& grid,
                                const WignerOptions& opt = {},
                                const std::function<double(double, double)>& weight = {});

struct ResidualOptions {
    StencilOptions stencil{};
    DeltaPrimeOptions kernel{};
    /// Nodes dropped at each x-window edge.
    std::size_t edge_margin = 8;
    /// Overrides the frozen tolerance when set.
    double tolerance = std::numeric_limits<double>::quiet_NaN();
};

/// max |p^2 * f - E f|.
ResidualReport naive_stargenvalue_residual(const PhaseFunction& f, double E,
                                           const ResidualOptions& opt = {});
ResidualReport naive_stargenvalue_residual(const LineSpectrum& f, double E,
                                           const ResidualOptions& opt = {});

/// Worse of (p^2 + delta'_-) * f - E f and f * (p^2 + delta'_-) - E f.
ResidualReport dp_stargenvalue_residual(const PhaseFunction& f, double E,
                                        const EpsilonRule& rule,
                                        const ResidualOptions& opt = {});

struct BoundaryReport {
    ResidualReport report;
    double value = 0.0, first = 0.0, second = 0.0, marginal = 0.0;  // max over p
};

/// f, df/dx, d2f/dx2 at x = 0- (left stencils) and the marginal there.
BoundaryReport boundary_conditions_check(const PhaseFunction& f,
                                         const ResidualOptions& opt = {});

struct EquivalenceReport {
    ResidualReport regular;
    ResidualReport delta;
    std::vector<double> delta_from_stencil;  // -(1/16) d3f(0-, p)
    double delta_closed = 0.0;               // |psi'(0)|^2 / 2pi
    bool pass() const { return regular.pass && delta.pass; }
};

/// 2E Re(p^2 * f) - p^2 * f * p^2 + delta'_- * f * delta'_- - E^2 f = 0 split into
/// its regular part (nodewise, away from the wall) and its delta(x) part.
EquivalenceReport equivalence_chain_residual(const PhaseFunction& f, double E, cplx psi_prime_0,
                                             const EpsilonRule& rule,
                                             const ResidualOptions& opt = {},
                                             std::size_t wall_exclusion = 2);

struct ThirdDerivativeReport {
    ResidualReport report;
    double expected = 0.0, mean = 0.0, relative_spread = 0.0;
    bool value_ok = true, constant_ok = true;
};

/// d3 rho / dx3 at x = 0 (central stencils) against -(8/pi)|psi'(0)|^2.
ThirdDerivativeReport third_derivative_identity(const PhaseFunction& rho, cplx psi_prime_0,
                                                int accuracy = 12);

}  // namespace dqwall
