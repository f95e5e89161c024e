#pragma once

#include <cstddef>

#include "dqwall/calculus.hpp"
#include "dqwall/phase_function.hpp"
#include "dqwall/report.hpp"
#include "dqwall/tail.hpp"

namespace dqwall {

enum class Side { left, right };

/// Star multiplication by a polynomial symbol c0 + c1 p + c2 p^2, realized by
/// the Bopp shift p -> p -+ (i/2) d/dx (left: minus, right: plus).
struct BoppOperator {
    Side side = Side::left;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    /// Symbol p^2 - E.
    static BoppOperator p2_minus(double E, Side side);

    PhaseFunction apply(const PhaseFunction& f, const StencilOptions& opt = {}) const;
    /// On a line spectrum the shift acts on the coefficients with p -> p_l.
    LineSpectrum apply(const LineSpectrum& f, const StencilOptions& opt = {}) const;
};

enum class Extrapolation { fixed, richardson2, richardson3 };

/// Offset realizing the left limit in delta'_-: the shifted slice x - eps is
/// read from the lattice, so eps must be a whole number of x steps (>= 1).
/// richardson2 combines eps and 2 eps, richardson3 adds 3 eps.
struct EpsilonRule {
    double epsilon;
    Extrapolation extrapolation = Extrapolation::richardson2;

    static EpsilonRule lattice(const PhaseGrid& g, Extrapolation e = Extrapolation::richardson2,
                               std::size_t steps = 1);
    /// eps in lattice steps; throws if eps < dx or off-lattice.
    std::size_t steps(const PhaseGrid& g) const;
    /// Largest multiple of eps used by the extrapolation.
    std::size_t levels() const;
};

PhaseFunction star_p2_left(const PhaseFunction& f, double E_shift, const StencilOptions& opt = {});
PhaseFunction star_p2_right(const PhaseFunction& f, double E_shift,
                            const StencilOptions& opt = {});
LineSpectrum star_p2_left(const LineSpectrum& f, double E_shift, const StencilOptions& opt = {});
LineSpectrum star_p2_right(const LineSpectrum& f, double E_shift,
                           const StencilOptions& opt = {});

struct DeltaPrimeOptions {
    /// Add the fitted asymptotic tails to the truncated momentum integral.
    bool tail_correction = true;
    TailModel tails{};
};

/// delta'_-(x) * f = lim (2i/pi) e^{2ipx} integral dq (p - q) e^{-2iqx} f(x - eps, q).
/// Nodes whose shifted slice falls off the window are returned as zero; see
/// deltaprime_first_valid.
PhaseFunction star_deltaprime_left(const PhaseFunction& f, const EpsilonRule& rule,
                                   const DeltaPrimeOptions& opt = {});
/// f * delta'_-, the mirror kernel (complex conjugate of the left one for real f).
PhaseFunction star_deltaprime_right(const PhaseFunction& f, const EpsilonRule& rule,
                                    const DeltaPrimeOptions& opt = {});
std::size_t deltaprime_first_valid(const EpsilonRule& rule, const PhaseGrid& g);
/// Nodes right of the wall within reach of the shifted slices, where the finite
/// offset smears the wall term: (i0, i0 + steps * levels).
NodeRange deltaprime_wall_layer(const EpsilonRule& rule, const PhaseGrid& g);

/// Largest |f| on the p-window edges; the kernel truncates there.
double p_edge_tail(const PhaseFunction& f);

struct SandwichOptions {
    double test_half_width = 1.0;  // support of the bump test function
    DeltaPrimeOptions kernel{};
    StencilOptions stencil{};
};

struct SandwichResult {
    /// Closed form: regular part zero, delta coefficient |psi'(0)|^2 / 2pi.
    DistributionalValue value;
    /// Weak-sense pairing with the test function, numeric and closed form, per p node.
    std::vector<cplx> weak_numeric;
    std::vector<cplx> weak_closed;
    double max_discrepancy = 0.0;           // max over p of |numeric - closed|
    double relative_discrepancy = 0.0;      // divided by |closed| (or absolute if 0)
    double wall_derivative_squared = 0.0;   // recovered |psi'(0)|^2
};

/// delta'_- * f * delta'_- for the Wigner function f of a confined pure state
/// with left wall derivative psi'(0). The numeric value pairs the sandwich
/// with a smooth bump t(x) centred on the wall:
///   integral dx t(x) S(x,p) = (1/2pi) d_a d_b [t((a+b)/2) e^{-ip(a-b)} rho(a-eps, b-eps)]
/// at a = b = 0, where rho is the density matrix recovered from the momentum
/// moments of f.
SandwichResult star_deltaprime_sandwich(const PhaseFunction& f, cplx psi_prime_0,
                                        const EpsilonRule& rule,
                                        const SandwichOptions& opt = {});

/// (p^2 - E) * f * (p^2 - E).
PhaseFunction triple_star_p2(const PhaseFunction& f, double E, const StencilOptions& opt = {});

}  // namespace dqwall
