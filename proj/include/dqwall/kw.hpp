#pragma once

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dqwall/calculus.hpp"
#include "dqwall/dp.hpp"
#include "dqwall/phase_function.hpp"
#include "dqwall/report.hpp"

namespace dqwall {

/// rho = A e^{r1 x} + A* e^{r2 x} + B e^{r3 x} + B* e^{r4 x} with
/// r1 = 2i(p + k), r2 = r1*, r3 = 2i(p - k), r4 = r3*, k = sqrt(E).
struct KWSolutionBasis {
    double E;
    std::vector<cplx> A, B;  // one per p node

    static std::array<cplx, 4> roots(double E, double p);
};

/// N(p) in the boundary-filtered solution.
struct MomentumProfile {
    enum class Family { physical, exponential, custom };
    Family family = Family::physical;
    double a = 0.0;                          // exponential: e^{a p} / p
    std::function<double(double)> custom{};  // custom: N(p)

    static MomentumProfile physical() { return {}; }
    static MomentumProfile exponential(double a) { return {Family::exponential, a, {}}; }
    static MomentumProfile samples(std::function<double(double)> n) {
        return {Family::custom, 0.0, std::move(n)};
    }

    double operator()(double p) const;
    /// True for the e^{ap}/p families, whose pole at p = 0 cancels in rho.
    bool has_pole_at_zero() const { return family != Family::custom; }
};

/// (1/16) d4 rho + (1/2)(p^2 + E) d2 rho + (p^2 - E)^2 rho.
ResidualReport kw_residual(const PhaseFunction& rho, double E, const ResidualOptions& opt = {});

/// (p^2 - E) * rho * (p^2 - E) on the smooth whole-line solution.
ResidualReport triple_star_residual(const PhaseFunction& rho, double E,
                                    const ResidualOptions& opt = {});

PhaseFunction assemble_solution(const KWSolutionBasis& basis, const PhaseGrid& grid);

/// Coefficients A = N/(2i(p+k)), B = -N/(2i(p-k)) reproducing the sine form.
/// Throws if a momentum node sits on p = -+k, where they diverge.
KWSolutionBasis sine_coefficients(double E, const MomentumProfile& N, const PhaseGrid& grid);

/// rho = N(p) {sin[2x(p+k)]/(p+k) - sin[2x(p-k)]/(p-k)}, with the sinc limit 2x
/// at p = -+k and a two-sided numerical limit at p = 0 for 1/p profiles.
PhaseFunction apply_boundary_filter(double E, const MomentumProfile& N, const PhaseGrid& grid);

/// Pointwise value of the filtered solution.
double filtered_value(double E, const MomentumProfile& N, double x, double p);

/// theta(-x) * g; the wall node is kept, where confined solutions vanish.
PhaseFunction confine(const PhaseFunction& g);

/// rho(0), d rho(0), d2 rho(0) with central stencils (the smooth-extension conditions).
ResidualReport smooth_boundary_check(const PhaseFunction& rho, const ResidualOptions& opt = {});

struct PureStateOptions {
    double y_max = 10.0;
    std::size_t n_y = 401;
    /// f -> e^{2 eta x} f, which maps W[phi] to W[e^{eta x} phi] and so
    /// preserves purity while making confined states decay at x -> -inf.
    double damping = 0.0;
    double floor = 1e-6;         // mask |Sigma| > floor * max |Sigma|
    double min_coverage = 0.3;
    double tolerance = std::numeric_limits<double>::quiet_NaN();
};

struct PureStateReport {
    ResidualReport report;
    double coverage = 0.0;  // fraction of (y, p) nodes evaluated
};

/// d2/dy2 ln Sigma - (1/4) d2/dp2 ln Sigma on the masked region, Sigma = fourier_x(f).
PureStateReport purestate_residual(const PhaseFunction& f, const PureStateOptions& opt = {});

struct ProfileReport {
    ResidualReport report;
    double fitted_a = 0.0;
    bool structural_failure = false;     // p N(p) <= 0 somewhere
    std::vector<double> p, second_derivative;
};

/// d2/dp2 ln[p N(p)] on the given momenta (one or two contiguous runs of a
/// uniform lattice, avoiding p = 0); also fits a from the slope of ln[p N(p)].
ProfileReport profile_consistency(const MomentumProfile& N, const std::vector<double>& p_nodes,
                                  double tolerance = 1e-6);

/// Grid momenta with |p| >= p_exclude.
std::vector<double> momenta_away_from_zero(const PhaseGrid& g, double p_exclude = 0.5);

struct PhysicalSelection {
    PhaseFunction f;                       // theta(-x) rho with N = 1/p
    double a = 0.0;                        // selected exponent
    std::vector<std::pair<double, double>> scan;  // (a, boundary score)
};

/// Boundary score of the e^{ap}/p family: |M_a(x_-)| / max_x |M_a(x)|, where
/// M_a is the marginal of theta(-x) rho_a and x_- the last node left of the wall.
double marginal_boundary_score(double E, double a, const PhaseGrid& grid);

/// Builds theta(-x) rho_{1/p} and confirms that the wall marginal selects a = 0:
/// coarse scan over {-0.5, 0, 0.5}, then golden-section refinement to 1e-3.
/// Throws ScanTie when two coarse scores tie.
PhysicalSelection select_physical(double E, const PhaseGrid& grid);

struct CrossFit {
    double constant = 0.0;  // least-squares c in f = c theta(-x) rho
    double residual = 0.0;  // max |f - c theta(-x) rho|
};

/// Fits the single constant relating the DP Wigner function f to the confined
/// KW solution theta(-x) rho.
CrossFit cross_formulation_fit(const PhaseFunction& f, const PhaseFunction& confined_rho);

struct ScanTie : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dqwall
