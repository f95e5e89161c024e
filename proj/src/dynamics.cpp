#include "dqwall/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "dqwall/dp.hpp"
#include "dqwall/tolerance.hpp"

namespace dqwall {

TimeState TimeState::make(std::vector<cplx> c, std::vector<double> E) {
    if (c.empty() || c.size() > 4 || c.size() != E.size())
        throw std::invalid_argument("TimeState: need 1 to 4 (c, E) pairs");
    for (std::size_t k = 0; k < E.size(); ++k) {
        if (!(E[k] > 0.0) || !std::isfinite(E[k]))
            throw std::invalid_argument("TimeState: energies must be positive");
        for (std::size_t m = 0; m < k; ++m)
            if (E[m] == E[k]) throw std::invalid_argument("TimeState: energies must be distinct");
    }
    return {std::move(c), std::move(E)};
}

WaveFunction TimeState::psi_at(double t) const {
    std::vector<Mode> modes;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double q = std::sqrt(E[k]);
        const cplx a = c[k] * std::exp(cplx(0.0, -E[k] * t));
        modes.push_back({a, q});
        modes.push_back({-a, -q});
    }
    return WaveFunction::confined_sum(std::move(modes));
}

cplx TimeState::wall_derivative(double t) const {
    cplx d = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        d += c[k] * std::exp(cplx(0.0, -E[k] * t)) * cplx(0.0, 2.0 * std::sqrt(E[k]));
    return d;
}

PhaseFunction source_term(const TimeState& state, double t, const PhaseGrid& grid) {
    const WaveFunction psi = state.psi_at(t);
    const cplx dw = std::conj(state.wall_derivative(t));
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const double x = grid.x(i);
        const cplx base = dw * psi(2.0 * x);
        for (std::size_t j = 0; j < grid.n_p(); ++j)
            v[grid.index(i, j)] =
                (2.0 / M_PI) * (std::exp(cplx(0.0, -2.0 * grid.p(j) * x)) * base).imag();
    }
    return PhaseFunction(grid, std::move(v), "source");
}

PhaseFunction moyal_residual_field(const TimeState& state, double t, double dt,
                                   const PhaseGrid& grid, const MoyalOptions& opt) {
    if (!(dt > 0.0)) throw std::invalid_argument("moyal_residual: dt must be positive");
    PhaseFunction minus = wigner_transform(state.psi_at(t - dt), grid);
    PhaseFunction now = wigner_transform(state.psi_at(t), grid);
    PhaseFunction plus = wigner_transform(state.psi_at(t + dt), grid);
    PhaseFunction dx = partial_derivative_x(now, 1, opt.stencil);
    std::vector<cplx> r(grid.size());
    for (std::size_t i = 0; i < grid.n_x(); ++i)
        for (std::size_t j = 0; j < grid.n_p(); ++j) {
            const std::size_t k = grid.index(i, j);
            r[k] = (plus.values()[k] - minus.values()[k]) / (2.0 * dt) +
                   2.0 * grid.p(j) * dx.values()[k];
        }
    PhaseFunction lhs(grid, std::move(r), "moyal-residual");
    if (opt.zero_source) return lhs;
    return lhs - source_term(state, t, grid);
}

ResidualReport moyal_residual(const TimeState& state, double t, double dt, const PhaseGrid& grid,
                              const MoyalOptions& opt) {
    return make_report(opt.zero_source ? "d_t rho + 2p d_x rho (source dropped)"
                                       : "d_t rho + 2p d_x rho - K",
                       moyal_residual_field(state, t, dt, grid, opt),
                       interior_x(grid, opt.edge_margin),
                       std::isnan(opt.tolerance) ? tolerance::scaled(tolerance::kMoyal, grid)
                                                 : opt.tolerance);
}

}  // namespace dqwall
