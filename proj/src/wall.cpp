#include "dqwall/wall.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dqwall/calculus.hpp"
#include "dqwall/tolerance.hpp"

namespace dqwall {

namespace {

double pick(double override_tol, double fallback) {
    return std::isnan(override_tol) ? fallback : override_tol;
}

double sup_distance(const PhaseFunction& a, const PhaseFunction& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        d = std::max(d, std::abs(a.values()[k] - b.values()[k]));
    return d;
}

}  // namespace

WallParameters WallParameters::make(double alpha, double E, double x_match) {
    WallParameters w{alpha, E, x_match, 0.0};
    if (alpha > 0.0 && E > 0.0) w.x_far = std::log(18.0 * alpha + std::sqrt(E)) / alpha;
    w.validate();
    return w;
}

double WallParameters::potential(double x) const { return std::exp(2.0 * alpha * x); }

void WallParameters::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("WallParameters: alpha must be positive");
    if (!(E > 0.0) || !std::isfinite(E)) throw std::invalid_argument("WallParameters: E must be positive");
    if (!(x_match < 0.0)) throw std::invalid_argument("WallParameters: x_match must be negative");
    if (!(x_far > 0.0)) throw std::invalid_argument("WallParameters: x_far must be positive");
    if (!(potential(x_far) > 100.0 * E))
        throw std::invalid_argument("WallParameters: x_far is not deep in the forbidden region");
    if (!(potential(x_match) < 1e-8 * E))
        throw std::invalid_argument("WallParameters: x_match is not deep enough");
}

RegularizedEigenstate solve_wall_state(const WallParameters& params, std::size_t n_nodes,
                                       double x_left) {
    params.validate();
    if (n_nodes < 2000) throw std::invalid_argument("solve_wall_state: n_nodes must be >= 2000");
    const double x0 = params.x_far + 2.0 / params.alpha;
    const double x1 = std::min(params.x_match, x_left);
    const double h = (x0 - x1) / static_cast<double>(n_nodes - 1);
    const double E = params.E;
    auto acc = [&](double x, double v) { return (params.potential(x) - E) * v; };

    // stored from the right end, reversed at the end
    std::vector<double> xi(n_nodes), dxi(n_nodes);
    double v = 1.0, d = -std::sqrt(params.potential(x0) - E);
    xi[0] = v;
    dxi[0] = d;
    for (std::size_t n = 1; n < n_nodes; ++n) {
        const double x = x0 - static_cast<double>(n - 1) * h, s = -h;
        double k1v = d, k1d = acc(x, v);
        double k2v = d + 0.5 * s * k1d, k2d = acc(x + 0.5 * s, v + 0.5 * s * k1v);
        double k3v = d + 0.5 * s * k2d, k3d = acc(x + 0.5 * s, v + 0.5 * s * k2v);
        double k4v = d + s * k3d, k4d = acc(x + s, v + s * k3v);
        v += s / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        d += s / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        if (!std::isfinite(v) || !std::isfinite(d))
            throw std::overflow_error("solve_wall_state: overflow in the forbidden region");
        if (std::abs(v) > 1e200) {
            for (std::size_t m = 0; m < n; ++m) {
                xi[m] *= 1e-200;
                dxi[m] *= 1e-200;
            }
            v *= 1e-200;
            d *= 1e-200;
        }
        xi[n] = v;
        dxi[n] = d;
    }
    std::reverse(xi.begin(), xi.end());
    std::reverse(dxi.begin(), dxi.end());

    // least squares A sin(kx) + B cos(kx) on the fit window
    const double k = std::sqrt(E);
    double ss = 0, sc = 0, cc = 0, ys = 0, yc = 0;
    std::vector<std::size_t> window;
    for (std::size_t n = 0; n < n_nodes; ++n) {
        const double x = x1 + static_cast<double>(n) * h;
        if (x < params.x_match || x > 0.5 * params.x_match) continue;
        window.push_back(n);
        const double s = std::sin(k * x), c = std::cos(k * x);
        ss += s * s;
        sc += s * c;
        cc += c * c;
        ys += xi[n] * s;
        yc += xi[n] * c;
    }
    if (window.size() < 16) throw std::runtime_error("solve_wall_state: fit window too small");
    const double det = ss * cc - sc * sc;
    double A = (ys * cc - yc * sc) / det, B = (yc * ss - ys * sc) / det;
    double amp = std::hypot(A, B);
    if (!(amp > 0.0)) throw std::runtime_error("solve_wall_state: zero asymptotic amplitude");
    double delta = std::atan2(B, A);
    double sign = 1.0;
    if (delta > M_PI / 2) {
        delta -= M_PI;
        sign = -1.0;
    } else if (delta <= -M_PI / 2) {
        delta += M_PI;
        sign = -1.0;
    }
    const double scale = sign * 2.0 / amp;
    std::vector<cplx> vals(n_nodes), ders(n_nodes);
    for (std::size_t n = 0; n < n_nodes; ++n) {
        vals[n] = scale * xi[n];
        ders[n] = scale * dxi[n];
    }
    double r2 = 0.0;
    for (std::size_t n : window) {
        const double x = x1 + static_cast<double>(n) * h;
        const double e = vals[n].real() - 2.0 * std::sin(k * x + delta);
        r2 += e * e;
    }
    const double fit_residual = std::sqrt(r2 / static_cast<double>(window.size())) / 2.0;
    if (fit_residual > 1e-4)
        throw std::runtime_error("solve_wall_state: asymptotic fit residual above 1e-4");

    return {params,
            WaveFunction::sampled(x1, h, std::move(vals), std::move(ders), E),
            delta,
            fit_residual,
            x0};
}

PhaseFunction wigner_of_wall_state(const RegularizedEigenstate& state, const PhaseGrid& grid,
                                   const WignerOptions& opt) {
    return wigner_quadrature(state.xi, grid, opt).retagged("wigner-wall");
}

ResidualReport wall_real_part_residual(const RegularizedEigenstate& state, const PhaseGrid& grid,
                                       const ResidualOptions& opt, const WignerOptions& wopt) {
    const WallParameters& w = state.params;
    PhaseFunction f = wigner_of_wall_state(state, grid, wopt);
    PhaseFunction T = wigner_quadrature(state.xi, grid, wopt, [&](double x, double y) {
        return 0.5 * (w.potential(x + y) + w.potential(x - y));
    });
    StencilOptions st = opt.stencil;
    st.split_at_wall = false;  // f_alpha is smooth across x = 0
    PhaseFunction d2 = partial_derivative_x(f, 2, st);
    std::vector<cplx> r(grid.size());
    for (std::size_t i = 0; i < grid.n_x(); ++i)
        for (std::size_t j = 0; j < grid.n_p(); ++j) {
            const std::size_t k = grid.index(i, j);
            const double p = grid.p(j);
            r[k] = (p * p - w.E) * f.values()[k] - 0.25 * d2.values()[k] + T.values()[k];
        }
    return make_report("(p^2 - d2/4) f + Re(V star f) - E f", PhaseFunction(grid, std::move(r)),
                       interior_x(grid, opt.edge_margin),
                       pick(opt.tolerance, tolerance::scaled(tolerance::kWallRealPart, grid)));
}

WallLimitStudy wall_limit_study(double E, const std::vector<double>& alphas,
                                const PhaseGrid& grid, std::size_t n_nodes,
                                bool check_convergence) {
    if (alphas.size() < 3)
        throw std::invalid_argument("wall_limit_study: need at least three alpha values");
    for (std::size_t n = 1; n < alphas.size(); ++n)
        if (!(alphas[n] > alphas[n - 1]))
            throw std::invalid_argument("wall_limit_study: alphas must be strictly increasing");

    WallLimitStudy out;
    out.E = E;
    const PhaseFunction f = wigner_transform(WaveFunction::confined_eigenstate(E), grid);
    for (double a : alphas) {
        auto state = solve_wall_state(WallParameters::make(a, E), n_nodes);
        PhaseFunction fa = wigner_of_wall_state(state, grid);
        WallLimitRow row{a, sup_distance(fa, f), state.phase_shift, std::nan(""), std::nan("")};
        if (check_convergence) {
            auto fine = solve_wall_state(WallParameters::make(a, E), 2 * n_nodes - 1);
            double d2 = sup_distance(wigner_of_wall_state(fine, grid), f);
            row.distance_change = std::abs(d2 - row.sup_distance) / row.sup_distance;
            row.phase_change = std::abs(fine.phase_shift - state.phase_shift);
            if (!(row.distance_change < 0.01)) out.self_convergent = false;
        }
        out.rows.push_back(row);
        out.f_alpha.push_back(fa.retagged("wigner-wall-alpha-" + std::to_string(a)));
    }
    for (std::size_t n = 1; n < out.rows.size() && out.monotone; ++n) {
        const auto &lo = out.rows[n - 1], &hi = out.rows[n];
        std::ostringstream why;
        if (!(hi.sup_distance < lo.sup_distance))
            why << "sup_distance " << hi.sup_distance << " at alpha = " << hi.alpha
                << " is not below " << lo.sup_distance << " at alpha = " << lo.alpha;
        else if (!(std::abs(hi.phase_shift) < std::abs(lo.phase_shift)))
            why << "|phase_shift| " << std::abs(hi.phase_shift) << " at alpha = " << hi.alpha
                << " is not below " << std::abs(lo.phase_shift) << " at alpha = " << lo.alpha;
        if (!why.str().empty()) {
            out.monotone = false;
            out.offending = why.str();
        }
    }
    return out;
}

}  // namespace dqwall
