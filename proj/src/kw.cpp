#include "dqwall/kw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqwall/tolerance.hpp"

namespace dqwall {

namespace {

const cplx I(0.0, 1.0);

double pick(double override_tol, double fallback) {
    return std::isnan(override_tol) ? fallback : override_tol;
}

// sin(2 x q) / q with the q -> 0 limit 2x.
double sine_ratio(double x, double q) {
    double z = 2.0 * x * q;
    if (std::abs(z) < 1e-8) return 2.0 * x * (1.0 - z * z / 6.0);
    return std::sin(z) / q;
}

}  // namespace

std::array<cplx, 4> KWSolutionBasis::roots(double E, double p) {
    const double k = std::sqrt(E);
    cplx r1 = 2.0 * I * (p + k), r3 = 2.0 * I * (p - k);
    return {r1, std::conj(r1), r3, std::conj(r3)};
}

double MomentumProfile::operator()(double p) const {
    switch (family) {
        case Family::physical: return 1.0 / p;
        case Family::exponential: return std::exp(a * p) / p;
        case Family::custom:
            if (!custom) throw std::invalid_argument("MomentumProfile: empty custom profile");
            return custom(p);
    }
    return 0.0;
}

ResidualReport kw_residual(const PhaseFunction& rho, double E, const ResidualOptions& opt) {
    const PhaseGrid& g = rho.grid();
    StencilOptions st = opt.stencil;
    st.split_at_wall = false;  // rho is the smooth whole-line solution
    PhaseFunction d2 = partial_derivative_x(rho, 2, st);
    PhaseFunction d4 = partial_derivative_x(rho, 4, st);
    std::vector<cplx> r(g.size());
    for (std::size_t i = 0; i < g.n_x(); ++i)
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            const double p = g.p(j), s = p * p - E;
            const std::size_t k = g.index(i, j);
            r[k] = d4.values()[k] / 16.0 + 0.5 * (p * p + E) * d2.values()[k] +
                   s * s * rho.values()[k];
        }
    return make_report("fourth-order equation", PhaseFunction(g, std::move(r)),
                       interior_x(g, opt.edge_margin),
                       pick(opt.tolerance, tolerance::scaled(tolerance::kFourthOrder, g)));
}

ResidualReport triple_star_residual(const PhaseFunction& rho, double E,
                                    const ResidualOptions& opt) {
    const PhaseGrid& g = rho.grid();
    StencilOptions st = opt.stencil;
    st.split_at_wall = false;
    return make_report("(p^2 - E) star rho star (p^2 - E)", triple_star_p2(rho, E, st),
                       interior_x(g, opt.edge_margin),
                       pick(opt.tolerance, tolerance::scaled(tolerance::kTripleStar, g)));
}

PhaseFunction assemble_solution(const KWSolutionBasis& basis, const PhaseGrid& grid) {
    if (basis.A.size() != grid.n_p() || basis.B.size() != grid.n_p())
        throw std::invalid_argument("assemble_solution: coefficient count != n_p");
    for (std::size_t j = 0; j < grid.n_p(); ++j)
        if (!std::isfinite(std::abs(basis.A[j])) || !std::isfinite(std::abs(basis.B[j])))
            throw std::invalid_argument("assemble_solution: non-finite coefficient");
    const double k = std::sqrt(basis.E);
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const double x = grid.x(i);
        for (std::size_t j = 0; j < grid.n_p(); ++j) {
            const double p = grid.p(j);
            cplx ea = basis.A[j] * std::exp(cplx(0.0, 2.0 * (p + k) * x));
            cplx eb = basis.B[j] * std::exp(cplx(0.0, 2.0 * (p - k) * x));
            // z + z* is real by construction
            v[grid.index(i, j)] = cplx(2.0 * ea.real() + 2.0 * eb.real(), 0.0);
        }
    }
    return PhaseFunction(grid, std::move(v), "kw-assembled");
}

KWSolutionBasis sine_coefficients(double E, const MomentumProfile& N, const PhaseGrid& grid) {
    const double k = std::sqrt(E);
    KWSolutionBasis b{E, std::vector<cplx>(grid.n_p()), std::vector<cplx>(grid.n_p())};
    for (std::size_t j = 0; j < grid.n_p(); ++j) {
        const double p = grid.p(j);
        if (p + k == 0.0 || p - k == 0.0)
            throw std::domain_error("sine_coefficients: momentum node at p = -+sqrt(E)");
        const double n = N(p);
        b.A[j] = n / (2.0 * I * (p + k));
        b.B[j] = -n / (2.0 * I * (p - k));
    }
    return b;
}

double filtered_value(double E, const MomentumProfile& N, double x, double p) {
    const double k = std::sqrt(E);
    if (N.has_pole_at_zero() && std::abs(p) < 1e-6) {
        const double h = 1e-4;
        return 0.5 * (filtered_value(E, N, x, h) + filtered_value(E, N, x, -h));
    }
    return N(p) * (sine_ratio(x, p + k) - sine_ratio(x, p - k));
}

PhaseFunction apply_boundary_filter(double E, const MomentumProfile& N, const PhaseGrid& grid) {
    if (!(E > 0.0)) throw std::invalid_argument("apply_boundary_filter: E must be positive");
    return PhaseFunction::sample(
        grid, [&](double x, double p) { return cplx(filtered_value(E, N, x, p), 0.0); },
        "kw-filtered");
}

PhaseFunction confine(const PhaseFunction& g) {
    const PhaseGrid& gr = g.grid();
    std::vector<cplx> v = g.values();
    for (std::size_t i = gr.wall_index() + 1; i < gr.n_x(); ++i)
        std::fill(v.begin() + static_cast<std::ptrdiff_t>(gr.index(i, 0)),
                  v.begin() + static_cast<std::ptrdiff_t>(gr.index(i, 0) + gr.n_p()),
                  cplx(0.0, 0.0));
    return PhaseFunction(gr, std::move(v), g.tag());
}

ResidualReport smooth_boundary_check(const PhaseFunction& rho, const ResidualOptions& opt) {
    const PhaseGrid& g = rho.grid();
    const std::size_t i0 = g.wall_index();
    StencilOptions st = opt.stencil;
    st.split_at_wall = false;
    auto d1 = partial_derivative_x_at(rho, 1, i0, st);
    auto d2 = partial_derivative_x_at(rho, 2, i0, st);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n_p(); ++j)
        worst = std::max({worst, std::abs(rho(i0, j)), std::abs(d1[j]), std::abs(d2[j])});
    return scalar_report("rho, d rho, d2 rho at x = 0", worst,
                         pick(opt.tolerance, tolerance::scaled(tolerance::kBoundary, g)), g);
}

PureStateReport purestate_residual(const PhaseFunction& f, const PureStateOptions& opt) {
    const PhaseGrid& g = f.grid();
    PhaseFunction h = f;
    if (opt.damping != 0.0)
        h = PhaseFunction::sample(
            g,
            [&](double x, double p) {
                (void)p;
                return cplx(std::exp(2.0 * opt.damping * x), 0.0);
            },
            "damping");
    if (opt.damping != 0.0) {
        std::vector<cplx> v(g.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = h.values()[k] * f.values()[k];
        h = PhaseFunction(g, std::move(v), f.tag());
    }
    SpectralSlice s = fourier_x(h, YAxis{opt.y_max, opt.n_y});
    const std::size_t ny = s.y_nodes.size(), np = s.p_nodes.size();
    const double dy = s.y_nodes[1] - s.y_nodes[0], dp = g.dp();
    double peak = 0.0;
    for (const auto& z : s.values) peak = std::max(peak, std::abs(z));
    const double cut = opt.floor * peak;
    auto ok = [&](std::size_t iy, std::size_t j) { return std::abs(s(iy, j)) > cut; };

    const double tol = pick(opt.tolerance, tolerance::kPureState * (dy * dy + dp * dp));
    PureStateReport out{scalar_report("pure-state equation on ln Sigma", 0.0, tol, g)};
    std::size_t used = 0;
    double worst = 0.0, sum2 = 0.0, wy = 0.0, wp = 0.0;
    for (std::size_t iy = 1; iy + 1 < ny; ++iy)
        for (std::size_t j = 1; j + 1 < np; ++j) {
            if (!(ok(iy, j) && ok(iy - 1, j) && ok(iy + 1, j) && ok(iy, j - 1) && ok(iy, j + 1)))
                continue;
            const cplx c = s(iy, j);
            // ratios keep each logarithm on its principal branch near the centre
            cplx lyy = (std::log(s(iy + 1, j) / c) + std::log(s(iy - 1, j) / c)) / (dy * dy);
            cplx lpp = (std::log(s(iy, j + 1) / c) + std::log(s(iy, j - 1) / c)) / (dp * dp);
            double r = std::abs(lyy - 0.25 * lpp);
            ++used;
            sum2 += r * r;
            if (r > worst) {
                worst = r;
                wy = s.y_nodes[iy];
                wp = s.p_nodes[j];
            }
        }
    if (used == 0) throw std::runtime_error("purestate_residual: evaluation set is empty");
    out.coverage = static_cast<double>(used) / static_cast<double>(ny * np);
    out.report.max_abs = worst;
    out.report.l2 = std::sqrt(sum2 * dy * dp);
    out.report.worst_x = wy;  // y of the worst node
    out.report.worst_p = wp;
    out.report.pass = worst <= tol && out.coverage >= opt.min_coverage;
    return out;
}

ProfileReport profile_consistency(const MomentumProfile& N, const std::vector<double>& p_nodes,
                                  double tolerance) {
    if (p_nodes.size() < 12) throw std::invalid_argument("profile_consistency: too few momenta");
    ProfileReport out{scalar_report("d2/dp2 ln[p N(p)]", 0.0, tolerance,
                                    PhaseGrid(-1.0, 1.0, 16, p_nodes.front(), p_nodes.back(), 16)),
                      0.0, false, {}, {}};
    std::vector<double> L(p_nodes.size());
    for (std::size_t j = 0; j < p_nodes.size(); ++j) {
        double v = p_nodes[j] * N(p_nodes[j]);
        if (!(v > 0.0) || !std::isfinite(v)) {
            out.structural_failure = true;
            out.report.label = "d2/dp2 ln[p N(p)]: p N(p) not positive (structural failure)";
            out.report.max_abs = std::numeric_limits<double>::max();
            out.report.pass = false;
            return out;
        }
        L[j] = std::log(v);
    }
    // least-squares slope of L(p)
    double mp = 0.0, ml = 0.0;
    for (std::size_t j = 0; j < L.size(); ++j) {
        mp += p_nodes[j];
        ml += L[j];
    }
    mp /= static_cast<double>(L.size());
    ml /= static_cast<double>(L.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t j = 0; j < L.size(); ++j) {
        sxy += (p_nodes[j] - mp) * (L[j] - ml);
        sxx += (p_nodes[j] - mp) * (p_nodes[j] - mp);
    }
    out.fitted_a = sxy / sxx;

    // contiguous runs of the (uniform) lattice
    const double step = p_nodes[1] - p_nodes[0];
    std::size_t begin = 0;
    double worst = 0.0;
    for (std::size_t j = 1; j <= p_nodes.size(); ++j) {
        bool end = j == p_nodes.size() || (p_nodes[j] - p_nodes[j - 1]) > 1.5 * step;
        if (!end) continue;
        std::vector<double> seg(L.begin() + static_cast<std::ptrdiff_t>(begin),
                                L.begin() + static_cast<std::ptrdiff_t>(j));
        if (seg.size() >= 12) {
            auto d2 = derivative_1d(seg, step, 2, 8);
            for (std::size_t k = 0; k < d2.size(); ++k) {
                out.p.push_back(p_nodes[begin + k]);
                out.second_derivative.push_back(d2[k]);
                worst = std::max(worst, std::abs(d2[k]));
            }
        }
        begin = j;
    }
    out.report.max_abs = worst;
    out.report.l2 = worst;
    out.report.pass = worst <= tolerance;
    return out;
}

std::vector<double> momenta_away_from_zero(const PhaseGrid& g, double p_exclude) {
    std::vector<double> p;
    for (std::size_t j = 0; j < g.n_p(); ++j)
        if (std::abs(g.p(j)) >= p_exclude) p.push_back(g.p(j));
    return p;
}

double marginal_boundary_score(double E, double a, const PhaseGrid& grid) {
    PhaseFunction f = confine(apply_boundary_filter(E, MomentumProfile::exponential(a), grid));
    Marginal m = integrate_p(f);
    double peak = 0.0;
    for (double v : m.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    return std::abs(m.values[grid.wall_index() - 1]) / peak;
}

PhysicalSelection select_physical(double E, const PhaseGrid& grid) {
    PhysicalSelection out{confine(apply_boundary_filter(E, MomentumProfile::physical(), grid))
                              .retagged("kw-physical"),
                          0.0,
                          {}};
    const double coarse[3] = {-0.5, 0.0, 0.5};
    double score[3];
    for (int c = 0; c < 3; ++c) {
        score[c] = marginal_boundary_score(E, coarse[c], grid);
        out.scan.push_back({coarse[c], score[c]});
    }
    int best = static_cast<int>(std::min_element(score, score + 3) - score);
    for (int c = 0; c < 3; ++c)
        if (c != best && std::abs(score[c] - score[best]) <= 1e-12 * std::max(score[best], 1e-300))
            throw ScanTie("select_physical: a-scan tie between a = " +
                          std::to_string(coarse[best]) + " and a = " + std::to_string(coarse[c]));

    double lo = std::max(-0.5, coarse[best] - 0.5), hi = std::min(0.5, coarse[best] + 0.5);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = marginal_boundary_score(E, c1, grid), f2 = marginal_boundary_score(E, c2, grid);
    while (hi - lo > 1e-3) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = marginal_boundary_score(E, c1, grid);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = marginal_boundary_score(E, c2, grid);
        }
    }
    out.a = 0.5 * (lo + hi);
    return out;
}

CrossFit cross_formulation_fit(const PhaseFunction& f, const PhaseFunction& confined_rho) {
    if (!(f.grid() == confined_rho.grid()))
        throw std::invalid_argument("cross_formulation_fit: grids differ");
    const auto& a = f.values();
    const auto& b = confined_rho.values();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += (std::conj(b[k]) * a[k]).real();
        den += std::norm(b[k]);
    }
    if (den == 0.0) throw std::invalid_argument("cross_formulation_fit: zero solution");
    CrossFit out{num / den, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k)
        out.residual = std::max(out.residual, std::abs(a[k] - out.constant * b[k]));
    return out;
}

}  // namespace dqwall
