#include "dqwall/star.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqwall {

namespace {

const cplx I(0.0, 1.0);

// Combination weights of the shifted evaluations D(eps), D(2 eps), D(3 eps).
std::vector<double> extrapolation_weights(Extrapolation e) {
    switch (e) {
        case Extrapolation::fixed: return {1.0};
        case Extrapolation::richardson2: return {2.0, -1.0};
        case Extrapolation::richardson3: return {3.0, -3.0, 1.0};
    }
    return {1.0};
}

}  // namespace

BoppOperator BoppOperator::p2_minus(double E, Side side) { return {side, -E, 0.0, 1.0}; }

PhaseFunction BoppOperator::apply(const PhaseFunction& f, const StencilOptions& opt) const {
    const PhaseGrid& g = f.grid();
    const double sg = side == Side::left ? -1.0 : 1.0;
    PhaseFunction d1 = partial_derivative_x(f, 1, opt);
    PhaseFunction d2 = partial_derivative_x(f, 2, opt);
    std::vector<cplx> out(g.size());
    for (std::size_t i = 0; i < g.n_x(); ++i)
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            const double p = g.p(j);
            const std::size_t k = g.index(i, j);
            const cplx v = f.values()[k], dv = d1.values()[k], ddv = d2.values()[k];
            out[k] = c0 * v + c1 * (p * v + sg * 0.5 * I * dv) +
                     c2 * (p * p * v + sg * I * p * dv - 0.25 * ddv);
        }
    return PhaseFunction(g, std::move(out), f.tag());
}

LineSpectrum BoppOperator::apply(const LineSpectrum& f, const StencilOptions& opt) const {
    const PhaseGrid& g = f.grid;
    const double sg = side == Side::left ? -1.0 : 1.0;
    std::optional<std::size_t> split;
    if (opt.split_at_wall) split = g.wall_index();
    Stencil1D s1(g.n_x(), g.dx(), 1, opt.accuracy, split);
    Stencil1D s2(g.n_x(), g.dx(), 2, opt.accuracy, split);
    LineSpectrum out{g, f.momenta, {}};
    for (std::size_t l = 0; l < f.momenta.size(); ++l) {
        const double p = f.momenta[l];
        const auto& c = f.coeffs[l];
        std::vector<cplx> r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            cplx dv = s1.apply_at(c.data(), 1, i), ddv = s2.apply_at(c.data(), 1, i);
            r[i] = c0 * c[i] + c1 * (p * c[i] + sg * 0.5 * I * dv) +
                   c2 * (p * p * c[i] + sg * I * p * dv - 0.25 * ddv);
        }
        out.coeffs.push_back(std::move(r));
    }
    return out;
}

EpsilonRule EpsilonRule::lattice(const PhaseGrid& g, Extrapolation e, std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("EpsilonRule: need at least one lattice step");
    return {g.dx() * static_cast<double>(steps), e};
}

std::size_t EpsilonRule::steps(const PhaseGrid& g) const {
    const double r = epsilon / g.dx();
    if (!(r >= 1.0 - 1e-9))
        throw std::invalid_argument("EpsilonRule: epsilon must be at least dx");
    const double m = std::round(r);
    if (std::abs(r - m) > 1e-9 * std::max(1.0, m))
        throw std::invalid_argument("EpsilonRule: epsilon must be a whole number of x steps");
    return static_cast<std::size_t>(m);
}

std::size_t EpsilonRule::levels() const { return extrapolation_weights(extrapolation).size(); }

PhaseFunction star_p2_left(const PhaseFunction& f, double E_shift, const StencilOptions& opt) {
    return BoppOperator::p2_minus(E_shift, Side::left).apply(f, opt);
}

PhaseFunction star_p2_right(const PhaseFunction& f, double E_shift, const StencilOptions& opt) {
    return BoppOperator::p2_minus(E_shift, Side::right).apply(f, opt);
}

LineSpectrum star_p2_left(const LineSpectrum& f, double E_shift, const StencilOptions& opt) {
    return BoppOperator::p2_minus(E_shift, Side::left).apply(f, opt);
}

LineSpectrum star_p2_right(const LineSpectrum& f, double E_shift, const StencilOptions& opt) {
    return BoppOperator::p2_minus(E_shift, Side::right).apply(f, opt);
}

namespace {

// Kernel with the slice shifted by `shift` nodes; sigma = +1 left, -1 right.
std::vector<cplx> deltaprime_shifted(const PhaseFunction& f, std::size_t shift, double sigma,
                                     const DeltaPrimeOptions& opt) {
    const PhaseGrid& g = f.grid();
    const std::size_t np = g.n_p();
    const auto q = g.p_nodes();
    const auto w = simpson_weights(np);
    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    std::vector<cplx> ph(np);
    for (std::size_t i = shift; i < g.n_x(); ++i) {
        const double x = g.x(i), xs = g.x(i - shift);
        const cplx* row = f.values().data() + (i - shift) * np;
        cplx A(0.0, 0.0), B(0.0, 0.0);
        for (std::size_t j = 0; j < np; ++j) {
            cplx t = w[j] * std::exp(cplx(0.0, -2.0 * sigma * q[j] * x)) * row[j];
            A += t;
            B += q[j] * t;
        }
        A *= g.dp();
        B *= g.dp();
        if (opt.tail_correction) {
            TailFit fit = fit_tails(row, q, 2.0 * xs, opt.tails);
            A += tail_integral(fit, 0, -2.0 * sigma * x);
            B += tail_integral(fit, 1, -2.0 * sigma * x);
        }
        cplx* o = &out[i * np];
        for (std::size_t j = 0; j < np; ++j)
            o[j] = (2.0 * I / M_PI) * std::exp(cplx(0.0, 2.0 * sigma * q[j] * x)) * sigma *
                   (q[j] * A - B);
    }
    return out;
}

PhaseFunction deltaprime(const PhaseFunction& f, const EpsilonRule& rule, double sigma,
                         const DeltaPrimeOptions& opt) {
    const PhaseGrid& g = f.grid();
    const std::size_t m = rule.steps(g);
    const auto cw = extrapolation_weights(rule.extrapolation);
    const std::size_t first = m * cw.size();
    if (first >= g.n_x()) throw std::invalid_argument("delta' kernel: epsilon exceeds the window");
    std::vector<cplx> acc(g.size(), cplx(0.0, 0.0));
    for (std::size_t l = 0; l < cw.size(); ++l) {
        auto d = deltaprime_shifted(f, m * (l + 1), sigma, opt);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += cw[l] * d[k];
    }
    // Rows lacking the deepest slice are not defined.
    std::fill(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(first * g.n_p()),
              cplx(0.0, 0.0));
    return PhaseFunction(g, std::move(acc), f.tag());
}

}  // namespace

PhaseFunction star_deltaprime_left(const PhaseFunction& f, const EpsilonRule& rule,
                                   const DeltaPrimeOptions& opt) {
    return deltaprime(f, rule, 1.0, opt);
}

PhaseFunction star_deltaprime_right(const PhaseFunction& f, const EpsilonRule& rule,
                                    const DeltaPrimeOptions& opt) {
    return deltaprime(f, rule, -1.0, opt);
}

std::size_t deltaprime_first_valid(const EpsilonRule& rule, const PhaseGrid& g) {
    return rule.steps(g) * rule.levels();
}

NodeRange deltaprime_wall_layer(const EpsilonRule& rule, const PhaseGrid& g) {
    const std::size_t i0 = g.wall_index();
    return {i0 + 1, std::min(g.n_x(), i0 + rule.steps(g) * rule.levels())};
}

double p_edge_tail(const PhaseFunction& f) {
    const PhaseGrid& g = f.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < g.n_x(); ++i)
        m = std::max({m, std::abs(f(i, 0)), std::abs(f(i, g.n_p() - 1))});
    return m;
}

SandwichResult star_deltaprime_sandwich(const PhaseFunction& f, cplx psi_prime_0,
                                        const EpsilonRule& rule, const SandwichOptions& opt) {
    const PhaseGrid& g = f.grid();
    const std::size_t np = g.n_p(), i0 = g.wall_index();
    const double c = std::norm(psi_prime_0) / (2.0 * M_PI);

    SandwichResult res{DistributionalValue{PhaseFunction(g, "sandwich"),
                                           std::vector<cplx>(np, cplx(c, 0.0))},
                       {}, {}, 0.0, 0.0, 0.0};

    const std::size_t m = rule.steps(g);
    const auto cw = extrapolation_weights(rule.extrapolation);
    if (m * cw.size() > i0) throw std::invalid_argument("sandwich: epsilon exceeds the window");

    // Momentum moments of every slice, tails included.
    const auto q = g.p_nodes();
    const auto w = simpson_weights(np);
    std::vector<cplx> m0(g.n_x()), m1(g.n_x()), m2(g.n_x());
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        const cplx* row = f.values().data() + i * np;
        cplx s0(0.0, 0.0), s1(0.0, 0.0), s2(0.0, 0.0);
        for (std::size_t j = 0; j < np; ++j) {
            cplx t = w[j] * row[j];
            s0 += t;
            s1 += q[j] * t;
            s2 += q[j] * q[j] * t;
        }
        s0 *= g.dp();
        s1 *= g.dp();
        s2 *= g.dp();
        if (opt.kernel.tail_correction) {
            TailFit fit = fit_tails(row, q, 2.0 * g.x(i), opt.kernel.tails);
            s0 += tail_integral(fit, 0, 0.0);
            s1 += tail_integral(fit, 1, 0.0);
            s2 += tail_integral(fit, 2, 0.0);
        }
        m0[i] = s0;
        m1[i] = s1;
        m2[i] = s2;
    }
    Stencil1D d1(g.n_x(), g.dx(), 1, opt.stencil.accuracy, i0);
    Stencil1D d2(g.n_x(), g.dx(), 2, opt.stencil.accuracy, i0);

    // Density-matrix derivatives at (a, b) = (-eps, -eps), extrapolated in eps.
    cplx K(0.0, 0.0), Ka(0.0, 0.0), Kb(0.0, 0.0), Kab(0.0, 0.0);
    for (std::size_t l = 0; l < cw.size(); ++l) {
        const std::size_t i = i0 - m * (l + 1);
        const cplx dm0 = d1.apply_at(m0.data(), 1, i), ddm0 = d2.apply_at(m0.data(), 1, i);
        K += cw[l] * m0[i];
        Ka += cw[l] * 0.5 * (dm0 + 2.0 * I * m1[i]);
        Kb += cw[l] * 0.5 * (dm0 - 2.0 * I * m1[i]);
        Kab += cw[l] * (0.25 * ddm0 + m2[i]);
    }
    res.wall_derivative_squared = Kab.real();

    // Bump t(x) = exp(1 - 1/(1 - (x/w)^2)): t(0) = 1, t'(0) = 0, t''(0) = -2/w^2.
    const double hw = opt.test_half_width;
    const double t0 = 1.0, t1 = 0.0, t2 = -2.0 / (hw * hw);
    res.weak_numeric.resize(np);
    res.weak_closed.assign(np, cplx(c * t0, 0.0));
    for (std::size_t j = 0; j < np; ++j) {
        const double p = q[j];
        const cplx Ta = 0.5 * t1 - I * p * t0, Tb = 0.5 * t1 + I * p * t0;
        const cplx Tab = 0.25 * t2 + p * p * t0;
        res.weak_numeric[j] = (K * Tab + Ka * Tb + Kb * Ta + Kab * t0) / (2.0 * M_PI);
        res.max_discrepancy =
            std::max(res.max_discrepancy, std::abs(res.weak_numeric[j] - res.weak_closed[j]));
    }
    res.relative_discrepancy = c > 0.0 ? res.max_discrepancy / c : res.max_discrepancy;
    return res;
}

PhaseFunction triple_star_p2(const PhaseFunction& f, double E, const StencilOptions& opt) {
    return star_p2_right(star_p2_left(f, E, opt), E, opt);
}

}  // namespace dqwall
