#include <catch_amalgamated.hpp>

#include <cmath>

#include "dqwall/kw.hpp"
#include "dqwall/tolerance.hpp"
#include "oracles.hpp"

using namespace dqwall;

namespace {

/// (1/16) r^4 + (1/2)(p^2 + E) r^2 + (p^2 - E)^2.
cplx characteristic(cplx r, double E, double p) {
    return r * r * r * r / 16.0 + 0.5 * (p * p + E) * r * r + (p * p - E) * (p * p - E);
}

/// sin[2x(p+k)]/(p+k) - sin[2x(p-k)]/(p-k) with N = 1/p, evaluated away from the poles.
double sine_form(double E, double x, double p) {
    const double k = std::sqrt(E);
    return (std::sin(2 * x * (p + k)) / (p + k) - std::sin(2 * x * (p - k)) / (p - k)) / p;
}

}  // namespace

TEST_CASE("characteristic roots", "[kw]") {
    for (double E : {0.5, 1.0, 3.0})
        for (double p : {-2.2, 0.0, 0.7}) {
            auto r = KWSolutionBasis::roots(E, p);
            for (const auto& root : r) CHECK(std::abs(characteristic(root, E, p)) < 1e-10);
            const double k = std::sqrt(E);
            CHECK(std::abs(r[0] - cplx(0.0, 2 * (p + k))) < 1e-14);
            CHECK(std::abs(r[1] - std::conj(r[0])) < 1e-14);
            CHECK(std::abs(r[2] - cplx(0.0, 2 * (p - k))) < 1e-14);
            CHECK(std::abs(r[3] - std::conj(r[2])) < 1e-14);
        }
}

TEST_CASE("sine coefficients assemble the filtered solution", "[kw]") {
    PhaseGrid g(-3.0, 3.0, 61, -2.1, 2.3, 23);
    for (double E : {1.0, 2.0}) {
        for (auto N : {MomentumProfile::physical(), MomentumProfile::exponential(0.4)}) {
            auto basis = sine_coefficients(E, N, g);
            auto a = assemble_solution(basis, g);
            auto b = apply_boundary_filter(E, N, g);
            CHECK((a - b).max_abs() < 1e-12 * b.max_abs());
            CHECK(a.max_abs_imag() < 1e-12);
        }
    }
    PhaseGrid on_root(-3.0, 3.0, 61, -2.0, 2.0, 17);
    CHECK_THROWS_AS(sine_coefficients(1.0, MomentumProfile::physical(), on_root), std::domain_error);
}

TEST_CASE("filtered values and their limits", "[kw]") {
    const double E = 1.0, k = 1.0;
    auto N = MomentumProfile::physical();
    for (double x : {-2.3, -0.4, 1.1})
        for (double p : {-1.7, 0.3, 2.6})
            CHECK(filtered_value(E, N, x, p) == Catch::Approx(sine_form(E, x, p)).epsilon(1e-12));
    // sinc limit at p = k, and the cancelling pole at p = 0
    const double x = -0.9;
    CHECK(filtered_value(E, N, x, k) ==
          Catch::Approx(sine_form(E, x, k + 1e-7)).epsilon(1e-5));
    CHECK(filtered_value(E, N, x, 0.0) ==
          Catch::Approx(0.5 * (sine_form(E, x, 1e-3) + sine_form(E, x, -1e-3))).epsilon(1e-5));
    CHECK(std::isfinite(filtered_value(E, MomentumProfile::exponential(0.3), x, 0.0)));
    CHECK(MomentumProfile::exponential(0.5)(2.0) == Catch::Approx(std::exp(1.0) / 2.0));
    CHECK_FALSE(MomentumProfile::samples([](double) { return 1.0; }).has_pole_at_zero());
}

TEST_CASE("fourth-order residual", "[kw]") {
    auto g = PhaseGrid::desk_default();
    auto rho = apply_boundary_filter(1.0, MomentumProfile::physical(), g);
    CHECK(kw_residual(rho, 1.0).pass);

    // each exponential basis element solves the equation on its own
    for (int r = 0; r < 4; ++r) {
        auto e = PhaseFunction::sample(g, [r](double x, double p) {
            return std::exp(KWSolutionBasis::roots(1.0, p)[r] * x);
        });
        CHECK(kw_residual(e, 1.0).pass);
    }
    auto bad = PhaseFunction::sample(g, [](double x, double p) { return std::exp(cplx(0.0, 2 * p * x)); });
    auto ctrl = kw_residual(bad, 1.0);
    CHECK(ctrl.max_abs > 10 * ctrl.tolerance);
}

TEST_CASE("smooth extension conditions and the triple product", "[kw]") {
    auto g = PhaseGrid::desk_default();
    auto rho = apply_boundary_filter(1.0, MomentumProfile::physical(), g);
    CHECK(smooth_boundary_check(rho).pass);
    CHECK(triple_star_residual(rho, 1.0).pass);
    auto shifted = PhaseFunction::sample(g, [](double x, double p) {
        return cplx(filtered_value(1.0, MomentumProfile::physical(), x - 0.3, p));
    });
    CHECK_FALSE(smooth_boundary_check(shifted).pass);
    auto wrong = triple_star_residual(rho, 1.5);
    CHECK(wrong.max_abs > 10 * wrong.tolerance);
}

TEST_CASE("confinement", "[kw]") {
    PhaseGrid g(-2.0, 2.0, 41, -1.0, 1.0, 17);
    auto one = PhaseFunction::sample(g, [](double, double) { return cplx(1.0); });
    auto c = confine(one);
    for (std::size_t i = 0; i < g.n_x(); ++i)
        CHECK(c(i, 3) == (i <= g.wall_index() ? cplx(1.0) : cplx(0.0)));
}

TEST_CASE("pure-state condition", "[purestate]") {
    auto g = PhaseGrid::desk_default();
    PureStateOptions po;
    po.damping = 1.5;
    auto sel = select_physical(1.0, g);
    auto phys = purestate_residual(sel.f, po);
    CHECK(phys.report.pass);
    CHECK(phys.coverage >= po.min_coverage);

    PureStateOptions plain;
    plain.y_max = 6.0;
    // centred so that both x-window edges see a negligible tail
    auto gauss = PhaseFunction::sample(g, [](double x, double p) {
        return cplx(oracle::gaussian_wigner(-3.0, x, p));
    });
    CHECK(purestate_residual(gauss, plain).report.pass);

    auto f1 = wigner_transform(WaveFunction::confined_eigenstate(1.0), g);
    auto f2 = wigner_transform(WaveFunction::confined_eigenstate(4.0), g);
    auto mix = purestate_residual(0.5 * (f1 + f2), po).report;
    CHECK(mix.max_abs > 10 * mix.tolerance);

    PhaseFunction zero(g);
    CHECK_THROWS(purestate_residual(zero, po));
}

TEST_CASE("momentum profile consistency", "[purestate]") {
    auto g = PhaseGrid::desk_default();
    auto away = momenta_away_from_zero(g);
    for (double p : away) CHECK(std::abs(p) >= 0.5);

    auto phys = profile_consistency(MomentumProfile::physical(), away);
    CHECK(phys.report.pass);
    CHECK(std::abs(phys.fitted_a) < 1e-9);

    auto expo = profile_consistency(MomentumProfile::exponential(0.7), away);
    CHECK(expo.report.pass);
    CHECK(expo.fitted_a == Catch::Approx(0.7).epsilon(1e-9));

    std::vector<double> positive;
    for (double p : away)
        if (p > 0.0) positive.push_back(p);
    auto flat = profile_consistency(MomentumProfile::samples([](double) { return 1.0; }), positive);
    CHECK_FALSE(flat.report.pass);
    REQUIRE_FALSE(flat.p.empty());
    for (std::size_t k = 0; k < flat.p.size(); ++k)
        CHECK(std::abs(flat.second_derivative[k] * flat.p[k] * flat.p[k] + 1.0) < 1e-3);

    auto neg = profile_consistency(MomentumProfile::samples([](double) { return 1.0; }), away);
    CHECK(neg.structural_failure);
    CHECK_FALSE(neg.report.pass);

    CHECK_THROWS(profile_consistency(MomentumProfile::physical(), {1.0, 2.0, 3.0}));
}

TEST_CASE("wall marginal selects the physical profile", "[purestate]") {
    auto g = PhaseGrid::desk_default();
    auto sel = select_physical(1.0, g);
    CHECK(std::abs(sel.a) < 1e-3);
    const double s0 = marginal_boundary_score(1.0, 0.0, g);
    CHECK(s0 < marginal_boundary_score(1.0, 0.1, g));
    CHECK(s0 < marginal_boundary_score(1.0, -0.1, g));
    CHECK(sel.scan.size() >= 3);
}

TEST_CASE("Wigner function is a constant times the confined KW solution", "[equivalence]") {
    auto g = PhaseGrid::desk_default();
    for (double E : {1.0, 2.0, 4.0}) {
        auto f = wigner_transform(WaveFunction::confined_eigenstate(E), g);
        auto rho = confine(apply_boundary_filter(E, MomentumProfile::physical(), g));
        auto fit = cross_formulation_fit(f, rho);
        CHECK(fit.residual < 1e-6);
        CHECK(fit.constant == Catch::Approx(std::sqrt(E) / M_PI).epsilon(1e-9));
    }
}
