// Acceptance runner: one line per criterion, exit status 0 iff all selected pass.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dqwall/dp.hpp"
#include "dqwall/dynamics.hpp"
#include "dqwall/kw.hpp"
#include "dqwall/tolerance.hpp"
#include "dqwall/wall.hpp"
#include "oracles.hpp"

using namespace dqwall;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << (ok ? "" : "NOT ") << what;
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

const PhaseGrid& desk() {
    static const PhaseGrid g = PhaseGrid::desk_default();
    return g;
}

PhaseFunction confined_f(double E) { return wigner_transform(WaveFunction::confined_eigenstate(E), desk()); }

// Pinned criterion constants.
constexpr double kWignerAbs = 1e-7;
constexpr double kWignerImag = 1e-9;
constexpr double kNaiveConfinedMin = 0.1;
constexpr double kNaiveLineMax = 1e-4;
constexpr double kNaiveRatio = 1e3;
constexpr double kControlFactor = 10.0;
constexpr double kRelativeOnePercent = 0.01;
constexpr double kConstantInP = 1e-6;
constexpr double kScanTolerance = 1e-3;
constexpr double kCrossResidual = 1e-6;
constexpr double kSelfConvergence = 0.01;

Verdict c1() {
    Verdict v;
    const auto& g = desk();
    PhaseFunction f = confined_f(1.0);
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<std::size_t> ui(0, g.wall_index() - 1), uj(0, g.n_p() - 1);
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const std::size_t i = ui(rng), j = uj(rng);
        worst = std::max(worst, std::abs(f(i, j).real() - oracle::brute_force_wigner(1.0, g.x(i), g.p(j))));
    }
    v.require(worst < kWignerAbs, "brute-force max diff " + sci(worst) + " < " + sci(kWignerAbs));
    v.require(f.max_abs_imag() < kWignerImag, "max |Im f| " + sci(f.max_abs_imag()) + " < " + sci(kWignerImag));
    return v;
}

Verdict c2() {
    Verdict v;
    const double confined = naive_stargenvalue_residual(confined_f(1.0), 1.0).max_abs;
    const double line =
        naive_stargenvalue_residual(wigner_lines(WaveFunction::full_line_eigenstate(1.0), desk()), 1.0).max_abs;
    v.require(confined > kNaiveConfinedMin, "confined residual " + sci(confined) + " > 0.1");
    v.require(line < kNaiveLineMax, "full-line residual " + sci(line) + " < 1e-4");
    v.require(confined >= kNaiveRatio * line, "ratio >= 1e3");
    return v;
}

Verdict c3() {
    Verdict v;
    PhaseFunction f = confined_f(1.0);
    const auto rule = EpsilonRule::lattice(desk(), Extrapolation::richardson2);
    auto r = dp_stargenvalue_residual(f, 1.0, rule);
    v.require(r.pass, "left/right residual " + sci(r.max_abs) + " < " + sci(r.tolerance));
    auto wrong = dp_stargenvalue_residual(f, 1.5, rule);
    v.require(wrong.max_abs >= kControlFactor * r.tolerance,
              "wrong-energy control " + sci(wrong.max_abs / r.tolerance) + "x tolerance");
    return v;
}

Verdict c4() {
    Verdict v;
    auto b = boundary_conditions_check(confined_f(1.0));
    v.require(b.report.pass, "f, f', f'', marginal at 0- max " + sci(b.report.max_abs) + " < " +
                                 sci(b.report.tolerance));
    auto gauss = PhaseFunction::sample(desk(), [](double x, double p) {
        return cplx(oracle::gaussian_wigner(-1.0, x, p));
    });
    auto g = boundary_conditions_check(gauss);
    v.require(!g.report.pass, "Gaussian control fails (" + sci(g.report.max_abs) + ")");
    return v;
}

Verdict c5() {
    Verdict v;
    auto rho = apply_boundary_filter(1.0, MomentumProfile::physical(), desk());
    auto r = kw_residual(rho, 1.0);
    v.require(r.pass, "N = 1/p residual " + sci(r.max_abs) + " < " + sci(r.tolerance));
    for (int k = 0; k < 4; ++k) {
        auto e = PhaseFunction::sample(desk(), [k](double x, double p) {
            return std::exp(KWSolutionBasis::roots(1.0, p)[k] * x);
        });
        auto re = kw_residual(e, 1.0);
        v.require(re.pass, "basis " + std::to_string(k + 1) + " " + sci(re.max_abs));
    }
    auto bad = PhaseFunction::sample(desk(), [](double x, double p) { return std::exp(cplx(0.0, 2 * p * x)); });
    auto rb = kw_residual(bad, 1.0);
    v.require(rb.max_abs >= kControlFactor * rb.tolerance,
              "e^{2ipx} control " + sci(rb.max_abs / rb.tolerance) + "x tolerance");
    return v;
}

Verdict c6() {
    Verdict v;
    auto rho = apply_boundary_filter(1.0, MomentumProfile::physical(), desk());
    auto r = triple_star_residual(rho, 1.0);
    v.require(r.pass, "triple-star residual " + sci(r.max_abs) + " < " + sci(r.tolerance));
    return v;
}

Verdict c7() {
    Verdict v;
    PhaseFunction f = confined_f(1.0);
    auto st = ConfinedEigenstate::make(1.0);
    auto eq = equivalence_chain_residual(f, 1.0, st.psi_prime_0,
                                         EpsilonRule::lattice(desk(), Extrapolation::richardson3));
    v.require(eq.regular.pass, "regular part " + sci(eq.regular.max_abs) + " < " + sci(eq.regular.tolerance));
    const double two_over_pi = 2.0 / M_PI;
    double worst = 0.0;
    for (double d : eq.delta_from_stencil) worst = std::max(worst, std::abs(d - two_over_pi));
    v.require(std::abs(eq.delta_closed - two_over_pi) < 1e-12 && worst <= kRelativeOnePercent * two_over_pi,
              "delta coefficient within 1% of 2/pi (max dev " + sci(worst) + ")");
    PhaseFunction rho = (1.0 / M_PI) * apply_boundary_filter(1.0, MomentumProfile::physical(), desk());
    auto td = third_derivative_identity(rho, st.psi_prime_0);
    const double target = -32.0 / M_PI;
    v.require(std::abs(td.mean - target) <= kRelativeOnePercent * std::abs(target),
              "d3 rho(0) mean " + sci(td.mean) + " vs -32/pi");
    v.require(td.relative_spread <= kConstantInP, "constant in p (rel spread " + sci(td.relative_spread) + ")");
    return v;
}

Verdict c8() {
    Verdict v;
    const auto& g = desk();
    PhysicalSelection sel = select_physical(1.0, g);
    PureStateOptions po;
    po.damping = 1.5;
    auto phys = purestate_residual(sel.f, po);
    v.require(phys.report.pass, "physical masked residual " + sci(phys.report.max_abs) + " < " +
                                    sci(phys.report.tolerance));
    std::vector<double> positive;
    for (double p : momenta_away_from_zero(g))
        if (p > 0.0) positive.push_back(p);
    auto flat = profile_consistency(MomentumProfile::samples([](double) { return 1.0; }), positive);
    double signature = flat.p.empty() ? INFINITY : 0.0;
    for (std::size_t k = 0; k < flat.p.size(); ++k)
        signature = std::max(signature, std::abs(flat.second_derivative[k] * flat.p[k] * flat.p[k] + 1.0));
    v.require(!flat.report.pass && signature < 1e-3, "N = 1 fails with -1/p^2 signature (" + sci(signature) + ")");
    auto mix = purestate_residual(0.5 * (confined_f(1.0) + confined_f(4.0)), po).report;
    v.require(mix.max_abs >= kControlFactor * mix.tolerance,
              "mixture control " + sci(mix.max_abs / mix.tolerance) + "x tolerance");
    v.require(std::abs(sel.a) <= kScanTolerance, "a-scan a = " + sci(sel.a));
    return v;
}

Verdict c9() {
    Verdict v;
    for (double E : {1.0, 2.0, 4.0}) {
        auto fit = cross_formulation_fit(confined_f(E),
                                         confine(apply_boundary_filter(E, MomentumProfile::physical(), desk())));
        v.require(fit.residual < kCrossResidual, "E=" + sci(E) + " residual " + sci(fit.residual));
    }
    return v;
}

Verdict c10() {
    Verdict v;
    auto study = wall_limit_study(1.0, {1.0, 2.0, 4.0, 8.0}, desk());
    std::string d, ph;
    double worst_change = 0.0;
    for (const auto& r : study.rows) {
        d += (d.empty() ? "" : ",") + sci(r.sup_distance);
        ph += (ph.empty() ? "" : ",") + sci(r.phase_shift);
        worst_change = std::max(worst_change, r.distance_change);
    }
    v.require(study.monotone, "d(alpha) and |phase_shift| strictly decreasing (d=" + d + " phase=" + ph +
                                  (study.monotone ? "" : ": " + study.offending) + ")");
    v.require(study.self_convergent && worst_change < kSelfConvergence,
              "self-convergence " + sci(worst_change) + " < 1%");
    return v;
}

Verdict c11() {
    Verdict v;
    const std::vector<TimeState> states{
        TimeState::make({1.0}, {1.0}),
        TimeState::make({std::sqrt(0.5), cplx(0.0, std::sqrt(0.5))}, {1.0, 2.25})};
    const double dt = 1e-3;
    for (std::size_t s = 0; s < states.size(); ++s)
        for (double t : {0.0, 0.1}) {
            const std::string tag = (s == 0 ? "stationary" : "superposition") + std::string(" t=") + sci(t);
            auto r = moyal_residual(states[s], t, dt, desk());
            v.require(r.pass, tag + " " + sci(r.max_abs) + " < " + sci(r.tolerance));
            MoyalOptions none;
            none.zero_source = true;
            auto field = moyal_residual_field(states[s], t, dt, desk(), none);
            double near = 0.0;
            for (std::size_t i = 0; i <= desk().wall_index(); ++i)
                if (desk().x(i) >= -1.0)
                    for (std::size_t j = 0; j < desk().n_p(); ++j) near = std::max(near, std::abs(field(i, j)));
            v.require(near >= kControlFactor * r.tolerance,
                      tag + " zero-source control near wall " + sci(near / r.tolerance) + "x");
        }
    return v;
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria{
    {"Wigner correctness", c1},
    {"naive equation fails on the confined state", c2},
    {"stargenvalue identity with the delta' potential", c3},
    {"wall boundary conditions", c4},
    {"fourth-order equation", c5},
    {"triple-star equation", c6},
    {"equivalence chain", c7},
    {"pure-state selection", c8},
    {"cross-formulation equality", c9},
    {"wall limit", c10},
    {"dynamics with the wall source", c11},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (std::size_t n = 0; n < kCriteria.size(); ++n) {
        if (only != 0 && static_cast<int>(n) + 1 != only) continue;
        Verdict v;
        try {
            v = kCriteria[n].second();
        } catch (const std::exception& e) {
            v.require(false, std::string("error: ") + e.what());
        }
        all &= v.pass;
        std::printf("[%s] criterion %zu: %s (%s)\n", v.pass ? "PASS" : "FAIL", n + 1,
                    kCriteria[n].first.c_str(), v.detail.str().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
