#include "dqwall/tail.hpp"

#include <gsl/gsl_sf_expint.h>

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace dqwall {

namespace {

constexpr double kZeroFrequency = 1e-12;

std::optional<cplx> exp_integral(int s, double W, double Q) {
    if (std::abs(W) < kZeroFrequency) {
        if (s >= 2) return cplx(std::pow(Q, 1.0 - s) / (s - 1.0), 0.0);
        return std::nullopt;
    }
    const cplx i(0.0, 1.0);
    cplx e = std::exp(-i * W * Q);
    if (s == 0) return e / (i * W);
    double a = std::abs(W) * Q;
    double sg = W > 0 ? 1.0 : -1.0;
    cplx j = -gsl_sf_Ci(a) - i * sg * (M_PI / 2.0 - gsl_sf_Si(a));
    for (int m = 2; m <= s; ++m) j = (std::pow(Q, 1.0 - m) * e - i * W * j) / (m - 1.0);
    return j;
}

// Least-squares fit on nodes [lo, hi) using the basis (Q/q)^m {cos, sin}(w q).
void fit_end(const cplx* slice, const std::vector<double>& q, std::size_t lo, std::size_t hi,
             double omega, double Q, const std::vector<int>& powers, std::vector<cplx>& cc,
             std::vector<cplx>& sc, double& rms) {
    const std::size_t rows = hi - lo, np = powers.size();
    Eigen::MatrixXd A(rows, 2 * np);
    Eigen::MatrixXd b(rows, 2);
    for (std::size_t r = 0; r < rows; ++r) {
        double qq = q[lo + r];
        for (std::size_t m = 0; m < np; ++m) {
            double s = std::pow(Q / std::abs(qq), powers[m]);
            A(r, 2 * m) = s * std::cos(omega * qq);
            A(r, 2 * m + 1) = s * std::sin(omega * qq);
        }
        b(r, 0) = slice[lo + r].real();
        b(r, 1) = slice[lo + r].imag();
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    Eigen::MatrixXd c = cod.solve(b);
    Eigen::MatrixXd res = A * c - b;
    rms = std::sqrt(res.squaredNorm() / static_cast<double>(rows));
    cc.assign(np, cplx(0.0, 0.0));
    sc.assign(np, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < np; ++m) {
        // (Q/|q|)^m = Q^m sgn(q)^m q^-m
        double sgn = (q[lo] < 0.0 && powers[m] % 2 != 0) ? -1.0 : 1.0;
        double scale = std::pow(Q, powers[m]) * sgn;
        cc[m] = scale * cplx(c(2 * m, 0), c(2 * m, 1));
        sc[m] = scale * cplx(c(2 * m + 1, 0), c(2 * m + 1, 1));
    }
}

}  // namespace

cplx tail_exponential_integral(int s, double W, double Q) {
    if (s < 0 || !(Q > 0.0)) throw std::invalid_argument("tail integral: need s >= 0, Q > 0");
    auto v = exp_integral(s, W, Q);
    if (!v) throw std::domain_error("tail integral diverges at zero frequency");
    return *v;
}

TailFit fit_tails(const cplx* slice, const std::vector<double>& q, double omega,
                  const TailModel& model) {
    TailFit fit;
    fit.omega = omega;
    fit.powers = model.powers;
    const std::size_t n = q.size();
    std::size_t m = std::min(model.fit_points, n / 4);
    if (n < 8 || m < 2 * model.powers.size() + 2) return fit;
    if (!(q.front() < 0.0 && q.back() > 0.0)) return fit;
    if (-q[m - 1] < model.min_abs_q || q[n - m] < model.min_abs_q) return fit;
    fit.q_left = q.front();
    fit.q_right = q.back();
    fit_end(slice, q, 0, m, omega, -fit.q_left, model.powers, fit.left_cos, fit.left_sin,
            fit.rms_left);
    fit_end(slice, q, n - m, n, omega, fit.q_right, model.powers, fit.right_cos,
            fit.right_sin, fit.rms_right);
    fit.active = true;
    return fit;
}

cplx tail_integral(const TailFit& fit, int n, double nu) {
    if (!fit.active) return cplx(0.0, 0.0);
    const cplx i(0.0, 1.0);
    cplx total(0.0, 0.0);
    for (std::size_t k = 0; k < fit.powers.size(); ++k) {
        int s = fit.powers[k] - n;
        if (s < 0) throw std::invalid_argument("tail integral: moment too high for the model");
        for (int sigma : {1, -1}) {
            double mu = nu + sigma * fit.omega;
            // cos(wq) = (e^{iwq} + e^{-iwq})/2, sin(wq) = (e^{iwq} - e^{-iwq})/(2i)
            cplx wr = 0.5 * (fit.right_cos[k] - double(sigma) * i * fit.right_sin[k]);
            cplx wl = 0.5 * (fit.left_cos[k] - double(sigma) * i * fit.left_sin[k]);
            if (auto jr = exp_integral(s, -mu, fit.q_right)) total += wr * *jr;
            if (auto jl = exp_integral(s, mu, -fit.q_left)) {
                double parity = (s % 2 == 0) ? 1.0 : -1.0;
                total += wl * parity * *jl;
            }
        }
    }
    return total;
}

}  // namespace dqwall
