#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dqwall {

using cplx = std::complex<double>;

/// Asymptotic model of a momentum slice beyond the p-window:
///   f(q) ~ sum_m q^-m (a_m cos(w q) + b_m sin(w q)),
/// fitted separately on the last nodes at each window end. For a slice at x
/// of a function confined by the wall, w = 2x.
struct TailModel {
    std::size_t fit_points = 64;
    std::vector<int> powers{2, 3};
    double min_abs_q = 2.0;  // no fit when the window end is closer to p = 0
};

struct TailFit {
    bool active = false;
    double omega = 0.0;
    double q_left = 0.0, q_right = 0.0;  // window ends (q_left < 0 < q_right)
    std::vector<int> powers;
    std::vector<cplx> left_cos, left_sin, right_cos, right_sin;
    double rms_left = 0.0, rms_right = 0.0;  // fit residuals
};

/// Fits both tails of slice[j] sampled at q[j] (uniform, increasing).
TailFit fit_tails(const cplx* slice, const std::vector<double>& q, double omega,
                  const TailModel& model);

/// integral over both tails of q^n exp(i nu q) f(q) for the fitted model,
/// n in {0, 1, 2}. Components whose integral diverges (zero net frequency with
/// a non-integrable power) are dropped.
cplx tail_integral(const TailFit& fit, int n, double nu);

/// J_s(W, Q) = integral_Q^inf exp(-i W q) q^-s dq for s >= 0, Q > 0.
/// s = 0 uses the Abel-regularized value exp(-i W Q) / (i W).
cplx tail_exponential_integral(int s, double W, double Q);

}  // namespace dqwall
