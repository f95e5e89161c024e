#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dqwall/phase_function.hpp"
#include "dqwall/tail.hpp"

namespace dqwall {

/// Finite-difference weights for the m-th derivative at z from arbitrary
/// nodes (Fornberg's recursion).
std::vector<double> fornberg_weights(double z, const std::vector<double>& nodes, int m);

/// Derivative stencils on a uniform 1-D lattice.
///
/// Interior nodes use central stencils with the requested accuracy; nodes near
/// a segment end use one-sided stencils of at least that accuracy. With a
/// split, nodes [0, split] and [split + 1, n) form separate segments, so the
/// wall node sees only data on its left.
class Stencil1D {
public:
    Stencil1D(std::size_t n, double h, int order, int accuracy,
              std::optional<std::size_t> split = std::nullopt);

    std::size_t size() const { return start_.size(); }
    std::size_t start(std::size_t i) const { return start_[i]; }
    std::size_t width(std::size_t i) const { return width_[i]; }
    /// Weights for node i, already divided by h^order.
    const double* weights(std::size_t i) const { return &w_[offset_[i]]; }

    template <class T>
    T apply_at(const T* data, std::ptrdiff_t stride, std::size_t i) const {
        T s{};
        const double* w = weights(i);
        for (std::size_t k = 0; k < width_[i]; ++k)
            s += w[k] * data[static_cast<std::ptrdiff_t>(start_[i] + k) * stride];
        return s;
    }

private:
    std::vector<std::size_t> start_, width_, offset_;
    std::vector<double> w_;
};

struct StencilOptions {
    int accuracy = 8;
    /// Treat x <= 0 and x > 0 as separate segments (left limits at the wall).
    bool split_at_wall = true;
};

/// d^order f / dx^order, order in 1..4.
PhaseFunction partial_derivative_x(const PhaseFunction& f, int order,
                                   const StencilOptions& opt = {});

/// d^order f / dx^order at one x node, for every p node.
std::vector<cplx> partial_derivative_x_at(const PhaseFunction& f, int order, std::size_t i,
                                          const StencilOptions& opt = {});

/// Derivative of uniformly sampled data (no split).
std::vector<double> derivative_1d(const std::vector<double>& v, double h, int order,
                                  int accuracy);

/// Composite Simpson weights for n uniformly spaced points with unit step.
/// Even n closes with Simpson's 3/8 rule on the last four points.
std::vector<double> simpson_weights(std::size_t n);

struct Marginal {
    std::vector<double> values;  // one per x node
    double boundary_tail = 0.0;  // max |f| on the p-window edges
    double tail_tolerance = 0.0;
    bool tail_ok = true;
    double max_abs_imag = 0.0;   // largest imaginary part of the integral
};

/// Integral over p at each x node. With a tail model, the parts of the
/// integral beyond the p-window are added from the fitted asymptotics.
Marginal integrate_p(const PhaseFunction& f, double tail_tolerance = 5e-2,
                     const TailModel* tails = nullptr);

/// Symmetric axis of the variable conjugate to x.
struct YAxis {
    double y_max;
    std::size_t n_y;  // odd

    /// Spacing 2 pi / (n_x dx) up to |y| = pi / (2 dx).
    static YAxis conjugate(const PhaseGrid& g);
    std::vector<double> nodes() const;
    double dy() const;
};

/// Sigma(y, p) = integral dx exp(i x y) f(x, p) by Simpson quadrature.
SpectralSlice fourier_x(const PhaseFunction& f, const YAxis& axis);
SpectralSlice fourier_x(const PhaseFunction& f);

/// Largest |f| on the two x-window edges.
double x_edge_tail(const PhaseFunction& f);

/// f(x, p) = (1 / 2 pi) integral dy exp(-i x y) Sigma(y, p), on the grid.
PhaseFunction inverse_fourier_x(const SpectralSlice& s, const PhaseGrid& grid);

}  // namespace dqwall
