#include "dqwall/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dqwall {

std::vector<double> fornberg_weights(double z, const std::vector<double>& nodes, int m) {
    const std::size_t n = nodes.size();
    if (m < 0 || n < static_cast<std::size_t>(m) + 1)
        throw std::invalid_argument("fornberg_weights: too few nodes for the derivative order");
    std::vector<std::vector<long double>> c(n, std::vector<long double>(m + 1, 0.0L));
    long double c1 = 1.0L, c4 = nodes[0] - static_cast<long double>(z);
    c[0][0] = 1.0L;
    for (std::size_t i = 1; i < n; ++i) {
        int mn = std::min(static_cast<int>(i), m);
        long double c2 = 1.0L, c5 = c4;
        c4 = nodes[i] - static_cast<long double>(z);
        for (std::size_t j = 0; j < i; ++j) {
            long double c3 = static_cast<long double>(nodes[i]) - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(c[i][m]);
    return w;
}

Stencil1D::Stencil1D(std::size_t n, double h, int order, int accuracy,
                     std::optional<std::size_t> split) {
    if (order < 1) throw std::invalid_argument("Stencil1D: order must be >= 1");
    if (accuracy < 2 || accuracy % 2 != 0)
        throw std::invalid_argument("Stencil1D: accuracy must be a positive even integer");
    const std::size_t half = static_cast<std::size_t>((order + 1) / 2 - 1 + accuracy / 2);
    const std::size_t central = 2 * half + 1;
    const std::size_t sided = std::max(central, static_cast<std::size_t>(order + accuracy));

    std::vector<std::pair<std::size_t, std::size_t>> segments;
    if (split && *split + 1 < n) {
        segments.push_back({0, *split});
        segments.push_back({*split + 1, n - 1});
    } else {
        segments.push_back({0, n - 1});
    }
    for (auto [lo, hi] : segments)
        if (hi - lo + 1 < sided)
            throw std::invalid_argument("Stencil1D: " + std::to_string(hi - lo + 1) +
                                        " nodes are too few for a " + std::to_string(sided) +
                                        "-point stencil");

    start_.resize(n);
    width_.resize(n);
    offset_.resize(n);
    const double scale = std::pow(h, order);
    // Weights depend only on the node's position within its window; cache them.
    std::vector<std::pair<std::pair<std::ptrdiff_t, std::size_t>, std::size_t>> cache;
    for (auto [lo, hi] : segments) {
        for (std::size_t i = lo; i <= hi; ++i) {
            std::size_t s, w;
            if (i >= lo + half && i + half <= hi) {
                s = i - half;
                w = central;
            } else {
                w = sided;
                std::ptrdiff_t s0 = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(w / 2);
                s0 = std::clamp<std::ptrdiff_t>(s0, static_cast<std::ptrdiff_t>(lo),
                                                static_cast<std::ptrdiff_t>(hi + 1 - w));
                s = static_cast<std::size_t>(s0);
            }
            start_[i] = s;
            width_[i] = w;
            std::ptrdiff_t rel = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(s);
            auto key = std::make_pair(rel, w);
            auto it = std::find_if(cache.begin(), cache.end(),
                                   [&](const auto& e) { return e.first == key; });
            if (it != cache.end()) {
                offset_[i] = it->second;
                continue;
            }
            std::vector<double> nodes(w);
            for (std::size_t k = 0; k < w; ++k) nodes[k] = static_cast<double>(k);
            auto wt = fornberg_weights(static_cast<double>(rel), nodes, order);
            offset_[i] = w_.size();
            for (double v : wt) w_.push_back(v / scale);
            cache.push_back({key, offset_[i]});
        }
    }
}

namespace {

void require_order(int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("partial_derivative_x: order must be in 1..4");
}

Stencil1D x_stencil(const PhaseGrid& g, int order, const StencilOptions& opt) {
    std::optional<std::size_t> split;
    if (opt.split_at_wall) split = g.wall_index();
    return Stencil1D(g.n_x(), g.dx(), order, opt.accuracy, split);
}

}  // namespace

PhaseFunction partial_derivative_x(const PhaseFunction& f, int order, const StencilOptions& opt) {
    require_order(order);
    const PhaseGrid& g = f.grid();
    Stencil1D st = x_stencil(g, order, opt);
    const std::size_t np = g.n_p();
    const cplx* in = f.values().data();
    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        const double* w = st.weights(i);
        cplx* row = &out[i * np];
        for (std::size_t k = 0; k < st.width(i); ++k) {
            const cplx* src = in + (st.start(i) + k) * np;
            const double wk = w[k];
            for (std::size_t j = 0; j < np; ++j) row[j] += wk * src[j];
        }
    }
    return PhaseFunction(g, std::move(out), f.tag());
}

std::vector<cplx> partial_derivative_x_at(const PhaseFunction& f, int order, std::size_t i,
                                          const StencilOptions& opt) {
    if (order < 1) throw std::invalid_argument("partial_derivative_x_at: order must be >= 1");
    const PhaseGrid& g = f.grid();
    if (i >= g.n_x()) throw std::out_of_range("partial_derivative_x_at: node out of range");
    std::optional<std::size_t> split;
    if (opt.split_at_wall) split = g.wall_index();
    Stencil1D st(g.n_x(), g.dx(), order, opt.accuracy, split);
    std::vector<cplx> out(g.n_p());
    for (std::size_t j = 0; j < g.n_p(); ++j)
        out[j] = st.apply_at(f.values().data() + j, static_cast<std::ptrdiff_t>(g.n_p()), i);
    return out;
}

std::vector<double> derivative_1d(const std::vector<double>& v, double h, int order,
                                  int accuracy) {
    Stencil1D st(v.size(), h, order, accuracy);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = st.apply_at(v.data(), 1, i);
    return out;
}

std::vector<double> simpson_weights(std::size_t n) {
    if (n < 2) throw std::invalid_argument("simpson_weights: need at least 2 points");
    std::vector<double> w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = 0.5;
        return w;
    }
    std::size_t m = (n % 2 == 1) ? n : n - 3;  // points covered by the 1/3 rule
    if (m >= 3) {
        for (std::size_t k = 0; k + 2 < m; k += 2) {
            w[k] += 1.0 / 3.0;
            w[k + 1] += 4.0 / 3.0;
            w[k + 2] += 1.0 / 3.0;
        }
    }
    if (n % 2 == 0) {
        std::size_t s = n - 4;
        w[s] += 3.0 / 8.0;
        w[s + 1] += 9.0 / 8.0;
        w[s + 2] += 9.0 / 8.0;
        w[s + 3] += 3.0 / 8.0;
    }
    return w;
}

Marginal integrate_p(const PhaseFunction& f, double tail_tolerance, const TailModel* tails) {
    const PhaseGrid& g = f.grid();
    const std::size_t np = g.n_p();
    auto w = simpson_weights(np);
    auto q = g.p_nodes();
    Marginal m;
    m.values.resize(g.n_x());
    m.tail_tolerance = tail_tolerance;
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        const cplx* row = f.values().data() + i * np;
        cplx s(0.0, 0.0);
        for (std::size_t j = 0; j < np; ++j) s += w[j] * row[j];
        s *= g.dp();
        if (tails) s += tail_integral(fit_tails(row, q, 2.0 * g.x(i), *tails), 0, 0.0);
        m.values[i] = s.real();
        m.max_abs_imag = std::max(m.max_abs_imag, std::abs(s.imag()));
        m.boundary_tail = std::max({m.boundary_tail, std::abs(row[0]), std::abs(row[np - 1])});
    }
    m.tail_ok = m.boundary_tail < tail_tolerance;
    return m;
}

YAxis YAxis::conjugate(const PhaseGrid& g) {
    // Simpson's alternating weights alias content by pi/dx, so stop at half of it.
    const std::size_t half = g.n_x() / 4;
    double dy = 2.0 * M_PI / (static_cast<double>(g.n_x()) * g.dx());
    return YAxis{dy * static_cast<double>(half), 2 * half + 1};
}

std::vector<double> YAxis::nodes() const {
    std::vector<double> y(n_y);
    const long c = static_cast<long>(n_y / 2);
    for (std::size_t k = 0; k < n_y; ++k) y[k] = static_cast<double>(static_cast<long>(k) - c) * dy();
    return y;
}

double YAxis::dy() const { return n_y > 1 ? 2.0 * y_max / static_cast<double>(n_y - 1) : 0.0; }

double x_edge_tail(const PhaseFunction& f) {
    const PhaseGrid& g = f.grid();
    double m = 0.0;
    for (std::size_t j = 0; j < g.n_p(); ++j)
        m = std::max({m, std::abs(f(0, j)), std::abs(f(g.n_x() - 1, j))});
    return m;
}

SpectralSlice fourier_x(const PhaseFunction& f, const YAxis& axis) {
    if (axis.n_y < 3 || axis.n_y % 2 == 0 || !(axis.y_max > 0.0))
        throw std::invalid_argument("fourier_x: y axis needs an odd count >= 3 and y_max > 0");
    const PhaseGrid& g = f.grid();
    const std::size_t nx = g.n_x(), np = g.n_p();
    SpectralSlice s;
    s.y_nodes = axis.nodes();
    s.p_nodes = g.p_nodes();
    s.values.assign(axis.n_y * np, cplx(0.0, 0.0));
    auto w = simpson_weights(nx);
    const cplx* in = f.values().data();
    for (std::size_t iy = 0; iy < axis.n_y; ++iy) {
        double y = s.y_nodes[iy];
        cplx* out = &s.values[iy * np];
        for (std::size_t i = 0; i < nx; ++i) {
            cplx ph = w[i] * g.dx() * std::exp(cplx(0.0, g.x(i) * y));
            const cplx* row = in + i * np;
            for (std::size_t j = 0; j < np; ++j) out[j] += ph * row[j];
        }
    }
    return s;
}

SpectralSlice fourier_x(const PhaseFunction& f) { return fourier_x(f, YAxis::conjugate(f.grid())); }

PhaseFunction inverse_fourier_x(const SpectralSlice& s, const PhaseGrid& grid) {
    const std::size_t ny = s.y_nodes.size(), np = s.p_nodes.size();
    if (np != grid.n_p()) throw std::invalid_argument("inverse_fourier_x: p axis mismatch");
    if (ny < 3) throw std::invalid_argument("inverse_fourier_x: y axis too short");
    double dy = s.y_nodes[1] - s.y_nodes[0];
    // trapezoid weights: spectrally accurate for a transform that has decayed at the ends
    std::vector<double> w(ny, 1.0);
    w.front() = w.back() = 0.5;
    std::vector<cplx> out(grid.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        double x = grid.x(i);
        cplx* row = &out[i * np];
        for (std::size_t iy = 0; iy < ny; ++iy) {
            cplx ph = w[iy] * dy / (2.0 * M_PI) * std::exp(cplx(0.0, -x * s.y_nodes[iy]));
            const cplx* src = &s.values[iy * np];
            for (std::size_t j = 0; j < np; ++j) row[j] += ph * src[j];
        }
    }
    return PhaseFunction(grid, std::move(out), "inverse_fourier_x");
}

}  // namespace dqwall
