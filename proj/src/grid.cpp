#include "dqwall/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqwall {

PhaseGrid::PhaseGrid(double x_min, double x_max, std::size_t n_x,
                     double p_min, double p_max, std::size_t n_p)
    : n_x_(n_x), n_p_(n_p), i0_(0), dx_(0), dp_(0), p_min_(p_min), p_max_(p_max),
      req_x_min_(x_min), req_x_max_(x_max) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(p_min) &&
          std::isfinite(p_max)))
        throw std::invalid_argument("PhaseGrid: bounds must be finite");
    if (!(x_min < 0.0 && 0.0 < x_max))
        throw std::invalid_argument("PhaseGrid: need x_min < 0 < x_max");
    if (!(p_min < p_max))
        throw std::invalid_argument("PhaseGrid: need p_min < p_max");
    if (n_x < 16 || n_p < 16)
        throw std::invalid_argument("PhaseGrid: need at least 16 nodes per axis");

    dx_ = (x_max - x_min) / static_cast<double>(n_x - 1);
    dp_ = (p_max - p_min) / static_cast<double>(n_p - 1);
    double r = std::round(-x_min / dx_);
    if (r < 1.0 || r > static_cast<double>(n_x - 2))
        throw std::invalid_argument("PhaseGrid: wall node would sit on the window edge");
    i0_ = static_cast<std::size_t>(r);
}

PhaseGrid PhaseGrid::desk_default() { return PhaseGrid(-8.0, 2.0, 512, -10.0, 10.0, 512); }

std::vector<double> PhaseGrid::x_nodes() const {
    std::vector<double> v(n_x_);
    for (std::size_t i = 0; i < n_x_; ++i) v[i] = x(i);
    return v;
}

std::vector<double> PhaseGrid::p_nodes() const {
    std::vector<double> v(n_p_);
    for (std::size_t j = 0; j < n_p_; ++j) v[j] = p(j);
    return v;
}

PhaseGrid PhaseGrid::resized(std::size_t n_x, std::size_t n_p) const {
    return PhaseGrid(req_x_min_, req_x_max_, n_x, p_min_, p_max_, n_p);
}

bool PhaseGrid::operator==(const PhaseGrid& o) const {
    return n_x_ == o.n_x_ && n_p_ == o.n_p_ && i0_ == o.i0_ && dx_ == o.dx_ &&
           dp_ == o.dp_ && p_min_ == o.p_min_ && p_max_ == o.p_max_;
}

}  // namespace dqwall
