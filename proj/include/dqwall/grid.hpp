#pragma once

#include <cstddef>
#include <vector>

namespace dqwall {

/// Uniform rectangular (x, p) lattice with a node exactly at x = 0.
///
/// The x nodes are x_i = (i - i0) * dx, so the wall node i0 is exact. The
/// requested x bounds are snapped to this lattice while dx is kept.
class PhaseGrid {
public:
    PhaseGrid(double x_min, double x_max, std::size_t n_x,
              double p_min, double p_max, std::size_t n_p);

    /// x in [-8, 2], p in [-10, 10], 512 x 512.
    static PhaseGrid desk_default();

    double x_min() const { return x(0); }
    double x_max() const { return x(n_x_ - 1); }
    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    std::size_t n_x() const { return n_x_; }
    std::size_t n_p() const { return n_p_; }
    double dx() const { return dx_; }
    double dp() const { return dp_; }

    /// Index of the node at x = 0.
    std::size_t wall_index() const { return i0_; }

    double x(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(i0_)) * dx_;
    }
    double p(std::size_t j) const { return p_min_ + static_cast<double>(j) * dp_; }

    std::vector<double> x_nodes() const;
    std::vector<double> p_nodes() const;

    std::size_t size() const { return n_x_ * n_p_; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_p_ + j; }

    /// dx^2 + dp^2, the scale used by the residual tolerances.
    double h2() const { return dx_ * dx_ + dp_ * dp_; }

    /// Same window with both point counts changed (for refinement studies).
    PhaseGrid resized(std::size_t n_x, std::size_t n_p) const;

    /// Bounds as requested before snapping the wall node.
    double requested_x_min() const { return req_x_min_; }
    double requested_x_max() const { return req_x_max_; }

    bool operator==(const PhaseGrid& o) const;

private:
    std::size_t n_x_, n_p_, i0_;
    double dx_, dp_, p_min_, p_max_;
    double req_x_min_, req_x_max_;
};

}  // namespace dqwall
