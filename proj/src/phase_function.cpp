#include "dqwall/phase_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqwall {

PhaseFunction::PhaseFunction(PhaseGrid grid, std::string tag)
    : grid_(grid), v_(grid.size(), cplx(0.0, 0.0)), tag_(std::move(tag)) {}

PhaseFunction::PhaseFunction(PhaseGrid grid, std::vector<cplx> values, std::string tag)
    : grid_(grid), v_(std::move(values)), tag_(std::move(tag)) {
    if (v_.size() != grid_.size())
        throw std::invalid_argument("PhaseFunction: value count does not match grid");
    for (const auto& z : v_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("PhaseFunction: non-finite value (" + tag_ + ")");
}

PhaseFunction PhaseFunction::sample(const PhaseGrid& grid,
                                    const std::function<cplx(double, double)>& fn,
                                    std::string tag) {
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        double x = grid.x(i);
        for (std::size_t j = 0; j < grid.n_p(); ++j) v[grid.index(i, j)] = fn(x, grid.p(j));
    }
    return PhaseFunction(grid, std::move(v), std::move(tag));
}

PhaseFunction PhaseFunction::retagged(std::string tag) const {
    PhaseFunction out = *this;
    out.tag_ = std::move(tag);
    return out;
}

double PhaseFunction::max_abs() const {
    double m = 0.0;
    for (const auto& z : v_) m = std::max(m, std::abs(z));
    return m;
}

double PhaseFunction::max_abs_imag() const {
    double m = 0.0;
    for (const auto& z : v_) m = std::max(m, std::abs(z.imag()));
    return m;
}

namespace {

void require_same_grid(const PhaseFunction& a, const PhaseFunction& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("PhaseFunction arithmetic on different grids");
}

template <class Op>
PhaseFunction zip(const PhaseFunction& a, const PhaseFunction& b, Op op) {
    require_same_grid(a, b);
    std::vector<cplx> v(a.values().size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a.values()[k], b.values()[k]);
    return PhaseFunction(a.grid(), std::move(v), a.tag());
}

template <class Op>
PhaseFunction map(const PhaseFunction& a, Op op) {
    std::vector<cplx> v(a.values().size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a.values()[k]);
    return PhaseFunction(a.grid(), std::move(v), a.tag());
}

}  // namespace

PhaseFunction operator+(const PhaseFunction& a, const PhaseFunction& b) {
    return zip(a, b, [](cplx u, cplx w) { return u + w; });
}

PhaseFunction operator-(const PhaseFunction& a, const PhaseFunction& b) {
    return zip(a, b, [](cplx u, cplx w) { return u - w; });
}

PhaseFunction operator*(cplx s, const PhaseFunction& a) {
    return map(a, [s](cplx u) { return s * u; });
}

PhaseFunction conj(const PhaseFunction& a) {
    return map(a, [](cplx u) { return std::conj(u); });
}

PhaseFunction real_part(const PhaseFunction& a) {
    return map(a, [](cplx u) { return cplx(u.real(), 0.0); });
}

double LineSpectrum::max_abs() const {
    double m = 0.0;
    for (const auto& line : coeffs)
        for (const auto& z : line) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace dqwall
