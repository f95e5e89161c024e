#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "dqwall/grid.hpp"

namespace dqwall {

using cplx = std::complex<double>;

/// Complex grid function on a PhaseGrid, row-major with x outer and p inner.
/// Values are fixed at construction and checked to be finite.
class PhaseFunction {
public:
    explicit PhaseFunction(PhaseGrid grid, std::string tag = "");
    PhaseFunction(PhaseGrid grid, std::vector<cplx> values, std::string tag = "");

    static PhaseFunction sample(const PhaseGrid& grid,
                                const std::function<cplx(double, double)>& fn,
                                std::string tag = "");

    const PhaseGrid& grid() const { return grid_; }
    const std::string& tag() const { return tag_; }
    const std::vector<cplx>& values() const { return v_; }

    cplx operator()(std::size_t i, std::size_t j) const { return v_[grid_.index(i, j)]; }

    PhaseFunction retagged(std::string tag) const;

    double max_abs() const;
    double max_abs_imag() const;

private:
    PhaseGrid grid_;
    std::vector<cplx> v_;
    std::string tag_;
};

PhaseFunction operator+(const PhaseFunction& a, const PhaseFunction& b);
PhaseFunction operator-(const PhaseFunction& a, const PhaseFunction& b);
PhaseFunction operator*(cplx s, const PhaseFunction& a);
PhaseFunction conj(const PhaseFunction& a);
PhaseFunction real_part(const PhaseFunction& a);

/// Regular grid part plus the coefficient of delta(x) at the wall, per p node.
struct DistributionalValue {
    PhaseFunction regular;
    std::vector<cplx> delta_coeff;
};

/// Sigma(y, p) on a symmetric y axis, y outer and p inner.
struct SpectralSlice {
    std::vector<double> y_nodes;
    std::vector<double> p_nodes;
    std::vector<cplx> values;

    cplx operator()(std::size_t iy, std::size_t j) const {
        return values[iy * p_nodes.size() + j];
    }
};

/// Phase-space function made of lines: sum_l c_l(x) delta(p - p_l), with the
/// coefficients sampled on the x nodes of a grid. Wigner functions of
/// unconfined plane-wave superpositions have exactly this form.
struct LineSpectrum {
    PhaseGrid grid;
    std::vector<double> momenta;
    std::vector<std::vector<cplx>> coeffs;  // [line][x node]

    double max_abs() const;
};

}  // namespace dqwall
