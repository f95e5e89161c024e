#include "dqwall/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqwall {

namespace {

void require_energy(double E) {
    if (!(E > 0.0) || !std::isfinite(E))
        throw std::invalid_argument("WaveFunction: energy must be positive and finite");
}

void require_modes(const std::vector<Mode>& modes) {
    for (const auto& m : modes)
        if (!std::isfinite(m.amplitude.real()) || !std::isfinite(m.amplitude.imag()) ||
            !std::isfinite(m.wavenumber))
            throw std::invalid_argument("WaveFunction: non-finite mode");
}

std::vector<Mode> sine_pair(double E) {
    double k = std::sqrt(E);
    return {{cplx(1.0, 0.0), k}, {cplx(-1.0, 0.0), -k}};
}

}  // namespace

WaveFunction WaveFunction::confined_eigenstate(double E) {
    require_energy(E);
    WaveFunction w;
    w.kind_ = Kind::confined;
    w.energy_ = E;
    w.modes_ = sine_pair(E);
    return w;
}

WaveFunction WaveFunction::full_line_eigenstate(double E) {
    WaveFunction w = confined_eigenstate(E);
    w.kind_ = Kind::full_line;
    return w;
}

WaveFunction WaveFunction::confined_sum(std::vector<Mode> modes) {
    require_modes(modes);
    WaveFunction w;
    w.kind_ = Kind::confined;
    w.modes_ = std::move(modes);
    return w;
}

WaveFunction WaveFunction::full_line_sum(std::vector<Mode> modes) {
    WaveFunction w = confined_sum(std::move(modes));
    w.kind_ = Kind::full_line;
    return w;
}

WaveFunction WaveFunction::sampled(double x0, double h, std::vector<cplx> values,
                                   std::vector<cplx> derivatives, double energy) {
    if (!(h > 0.0) || !std::isfinite(x0))
        throw std::invalid_argument("WaveFunction: bad sample lattice");
    if (values.size() < 4) throw std::invalid_argument("WaveFunction: need >= 4 samples");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("WaveFunction: non-finite sample");
    std::size_t n = values.size();
    if (derivatives.empty()) {
        derivatives.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == 0)
                derivatives[k] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
            else if (k == n - 1)
                derivatives[k] =
                    (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
            else
                derivatives[k] = (values[k + 1] - values[k - 1]) / (2.0 * h);
        }
    } else if (derivatives.size() != n) {
        throw std::invalid_argument("WaveFunction: derivative count mismatch");
    }
    WaveFunction w;
    w.kind_ = Kind::sampled;
    w.x0_ = x0;
    w.h_ = h;
    w.energy_ = energy;
    w.values_ = std::move(values);
    w.derivs_ = std::move(derivatives);
    return w;
}

WaveFunction WaveFunction::evolved(double t) const {
    WaveFunction w = *this;
    w.t_ = t;
    if (kind_ != Kind::sampled) {
        double dt = t - t_;
        for (auto& m : w.modes_)
            m.amplitude *= std::exp(cplx(0.0, -m.wavenumber * m.wavenumber * dt));
    }
    return w;
}

double WaveFunction::sample_end() const {
    return x0_ + h_ * static_cast<double>(values_.size() - 1);
}

cplx WaveFunction::phase() const {
    if (t_ == 0.0 || energy_ == 0.0) return cplx(1.0, 0.0);
    return std::exp(cplx(0.0, -energy_ * t_));
}

cplx WaveFunction::sum_value(double x) const {
    cplx s(0.0, 0.0);
    for (const auto& m : modes_) s += m.amplitude * std::exp(cplx(0.0, m.wavenumber * x));
    return s;
}

cplx WaveFunction::sum_derivative(double x) const {
    cplx s(0.0, 0.0);
    for (const auto& m : modes_)
        s += m.amplitude * cplx(0.0, m.wavenumber) * std::exp(cplx(0.0, m.wavenumber * x));
    return s;
}

cplx WaveFunction::operator()(double x) const {
    switch (kind_) {
        case Kind::confined:
            return x < 0.0 ? sum_value(x) : cplx(0.0, 0.0);
        case Kind::full_line:
            return sum_value(x);
        case Kind::sampled: {
            double s = (x - x0_) / h_;
            double n1 = static_cast<double>(values_.size() - 1);
            if (s < 0.0 || s > n1) return cplx(0.0, 0.0);
            std::size_t k = std::min(static_cast<std::size_t>(s), values_.size() - 2);
            double u = s - static_cast<double>(k);
            double u2 = u * u, u3 = u2 * u;
            double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
            double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
            cplx v = h00 * values_[k] + h10 * h_ * derivs_[k] + h01 * values_[k + 1] +
                     h11 * h_ * derivs_[k + 1];
            return v * phase();
        }
    }
    return {};
}

cplx WaveFunction::derivative(double x) const {
    switch (kind_) {
        case Kind::confined:
            return x < 0.0 ? sum_derivative(x) : cplx(0.0, 0.0);
        case Kind::full_line:
            return sum_derivative(x);
        case Kind::sampled: {
            double s = (x - x0_) / h_;
            double n1 = static_cast<double>(values_.size() - 1);
            if (s < 0.0 || s > n1) return cplx(0.0, 0.0);
            std::size_t k = std::min(static_cast<std::size_t>(s), values_.size() - 2);
            double u = s - static_cast<double>(k);
            double u2 = u * u;
            double d00 = 6 * u2 - 6 * u, d10 = 3 * u2 - 4 * u + 1;
            double d01 = -6 * u2 + 6 * u, d11 = 3 * u2 - 2 * u;
            cplx v = (d00 * values_[k] + d01 * values_[k + 1]) / h_ + d10 * derivs_[k] +
                     d11 * derivs_[k + 1];
            return v * phase();
        }
    }
    return {};
}

cplx WaveFunction::left_derivative_at_wall() const {
    if (kind_ == Kind::sampled) return derivative(-1e-300);
    return sum_derivative(0.0);
}

}  // namespace dqwall
