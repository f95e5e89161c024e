#pragma once

#include <complex>
#include <vector>

namespace dqwall {

using cplx = std::complex<double>;

/// One plane-wave component a * exp(i k x).
struct Mode {
    cplx amplitude;
    double wavenumber;
};

/// Wavefunction of one position variable.
///
/// Closed-form kinds are finite sums of plane waves, either confined to x < 0
/// by a hard wall or extended over the whole line. The sampled kind holds
/// values (and optionally derivatives) on a uniform lattice and is evaluated
/// by cubic Hermite interpolation; it is zero outside the sampled range.
class WaveFunction {
public:
    enum class Kind { confined, full_line, sampled };

    /// theta(-x) (exp(i sqrt(E) x) - exp(-i sqrt(E) x)).
    static WaveFunction confined_eigenstate(double E);
    /// exp(i sqrt(E) x) - exp(-i sqrt(E) x) on the whole line.
    static WaveFunction full_line_eigenstate(double E);
    static WaveFunction confined_sum(std::vector<Mode> modes);
    static WaveFunction full_line_sum(std::vector<Mode> modes);
    /// Samples at x0 + k h. Derivatives are optional (empty = estimated).
    static WaveFunction sampled(double x0, double h, std::vector<cplx> values,
                                std::vector<cplx> derivatives = {}, double energy = 0.0);

    Kind kind() const { return kind_; }
    /// Energy of a single-energy state, 0 when not defined.
    double energy() const { return energy_; }
    double time() const { return t_; }
    const std::vector<Mode>& modes() const { return modes_; }

    /// Free evolution to time t (each plane wave picks up exp(-i k^2 t)).
    /// Sampled states carry their energy and pick up exp(-i E t).
    WaveFunction evolved(double t) const;

    cplx operator()(double x) const;
    cplx derivative(double x) const;
    /// Derivative at x = 0 from the left (the wall derivative for confined kinds).
    cplx left_derivative_at_wall() const;

    // Sampled kind only.
    double sample_start() const { return x0_; }
    double sample_step() const { return h_; }
    double sample_end() const;
    const std::vector<cplx>& sample_values() const { return values_; }

private:
    WaveFunction() = default;
    cplx sum_value(double x) const;
    cplx sum_derivative(double x) const;
    cplx phase() const;

    Kind kind_ = Kind::confined;
    double energy_ = 0.0;
    double t_ = 0.0;
    std::vector<Mode> modes_;
    double x0_ = 0.0, h_ = 0.0;
    std::vector<cplx> values_, derivs_;
};

}  // namespace dqwall
