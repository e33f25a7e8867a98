// field.hpp
// Uniform periodic grids on [0, 2pi): sample-space fields with a spectral view,
// Fourier multiplier operators, spectral differentiation, trapezoid quadrature,
// the unit-circle Hilbert transform, 2/3-rule dealiasing and trigonometric
// interpolation at off-grid points.
//
// Fields are immutable values in spirit: every operation returns a new field.
// Grid sizes are even and at least 16.
#pragma once

#include "gravsurf/fft.hpp"

#include <cstddef>
#include <vector>

namespace gravsurf {

class PeriodicRealField;

class PeriodicComplexField {
public:
    PeriodicComplexField() = default;
    explicit PeriodicComplexField(std::size_t n, Complex fill = {0.0, 0.0});
    explicit PeriodicComplexField(std::vector<Complex> samples);

    std::size_t size() const { return samples_.size(); }
    const Complex& operator[](std::size_t j) const { return samples_[j]; }
    Complex& operator[](std::size_t j) { return samples_[j]; }
    const std::vector<Complex>& samples() const { return samples_; }

    // grid point alpha_j = 2*pi*j/N
    double node(std::size_t j) const;

    PeriodicComplexField& operator+=(const PeriodicComplexField& rhs);
    PeriodicComplexField& operator-=(const PeriodicComplexField& rhs);
    PeriodicComplexField& operator*=(Complex c);

private:
    std::vector<Complex> samples_;
};

class PeriodicRealField {
public:
    PeriodicRealField() = default;
    explicit PeriodicRealField(std::size_t n, double fill = 0.0);
    explicit PeriodicRealField(std::vector<double> samples);

    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t j) const { return samples_[j]; }
    double& operator[](std::size_t j) { return samples_[j]; }
    const std::vector<double>& samples() const { return samples_; }
    double node(std::size_t j) const;

    PeriodicComplexField complexified() const;

private:
    std::vector<double> samples_;
};

// Diagonal operator in Fourier space: one complex factor per signed mode.
struct FourierMultiplier {
    // symbol[k] multiplies FFT bin k (mode fft_mode(k, N))
    std::vector<Complex> symbol;

    PeriodicComplexField apply(const PeriodicComplexField& f) const;

    static FourierMultiplier derivative(std::size_t n);
    static FourierMultiplier antiderivative(std::size_t n); // zero-mean inverse of derivative
    static FourierMultiplier circle_hilbert(std::size_t n); // +1 modes >= 0, -1 modes < 0
};

// arithmetic (pointwise; products of fields are dealiased by the 2/3 rule)
PeriodicComplexField operator+(PeriodicComplexField a, const PeriodicComplexField& b);
PeriodicComplexField operator-(PeriodicComplexField a, const PeriodicComplexField& b);
PeriodicComplexField operator*(Complex c, PeriodicComplexField a);
PeriodicComplexField operator*(const PeriodicComplexField& a, const PeriodicComplexField& b);
PeriodicComplexField operator-(PeriodicComplexField a);

// raw pointwise product / quotient, no dealiasing (quadrature integrands,
// pointwise-defined quantities)
PeriodicComplexField pointwise_product(const PeriodicComplexField& a, const PeriodicComplexField& b);
PeriodicComplexField pointwise_quotient(const PeriodicComplexField& a, const PeriodicComplexField& b);

PeriodicComplexField operator*(const PeriodicRealField& a, const PeriodicComplexField& b);
PeriodicRealField operator+(PeriodicRealField a, const PeriodicRealField& b);
PeriodicRealField operator-(PeriodicRealField a, const PeriodicRealField& b);
PeriodicRealField operator*(double c, PeriodicRealField a);
PeriodicRealField pointwise_quotient(const PeriodicRealField& a, const PeriodicRealField& b);

PeriodicComplexField conj(const PeriodicComplexField& f);
PeriodicRealField real_part(const PeriodicComplexField& f);
PeriodicRealField imag_part(const PeriodicComplexField& f);
PeriodicRealField abs2(const PeriodicComplexField& f); // |f|^2 pointwise

std::vector<Complex> spectrum(const PeriodicComplexField& f);
PeriodicComplexField from_spectrum(const std::vector<Complex>& coeffs);

PeriodicComplexField derivative(const PeriodicComplexField& f);
PeriodicComplexField antiderivative(const PeriodicComplexField& f);
PeriodicComplexField circle_hilbert(const PeriodicComplexField& f);
PeriodicRealField derivative(const PeriodicRealField& f);

Complex trapezoid_integral(const PeriodicComplexField& f); // (2pi/N) * sum
double trapezoid_integral(const PeriodicRealField& f);
Complex mean(const PeriodicComplexField& f);
double mean(const PeriodicRealField& f);

// zero modes |n| >= N/3 (and the -N/2 mode in particular)
PeriodicComplexField dealias(const PeriodicComplexField& f);

// energy in strictly negative modes, sqrt(sum_{n<0} |c_n|^2)
double negative_mode_energy(const PeriodicComplexField& f);
// keep only modes n >= 0 / n <= 0
PeriodicComplexField project_nonnegative_modes(const PeriodicComplexField& f);
PeriodicComplexField project_nonpositive_modes(const PeriodicComplexField& f);

double sup_norm(const PeriodicComplexField& f);
double sup_norm(const PeriodicRealField& f);

bool all_finite(const PeriodicComplexField& f);

// trigonometric interpolation (Nyquist mode split symmetrically so real
// fields stay real off-grid)
Complex eval_interpolant(const std::vector<Complex>& coeffs, double x);
PeriodicComplexField compose_samples(const PeriodicComplexField& f, const std::vector<double>& points);
double eval_interpolant_real(const std::vector<Complex>& coeffs, double x);

} // namespace gravsurf
