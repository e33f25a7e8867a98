#include "gravsurf/field.hpp"

#include "gravsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("field size mismatch");
}

void require_grid(std::size_t n) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("periodic grids must be even with at least 16 samples");
}
} // namespace

PeriodicComplexField::PeriodicComplexField(std::size_t n, Complex fill)
    : samples_(n, fill) {
    require_grid(n);
}

PeriodicComplexField::PeriodicComplexField(std::vector<Complex> samples)
    : samples_(std::move(samples)) {
    require_grid(samples_.size());
}

double PeriodicComplexField::node(std::size_t j) const {
    return two_pi * static_cast<double>(j) / static_cast<double>(size());
}

PeriodicComplexField& PeriodicComplexField::operator+=(const PeriodicComplexField& rhs) {
    require_same_size(size(), rhs.size());
    for (std::size_t j = 0; j < size(); ++j) samples_[j] += rhs[j];
    return *this;
}

PeriodicComplexField& PeriodicComplexField::operator-=(const PeriodicComplexField& rhs) {
    require_same_size(size(), rhs.size());
    for (std::size_t j = 0; j < size(); ++j) samples_[j] -= rhs[j];
    return *this;
}

PeriodicComplexField& PeriodicComplexField::operator*=(Complex c) {
    for (auto& s : samples_) s *= c;
    return *this;
}

PeriodicRealField::PeriodicRealField(std::size_t n, double fill)
    : samples_(n, fill) {
    require_grid(n);
}

PeriodicRealField::PeriodicRealField(std::vector<double> samples)
    : samples_(std::move(samples)) {
    require_grid(samples_.size());
}

double PeriodicRealField::node(std::size_t j) const {
    return two_pi * static_cast<double>(j) / static_cast<double>(size());
}

PeriodicComplexField PeriodicRealField::complexified() const {
    std::vector<Complex> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = Complex(samples_[j], 0.0);
    return PeriodicComplexField(std::move(out));
}

PeriodicComplexField FourierMultiplier::apply(const PeriodicComplexField& f) const {
    auto coeffs = fft_forward(f.samples());
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= symbol[k];
    return PeriodicComplexField(fft_inverse(coeffs));
}

FourierMultiplier FourierMultiplier::derivative(std::size_t n) {
    FourierMultiplier m;
    m.symbol.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        m.symbol[k] = Complex(0.0, static_cast<double>(fft_mode(k, n)));
    return m;
}

FourierMultiplier FourierMultiplier::antiderivative(std::size_t n) {
    FourierMultiplier m;
    m.symbol.resize(n);
    m.symbol[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k)
        m.symbol[k] = 1.0 / Complex(0.0, static_cast<double>(fft_mode(k, n)));
    return m;
}

FourierMultiplier FourierMultiplier::circle_hilbert(std::size_t n) {
    FourierMultiplier m;
    m.symbol.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        m.symbol[k] = (fft_mode(k, n) >= 0) ? 1.0 : -1.0;
    return m;
}

PeriodicComplexField operator+(PeriodicComplexField a, const PeriodicComplexField& b) {
    a += b;
    return a;
}

PeriodicComplexField operator-(PeriodicComplexField a, const PeriodicComplexField& b) {
    a -= b;
    return a;
}

PeriodicComplexField operator*(Complex c, PeriodicComplexField a) {
    a *= c;
    return a;
}

PeriodicComplexField operator*(const PeriodicComplexField& a, const PeriodicComplexField& b) {
    return dealias(pointwise_product(a, b));
}

PeriodicComplexField operator-(PeriodicComplexField a) {
    a *= Complex(-1.0, 0.0);
    return a;
}

PeriodicComplexField pointwise_product(const PeriodicComplexField& a, const PeriodicComplexField& b) {
    require_same_size(a.size(), b.size());
    std::vector<Complex> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return PeriodicComplexField(std::move(out));
}

PeriodicComplexField pointwise_quotient(const PeriodicComplexField& a, const PeriodicComplexField& b) {
    require_same_size(a.size(), b.size());
    std::vector<Complex> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] / b[j];
    return PeriodicComplexField(std::move(out));
}

PeriodicComplexField operator*(const PeriodicRealField& a, const PeriodicComplexField& b) {
    require_same_size(a.size(), b.size());
    std::vector<Complex> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return dealias(PeriodicComplexField(std::move(out)));
}

PeriodicRealField operator+(PeriodicRealField a, const PeriodicRealField& b) {
    require_same_size(a.size(), b.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    return a;
}

PeriodicRealField operator-(PeriodicRealField a, const PeriodicRealField& b) {
    require_same_size(a.size(), b.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
    return a;
}

PeriodicRealField operator*(double c, PeriodicRealField a) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= c;
    return a;
}

PeriodicRealField pointwise_quotient(const PeriodicRealField& a, const PeriodicRealField& b) {
    require_same_size(a.size(), b.size());
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] / b[j];
    return PeriodicRealField(std::move(out));
}

PeriodicComplexField conj(const PeriodicComplexField& f) {
    std::vector<Complex> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = std::conj(f[j]);
    return PeriodicComplexField(std::move(out));
}

PeriodicRealField real_part(const PeriodicComplexField& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j].real();
    return PeriodicRealField(std::move(out));
}

PeriodicRealField imag_part(const PeriodicComplexField& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j].imag();
    return PeriodicRealField(std::move(out));
}

PeriodicRealField abs2(const PeriodicComplexField& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = std::norm(f[j]);
    return PeriodicRealField(std::move(out));
}

std::vector<Complex> spectrum(const PeriodicComplexField& f) {
    return fft_forward(f.samples());
}

PeriodicComplexField from_spectrum(const std::vector<Complex>& coeffs) {
    return PeriodicComplexField(fft_inverse(coeffs));
}

PeriodicComplexField derivative(const PeriodicComplexField& f) {
    return FourierMultiplier::derivative(f.size()).apply(f);
}

PeriodicComplexField antiderivative(const PeriodicComplexField& f) {
    return FourierMultiplier::antiderivative(f.size()).apply(f);
}

PeriodicComplexField circle_hilbert(const PeriodicComplexField& f) {
    return FourierMultiplier::circle_hilbert(f.size()).apply(f);
}

PeriodicRealField derivative(const PeriodicRealField& f) {
    return real_part(derivative(f.complexified()));
}

Complex trapezoid_integral(const PeriodicComplexField& f) {
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) sum += f[j];
    return sum * (two_pi / static_cast<double>(f.size()));
}

double trapezoid_integral(const PeriodicRealField& f) {
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) sum += f[j];
    return sum * (two_pi / static_cast<double>(f.size()));
}

Complex mean(const PeriodicComplexField& f) {
    return trapezoid_integral(f) / two_pi;
}

double mean(const PeriodicRealField& f) {
    return trapezoid_integral(f) / two_pi;
}

PeriodicComplexField dealias(const PeriodicComplexField& f) {
    auto coeffs = fft_forward(f.samples());
    const std::size_t n = coeffs.size();
    const int cutoff = static_cast<int>(n) / 3;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(fft_mode(k, n)) >= cutoff) coeffs[k] = 0.0;
    }
    return PeriodicComplexField(fft_inverse(coeffs));
}

double negative_mode_energy(const PeriodicComplexField& f) {
    auto coeffs = fft_forward(f.samples());
    double e = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (fft_mode(k, coeffs.size()) < 0) e += std::norm(coeffs[k]);
    }
    return std::sqrt(e);
}

PeriodicComplexField project_nonnegative_modes(const PeriodicComplexField& f) {
    auto coeffs = fft_forward(f.samples());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (fft_mode(k, coeffs.size()) < 0) coeffs[k] = 0.0;
    }
    return PeriodicComplexField(fft_inverse(coeffs));
}

PeriodicComplexField project_nonpositive_modes(const PeriodicComplexField& f) {
    auto coeffs = fft_forward(f.samples());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (fft_mode(k, coeffs.size()) > 0) coeffs[k] = 0.0;
    }
    return PeriodicComplexField(fft_inverse(coeffs));
}

double sup_norm(const PeriodicComplexField& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j]));
    return m;
}

double sup_norm(const PeriodicRealField& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j]));
    return m;
}

bool all_finite(const PeriodicComplexField& f) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!std::isfinite(f[j].real()) || !std::isfinite(f[j].imag())) return false;
    }
    return true;
}

Complex eval_interpolant(const std::vector<Complex>& coeffs, double x) {
    const std::size_t n = coeffs.size();
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const int m = fft_mode(k, n);
        if (k == n / 2) {
            // split the Nyquist coefficient into +-N/2 halves
            const double half = static_cast<double>(n) / 2.0;
            acc += coeffs[k] * 0.5 *
                   (std::polar(1.0, half * x) + std::polar(1.0, -half * x));
        } else {
            acc += coeffs[k] * std::polar(1.0, static_cast<double>(m) * x);
        }
    }
    return acc;
}

PeriodicComplexField compose_samples(const PeriodicComplexField& f, const std::vector<double>& points) {
    const auto coeffs = fft_forward(f.samples());
    std::vector<Complex> out(points.size());
    for (std::size_t j = 0; j < points.size(); ++j)
        out[j] = eval_interpolant(coeffs, points[j]);
    return PeriodicComplexField(std::move(out));
}

double eval_interpolant_real(const std::vector<Complex>& coeffs, double x) {
    return eval_interpolant(coeffs, x).real();
}

} // namespace gravsurf
