#include "gravsurf/curve.hpp"

#include "gravsurf/errors.hpp"
#include "gravsurf/hilbert.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
constexpr double min_z_alpha = 1e-8;
} // namespace

ClosedCurve::ClosedCurve(PeriodicComplexField z)
    : z_(std::move(z)), z_alpha_(derivative(z_)) {
    const std::size_t n = z_.size();
    if (n < 16 || n % 2 != 0)
        throw CurveError("curve grid must be even with at least 16 samples");
    if (!all_finite(z_)) throw CurveError("curve samples must be finite");
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(z_alpha_[j]) < min_z_alpha)
            throw CurveError("degenerate parametrization: |z_alpha| below 1e-8");
        if (std::abs(z_[j]) < 1e-12)
            throw CurveError("curve passes through the origin");
    }
    // winding about 0 must be exactly one: every kernel downstream divides by
    // z(b) - z(a) or assumes the origin is interior
    const Complex w = trapezoid_integral(pointwise_quotient(z_alpha_, z_)) / Complex(0.0, two_pi);
    if (std::abs(w - 1.0) > 1e-6)
        throw CurveError("curve must wind once counterclockwise about the origin");
    if (area(*this) <= 0.0)
        throw CurveError("orientation error: enclosed area is not positive");
}

double area(const ClosedCurve& c) {
    return 0.5 * trapezoid_integral(imag_part(pointwise_product(conj(c.z()), c.z_alpha())));
}

PeriodicRealField epsilon(const ClosedCurve& c) {
    auto e = abs2(c.z());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] -= 1.0;
    return e;
}

ClosedCurve normalized_to_area_pi(const ClosedCurve& c) {
    const double s = std::sqrt(pi / area(c));
    auto z = c.z();
    z *= Complex(s, 0.0);
    return ClosedCurve(std::move(z));
}

PeriodicComplexField rotating_frame(const PeriodicComplexField& z, double t, double omega0) {
    auto out = z;
    out *= std::polar(1.0, omega0 * t);
    return out;
}

PeriodicComplexField rotating_frame_velocity(const PeriodicComplexField& z,
                                             const PeriodicComplexField& zt,
                                             double t, double omega0) {
    auto out = zt + Complex(0.0, omega0) * z;
    out *= std::polar(1.0, omega0 * t);
    return out;
}

Diffeo::Diffeo(PeriodicRealField offset) : offset_(std::move(offset)) {
    const auto u = offset_.complexified();
    offset_coeffs_ = fft_forward(u.samples());
    offset_deriv_coeffs_ = spectrum(derivative(u));
    double min_slope = 1e300;
    const auto slope = derivative(offset_);
    for (std::size_t j = 0; j < slope.size(); ++j)
        min_slope = std::min(min_slope, 1.0 + slope[j]);
    if (!(min_slope > 0.0))
        throw DegenerateParametrization("circle map is not strictly increasing");
}

Diffeo Diffeo::identity(std::size_t n) {
    return Diffeo(PeriodicRealField(n, 0.0));
}

double Diffeo::operator()(double alpha) const {
    return alpha + eval_interpolant_real(offset_coeffs_, alpha);
}

std::vector<double> Diffeo::grid_images() const {
    std::vector<double> pts(size());
    for (std::size_t j = 0; j < size(); ++j)
        pts[j] = offset_.node(j) + offset_[j];
    return pts;
}

Diffeo Diffeo::inverse() const {
    const std::size_t n = size();
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double target = offset_.node(j);
        double x = target - eval_interpolant_real(offset_coeffs_, target);
        for (int it = 0; it < 60; ++it) {
            const double f = x + eval_interpolant_real(offset_coeffs_, x) - target;
            const double fp = 1.0 + eval_interpolant_real(offset_deriv_coeffs_, x);
            const double dx = f / fp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        v[j] = x - target;
    }
    return Diffeo(PeriodicRealField(std::move(v)));
}

PeriodicComplexField compose(const PeriodicComplexField& f, const Diffeo& d) {
    return compose_samples(f, d.grid_images());
}

PeriodicRealField compose(const PeriodicRealField& f, const Diffeo& d) {
    return real_part(compose(f.complexified(), d));
}

PeriodicRealField angle_offset(const ClosedCurve& c) {
    const auto& z = c.z();
    const std::size_t n = z.size();
    std::vector<double> off(n);
    double theta = std::arg(z[0]);
    off[0] = theta;
    for (std::size_t j = 1; j < n; ++j) {
        theta += std::arg(z[j] / z[j - 1]);
        off[j] = theta - z.node(j);
    }
    return PeriodicRealField(std::move(off));
}

namespace {

// zero-mean harmonic conjugate on the circle (Nyquist dropped)
PeriodicRealField circle_conjugate(const PeriodicRealField& f) {
    auto coeffs = fft_forward(f.complexified().samples());
    const std::size_t n = coeffs.size();
    for (std::size_t k = 0; k < n; ++k) {
        const int m = fft_mode(k, n);
        if (m == 0 || k == n / 2)
            coeffs[k] = 0.0;
        else
            coeffs[k] *= Complex(0.0, m > 0 ? -1.0 : 1.0);
    }
    return real_part(PeriodicComplexField(fft_inverse(coeffs)));
}

} // namespace

Diffeo conformal_parametrization(const ClosedCurve& c, double tol, int max_iter) {
    const std::size_t n = c.size();
    const auto z_coeffs = fft_forward(c.z().samples());
    const auto theta_off = angle_offset(c);
    const auto theta_coeffs = fft_forward(theta_off.complexified().samples());
    const auto theta_deriv_coeffs = spectrum(derivative(theta_off.complexified()));

    auto theta_of = [&](double x) { return x + eval_interpolant_real(theta_coeffs, x); };
    auto theta_slope = [&](double x) { return 1.0 + eval_interpolant_real(theta_deriv_coeffs, x); };

    std::vector<double> v(n, 0.0);
    double prev_step = 1e300;
    double step = 1e300;
    for (int it = 0; it < max_iter; ++it) {
        // log-radius at the current correspondence
        std::vector<double> rho(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = two_pi * static_cast<double>(j) / static_cast<double>(n) + v[j];
            rho[j] = std::log(std::abs(eval_interpolant(z_coeffs, x)));
        }
        const auto psi = circle_conjugate(PeriodicRealField(std::move(rho)));

        // invert the angle function pointwise toward alpha' + psi
        std::vector<double> vnew(n);
        step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ap = two_pi * static_cast<double>(j) / static_cast<double>(n);
            const double target = ap + psi[j];
            double x = ap + v[j];
            for (int nit = 0; nit < 60; ++nit) {
                const double dx = (theta_of(x) - target) / theta_slope(x);
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            vnew[j] = x - ap;
            step = std::max(step, std::abs(vnew[j] - v[j]));
        }
        const double relax = (step > prev_step) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < n; ++j) v[j] += relax * (vnew[j] - v[j]);
        prev_step = step;
        if (step < tol) break;
    }

    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j)
        pts[j] = two_pi * static_cast<double>(j) / static_cast<double>(n) + v[j];
    const auto Z = compose_samples(c.z(), pts);
    const double residual = negative_mode_energy(Z) + std::abs(mean(Z));
    if (!(residual <= 1e-10 * std::max(1.0, sup_norm(Z))))
        throw NonConvergence("conformal parametrization did not converge", residual);

    return Diffeo(PeriodicRealField(std::move(v))).inverse();
}

PeriodicComplexField log_conj_z_e_ik(const ClosedCurve& c, const Diffeo& k) {
    const auto& z = c.z();
    const std::size_t n = z.size();
    const auto theta_off = angle_offset(c);
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = Complex(std::log(std::abs(z[j])), k.offset()[j] - theta_off[j]);
    return PeriodicComplexField(std::move(out));
}

double k_residual(const ClosedCurve& c, const Diffeo& k) {
    HilbertWorkspace ws(c);
    const auto L = log_conj_z_e_ik(c, k);
    return sup_norm(L - ws.apply(L));
}

Diffeo solve_k(const ClosedCurve& c, double tol, int max_iter) {
    const std::size_t n = c.size();
    HilbertWorkspace ws(c);
    const auto theta_off = angle_offset(c);

    // dense H = circulant circle part + smooth remainder
    std::vector<Complex> sgn(n);
    for (std::size_t kk = 0; kk < n; ++kk) {
        const int m = fft_mode(kk, n);
        sgn[kk] = (m == 0) ? 0.0 : (m > 0 ? 1.0 : -1.0);
    }
    const auto gamma = fft_inverse(sgn); // times 1/N below
    const double w = two_pi / static_cast<double>(n);
    const Complex inv_pi_i = 1.0 / Complex(0.0, pi);
    Eigen::MatrixXd hr(n, n), hi(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            Complex h = gamma[(j + n - l) % n] / static_cast<double>(n);
            h += inv_pi_i * w * ws.smooth_kernel(j, l);
            hr(j, l) = h.real();
            hi(j, l) = h.imag();
        }
    }

    // rho + i sigma must be fixed by H; affine in sigma, solved by least
    // squares with a mean pin appended (the F(0) normalization is applied
    // as a constant shift afterwards)
    std::vector<double> sigma(n, 0.0);
    auto residual_field = [&](const std::vector<double>& s) {
        std::vector<Complex> L(n);
        for (std::size_t j = 0; j < n; ++j)
            L[j] = Complex(std::log(std::abs(c.z()[j])), s[j]);
        PeriodicComplexField Lf(std::move(L));
        return Lf - ws.apply(Lf);
    };

    double res = 1e300;
    for (int it = 0; it < max_iter; ++it) {
        const auto r = residual_field(sigma);
        res = sup_norm(r);
        if (res <= tol) break;
        Eigen::MatrixXd a(2 * n + 1, n);
        Eigen::VectorXd b(2 * n + 1);
        // d/dsigma of Re (I-H)(i sigma) = Hi, of Im part = I - Hr
        a.topRows(n) = hi;
        a.middleRows(n, n) = Eigen::MatrixXd::Identity(n, n) - hr;
        double smean = 0.0;
        for (std::size_t j = 0; j < n; ++j) smean += sigma[j];
        smean /= static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            a(2 * n, j) = 1.0 / static_cast<double>(n);
            b(j) = -r[j].real();
            b(n + j) = -r[j].imag();
        }
        b(2 * n) = -smean;
        Eigen::VectorXd ds = a.colPivHouseholderQr().solve(b);
        for (std::size_t j = 0; j < n; ++j) sigma[j] += ds(j);
    }
    if (!(res <= tol)) throw NonConvergence("k solve did not reach tolerance", res);

    // F(0) in R_+ pins the additive constant: the holomorphic extension of
    // log(conj(z) e^{ik}) must have real Cauchy value at the origin
    Complex cauchy0{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const Complex L(std::log(std::abs(c.z()[j])), sigma[j]);
        cauchy0 += L * c.z_alpha()[j] / c.z()[j];
    }
    cauchy0 *= w / Complex(0.0, two_pi);
    const double shift = -cauchy0.imag();

    std::vector<double> off(n);
    for (std::size_t j = 0; j < n; ++j) off[j] = theta_off[j] + sigma[j] + shift;
    return Diffeo(PeriodicRealField(std::move(off)));
}

} // namespace gravsurf
