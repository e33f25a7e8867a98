#include "gravsurf/gravity.hpp"

#include "gravsurf/errors.hpp"
#include "gravsurf/hilbert.hpp"

#include <cmath>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

struct RefinedCurve {
    std::vector<Complex> z, za;
    double weight; // 2 pi / M
};

RefinedCurve refine(const ClosedCurve& c, std::size_t m) {
    RefinedCurve r;
    r.z.resize(m);
    r.za.resize(m);
    r.weight = two_pi / static_cast<double>(m);
    const auto zc = fft_forward(c.z().samples());
    const auto zac = fft_forward(c.z_alpha().samples());
    for (std::size_t j = 0; j < m; ++j) {
        const double a = two_pi * static_cast<double>(j) / static_cast<double>(m);
        r.z[j] = eval_interpolant(zc, a);
        r.za[j] = eval_interpolant(zac, a);
    }
    return r;
}

// Gauss-Legendre nodes/weights on [0, 1]
void gauss_legendre_01(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = std::cos(pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[n - 1 - i] = 0.5 * (1.0 + t);
        w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

double winding_about(const RefinedCurve& r, Complex x) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < r.z.size(); ++j) acc += r.za[j] / (r.z[j] - x);
    return (acc * r.weight / Complex(0.0, two_pi)).real();
}

// interior field: polar decomposition about x with the radial integral done
// exactly; the angular integral becomes a trapezoid in the curve parameter,
// grad phi(x) = -\int (z - x) Im[z_a / (z - x)] da
Complex interior_field(const RefinedCurve& r, Complex x) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < r.z.size(); ++j) {
        const Complex d = r.z[j] - x;
        acc += d * (r.za[j] / d).imag();
    }
    return -acc * r.weight;
}

// exterior field: tensor-grid quadrature over the domain fanned out from the
// centroid; the kernel conj(1/(x - y)) is smooth for x outside
Complex exterior_field(const RefinedCurve& r, Complex x, Complex centroid,
                       const std::vector<double>& gx, const std::vector<double>& gw) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < r.z.size(); ++j) {
        const Complex spoke = r.z[j] - centroid;
        const double jac_a = (std::conj(spoke) * r.za[j]).imag();
        Complex inner{0.0, 0.0};
        for (std::size_t q = 0; q < gx.size(); ++q) {
            const Complex y = centroid + gx[q] * spoke;
            inner += gw[q] * gx[q] / std::conj(x - y);
        }
        acc += inner * jac_a;
    }
    return acc * r.weight;
}

} // namespace

GravityField grad_phi_oracle(const ClosedCurve& c, const std::vector<Complex>& points) {
    const std::size_t m = std::max<std::size_t>(4 * c.size(), 1024);
    const RefinedCurve r = refine(c, m);

    const Complex centroid = mean(c.z());
    std::vector<double> gx, gw;
    gauss_legendre_01(48, gx, gw);

    const double grid_tol = two_pi / static_cast<double>(c.size());

    GravityField out;
    out.points = points;
    out.values.resize(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        const Complex x = points[p];
        double min_sep = 1e300;
        for (std::size_t j = 0; j < r.z.size(); ++j)
            min_sep = std::min(min_sep, std::abs(r.z[j] - x));
        if (min_sep < 0.25 * grid_tol)
            throw PointOnBoundary("evaluation point within grid tolerance of the boundary");
        const double wind = winding_about(r, x);
        out.values[p] = (wind > 0.5) ? interior_field(r, x)
                                     : exterior_field(r, x, centroid, gx, gw);
    }
    return out;
}

PeriodicComplexField boundary_gravity(const ClosedCurve& c) {
    const auto& z = c.z();
    return (-pi / 2.0) * (z - conj_hilbert(c, z));
}

double reduction_check(const ClosedCurve& c, std::size_t probe_stride) {
    const std::size_t n = c.size();
    const double d = 4.0 * two_pi / static_cast<double>(n);
    const auto reduced = boundary_gravity(c);

    std::vector<Complex> pts;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; j += probe_stride) {
        const Complex inward = Complex(0.0, 1.0) * c.z_alpha()[j] / std::abs(c.z_alpha()[j]);
        pts.push_back(c.z()[j] + d * inward);
        pts.push_back(c.z()[j] + 2.0 * d * inward);
        pts.push_back(c.z()[j] + 4.0 * d * inward);
        idx.push_back(j);
    }
    const auto field = grad_phi_oracle(c, pts);

    double worst = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Complex f1 = field.values[3 * k];
        const Complex f2 = field.values[3 * k + 1];
        const Complex f4 = field.values[3 * k + 2];
        // quadratic extrapolation to the boundary through {d, 2d, 4d}
        const Complex limit = (8.0 / 3.0) * f1 - 2.0 * f2 + (1.0 / 3.0) * f4;
        worst = std::max(worst, std::abs(reduced[idx[k]] - (-limit)));
    }
    return worst;
}

} // namespace gravsurf
