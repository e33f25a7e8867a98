#include "gravsurf/hilbert.hpp"

#include "gravsurf/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

std::mutex table_mutex;

// circle multiplier sgn(n) (0 on the mean): the spectral image of the
// (1/2)cot((b-a)/2) principal-value kernel under (1/(pi i)) \int
PeriodicComplexField signum_multiplier(const PeriodicComplexField& f) {
    auto coeffs = fft_forward(f.samples());
    const std::size_t n = coeffs.size();
    for (std::size_t k = 0; k < n; ++k) {
        const int m = fft_mode(k, n);
        if (m == 0)
            coeffs[k] = 0.0;
        else if (m < 0)
            coeffs[k] = -coeffs[k];
    }
    return PeriodicComplexField(fft_inverse(coeffs));
}

} // namespace

const std::vector<double>& half_cot_table(std::size_t n) {
    static std::map<std::size_t, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(table_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> t(n, 0.0);
    for (std::size_t m = 1; m < n; ++m)
        t[m] = 0.5 / std::tan(pi * static_cast<double>(m) / static_cast<double>(n));
    return cache.emplace(n, std::move(t)).first->second;
}

const std::vector<double>& csc2_table(std::size_t n) {
    static std::map<std::size_t, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(table_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> t(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        const double s = std::sin(pi * static_cast<double>(m) / static_cast<double>(n));
        t[m] = 1.0 / (s * s);
    }
    return cache.emplace(n, std::move(t)).first->second;
}

HilbertWorkspace::HilbertWorkspace(const ClosedCurve& c) : curve_(c) {
    const std::size_t n = c.size();
    const auto& z = c.z();
    const auto& za = c.z_alpha();
    const auto zaa = derivative(za);
    const auto& cot = half_cot_table(n);
    smooth_.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex* row = smooth_.data() + j * n;
        for (std::size_t l = 0; l < n; ++l) {
            if (l == j) {
                row[l] = zaa[j] / (2.0 * za[j]);
            } else {
                row[l] = za[l] / (z[l] - z[j]) - cot[(l + n - j) % n];
            }
        }
    }
}

PeriodicComplexField HilbertWorkspace::apply(const PeriodicComplexField& f) const {
    const std::size_t n = size();
    if (f.size() != n) throw std::invalid_argument("field/workspace size mismatch");
    PeriodicComplexField out = signum_multiplier(f);
    const double w = two_pi / static_cast<double>(n);
    const Complex inv_pi_i = 1.0 / Complex(0.0, pi);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex* row = smooth_.data() + j * n;
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < n; ++l) acc += row[l] * f[l];
        out[j] += inv_pi_i * (w * acc);
    }
    return out;
}

PeriodicComplexField HilbertWorkspace::apply_conj(const PeriodicComplexField& f) const {
    return conj(apply(conj(f)));
}

PeriodicComplexField curve_hilbert(const ClosedCurve& c, const PeriodicComplexField& f) {
    return HilbertWorkspace(c).apply(f);
}

PeriodicComplexField conj_hilbert(const ClosedCurve& c, const PeriodicComplexField& f) {
    return HilbertWorkspace(c).apply_conj(f);
}

PeriodicComplexField commutator(const HilbertWorkspace& ws,
                                const PeriodicComplexField& f,
                                const PeriodicComplexField& g) {
    return f * ws.apply(g) - ws.apply(f * g);
}

PeriodicComplexField commutator(const ClosedCurve& c,
                                const PeriodicComplexField& f,
                                const PeriodicComplexField& g) {
    return commutator(HilbertWorkspace(c), f, g);
}

PeriodicComplexField bracket_two(const HilbertWorkspace& ws,
                                 const PeriodicComplexField& f,
                                 const PeriodicComplexField& g) {
    const auto ga = derivative(g);
    const auto q = pointwise_quotient(ga, ws.curve().z_alpha());
    const auto qc = pointwise_quotient(ga, conj(ws.curve().z_alpha()));
    return f * (ws.apply(q) + ws.apply_conj(qc)) - ws.apply(f * q) - ws.apply_conj(f * qc);
}

PeriodicComplexField quad_kernel(const ClosedCurve& c,
                                 const PeriodicComplexField& vel,
                                 const PeriodicComplexField& f) {
    const std::size_t n = c.size();
    const auto table = difference_quotient_table(c, vel);
    const auto fb = derivative(f);
    const double w = two_pi / static_cast<double>(n);
    const Complex inv_pi_i = 1.0 / Complex(0.0, pi);
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex* row = table.data() + j * n;
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < n; ++l) acc += row[l] * row[l] * fb[l];
        out[j] = inv_pi_i * (w * acc);
    }
    return PeriodicComplexField(std::move(out));
}

PeriodicRealField csc_form(const PeriodicComplexField& f) {
    const std::size_t n = f.size();
    const auto& csc2 = csc2_table(n);
    const auto fa = derivative(f);
    const double w = two_pi / static_cast<double>(n);
    const double scale = 1.0 / (8.0 * pi);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 4.0 * std::norm(fa[j]); // diagonal limit
        for (std::size_t l = 0; l < n; ++l) {
            if (l == j) continue;
            acc += std::norm(f[l] - f[j]) * csc2[(l + n - j) % n];
        }
        out[j] = scale * w * acc;
    }
    return PeriodicRealField(std::move(out));
}

PeriodicComplexField g_forcing(const PeriodicComplexField& Z,
                               const PeriodicComplexField& Zt,
                               double omega0) {
    ClosedCurve c(Z);
    HilbertWorkspace ws(c);
    const auto zbar = conj(Z);
    auto g = (pi / 2.0) * (zbar + ws.apply(zbar));
    g -= Complex(0.0, 2.0 * omega0) * conj(Zt);
    return g;
}

PeriodicComplexField av_bracket(const HilbertWorkspace& ws, const PeriodicComplexField& f) {
    const auto& z = ws.curve().z();
    const auto q = pointwise_quotient(f, z);
    return Complex(0.5, 0.0) * (pointwise_product(z, ws.apply(q)) - ws.apply(f));
}

std::vector<double> k_matrix(const ClosedCurve& c) {
    const std::size_t n = c.size();
    HilbertWorkspace ws(c);
    const double w = two_pi / static_cast<double>(n);
    std::vector<double> k(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            k[j * n + l] = w * ws.smooth_kernel(j, l).imag() / pi;
    return k;
}

PeriodicRealField k_star_solve(const ClosedCurve& c, const PeriodicRealField& y) {
    const std::size_t n = c.size();
    if (y.size() != n) throw std::invalid_argument("field/curve size mismatch");
    const auto km = k_matrix(c);
    Eigen::MatrixXd a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            a(j, l) = km[l * n + j]; // transpose: adjoint of the real kernel
    a += Eigen::MatrixXd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12))
        throw SingularSystem("(I + K*) conditioning exceeds 1e12");
    Eigen::VectorXd rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs(j) = y[j];
    Eigen::VectorXd x = lu.solve(rhs);
    const double res = (a * x - rhs).lpNorm<Eigen::Infinity>();
    if (!(res <= 1e-10 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())))
        throw SingularSystem("(I + K*) solve residual above tolerance");
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = x(j);
    return PeriodicRealField(std::move(out));
}

EOperator candidate_e_operator() {
    return [](const HilbertWorkspace& ws, const PeriodicComplexField& f) {
        const auto& z = ws.curve().z();
        const auto& za = ws.curve().z_alpha();
        const auto q = pointwise_quotient(derivative(f), za);
        auto e = z * commutator(ws, f, q);
        e -= ws.apply(f) + ws.apply_conj(f);
        const Complex m = 2.0 * mean(f);
        for (std::size_t j = 0; j < e.size(); ++j) e[j] += m;
        return e;
    };
}

EOperator reflection_e_operator() {
    return [](const HilbertWorkspace& ws, const PeriodicComplexField& f) {
        const auto g = conj(f - ws.apply(f));
        auto e = f - ws.apply_conj(f);
        e -= g;
        e -= 0.5 * (g - ws.apply(g));
        return e;
    };
}

std::vector<Complex> difference_quotient_table(const ClosedCurve& c,
                                               const PeriodicComplexField& f) {
    const std::size_t n = c.size();
    if (f.size() != n) throw std::invalid_argument("field/curve size mismatch");
    const auto& z = c.z();
    const auto& za = c.z_alpha();
    const auto fa = derivative(f);
    std::vector<Complex> table(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex* row = table.data() + j * n;
        for (std::size_t l = 0; l < n; ++l)
            row[l] = (l == j) ? fa[j] / za[j] : (f[l] - f[j]) / (z[l] - z[j]);
    }
    return table;
}

PeriodicComplexField table_integrate(const std::vector<Complex>& table,
                                     const PeriodicComplexField& g) {
    const std::size_t n = g.size();
    const double w = two_pi / static_cast<double>(n);
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex* row = table.data() + j * n;
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < n; ++l) acc += row[l] * g[l];
        out[j] = w * acc;
    }
    return PeriodicComplexField(std::move(out));
}

} // namespace gravsurf
