// curve.hpp
// Closed-curve representation and the coordinate machinery built on it:
// area and the area-pi normalization, the radial deviation eps = |z|^2 - 1,
// the rotating frame, circle diffeomorphisms, the conformal boundary
// correspondence h (Theodorsen iteration) and the coordinate change k.
#pragma once

#include "gravsurf/field.hpp"

namespace gravsurf {

// Simple closed counterclockwise curve z(alpha) winding once about the
// origin. Construction rejects degenerate inputs: min |z_alpha| < 1e-8,
// winding != 1, clockwise orientation, non-finite samples.
class ClosedCurve {
public:
    explicit ClosedCurve(PeriodicComplexField z);

    std::size_t size() const { return z_.size(); }
    const PeriodicComplexField& z() const { return z_; }
    const PeriodicComplexField& z_alpha() const { return z_alpha_; }
    bool counterclockwise() const { return true; }

private:
    PeriodicComplexField z_;
    PeriodicComplexField z_alpha_;
};

// (1/2) Im \oint conj(z) z_alpha dalpha; positive for counterclockwise curves.
double area(const ClosedCurve& c);

// |z|^2 - 1, identical in the rotating frame since |e^{i w0 t}| = 1.
PeriodicRealField epsilon(const ClosedCurve& c);

// scale to enclosed area pi
ClosedCurve normalized_to_area_pi(const ClosedCurve& c);

// rotating frame: position e^{i w0 t} z and companion velocity
// e^{i w0 t} (z_t + i w0 z)
PeriodicComplexField rotating_frame(const PeriodicComplexField& z, double t, double omega0);
PeriodicComplexField rotating_frame_velocity(const PeriodicComplexField& z,
                                             const PeriodicComplexField& zt,
                                             double t, double omega0);

// Strictly increasing circle map alpha -> alpha + u(alpha), u periodic.
class Diffeo {
public:
    explicit Diffeo(PeriodicRealField offset);
    static Diffeo identity(std::size_t n);

    std::size_t size() const { return offset_.size(); }
    const PeriodicRealField& offset() const { return offset_; }
    double operator()(double alpha) const;    // alpha + u(alpha), interpolated
    std::vector<double> grid_images() const;  // alpha_j + u_j
    Diffeo inverse() const;

private:
    PeriodicRealField offset_;
    std::vector<Complex> offset_coeffs_;
    std::vector<Complex> offset_deriv_coeffs_;
};

// f composed with the map (evaluate the interpolant of f at d(alpha_j))
PeriodicComplexField compose(const PeriodicComplexField& f, const Diffeo& d);
PeriodicRealField compose(const PeriodicRealField& f, const Diffeo& d);

// unwrapped polar angle of the curve, arg z = alpha + periodic part;
// returned as the periodic part
PeriodicRealField angle_offset(const ClosedCurve& c);

// Boundary correspondence h of the Riemann map Phi: Omega -> D normalized by
// Phi(0) = 0, Phi'(0) > 0, i.e. e^{i h(alpha)} = Phi(z(alpha)). The curve
// reparametrized by h^{-1} has vanishing negative Fourier modes. Converges in
// the near-circle regime; throws NonConvergence otherwise.
Diffeo conformal_parametrization(const ClosedCurve& c,
                                 double tol = 1e-12, int max_iter = 500);

// The coordinate change k solving (I - H)(log(conj(z) e^{ik})) = 0 with the
// additive constant fixed by mean(k - arg z) = 0 (boundary value of a
// holomorphic F with F(0) real positive). Residual certified <= tol.
Diffeo solve_k(const ClosedCurve& c, double tol = 1e-10, int max_iter = 20);

// sup norm of (I - H) log(conj(z) e^{ik}) for a candidate k
double k_residual(const ClosedCurve& c, const Diffeo& k);

// boundary value log(conj(z) e^{ik}) = log|z| + i(k - arg z)
PeriodicComplexField log_conj_z_e_ik(const ClosedCurve& c, const Diffeo& k);

} // namespace gravsurf
