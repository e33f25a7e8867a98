// gravity.hpp
// Direct evaluation of the self-gravity field grad(phi) with
// Delta phi = 2 pi inside the fluid domain (complex identification
// d1 phi + i d2 phi), and the cross-check of its boundary reduction
// to -(pi/2)(I - Hbar) z.
#pragma once

#include "gravsurf/curve.hpp"

namespace gravsurf {

struct GravityField {
    std::vector<Complex> points;
    std::vector<Complex> values; // d1 phi + i d2 phi
};

// 2D quadrature of grad phi(x) = iint_Omega (x - y)/|x - y|^2 dy.
// Interior points: polar decomposition about x, radial integral exact,
// angular by trapezoid. Exterior points: tensor-grid quadrature.
// Throws PointOnBoundary for points closer to the curve than the grid scale.
GravityField grad_phi_oracle(const ClosedCurve& c, const std::vector<Complex>& points);

// reduced boundary acceleration -(pi/2)(I - Hbar) z
PeriodicComplexField boundary_gravity(const ClosedCurve& c);

// sup-norm discrepancy between the reduced boundary term and the interior
// limit of the oracle field (Richardson extrapolation along inward normals
// at offsets {4d, 2d, d}, d = 4 * (2 pi / N))
double reduction_check(const ClosedCurve& c, std::size_t probe_stride = 8);

} // namespace gravsurf
