// hilbert.hpp
// The Hilbert transform H of a closed curve and the operator family built
// from it: conjugated transform, K = Re H and its adjoint, commutators
// [f, H]g, the two-sided bracket, smooth quadratic kernels, the csc^2
// quadratic form, the Riemann-frame forcing G, and the pluggable operator E.
//
// Convention: H fixes boundary values of functions holomorphic inside the
// curve (in particular H1 = 1) and H^2 = I. The kernel is split into the
// circle multiplier part (handled spectrally) plus a smooth remainder
// integrated by trapezoid with Taylor diagonal values.
#pragma once

#include "gravsurf/curve.hpp"

#include <functional>
#include <memory>

namespace gravsurf {

// Precomputed pairwise kernel table for one curve; reuse it when applying H
// repeatedly on the same geometry.
class HilbertWorkspace {
public:
    explicit HilbertWorkspace(const ClosedCurve& c);

    const ClosedCurve& curve() const { return curve_; }
    std::size_t size() const { return curve_.size(); }

    PeriodicComplexField apply(const PeriodicComplexField& f) const;       // H f
    PeriodicComplexField apply_conj(const PeriodicComplexField& f) const;  // conj(H conj(f))

    // smooth remainder kernel value K_sm(j, l)
    Complex smooth_kernel(std::size_t j, std::size_t l) const {
        return smooth_[j * curve_.size() + l];
    }

private:
    ClosedCurve curve_;
    std::vector<Complex> smooth_; // z_beta/(z(beta)-z(alpha)) - (1/2)cot((beta-alpha)/2)
};

PeriodicComplexField curve_hilbert(const ClosedCurve& c, const PeriodicComplexField& f);
PeriodicComplexField conj_hilbert(const ClosedCurve& c, const PeriodicComplexField& f);

// [f, H]g = f * Hg - H(f g)
PeriodicComplexField commutator(const HilbertWorkspace& ws,
                                const PeriodicComplexField& f,
                                const PeriodicComplexField& g);
PeriodicComplexField commutator(const ClosedCurve& c,
                                const PeriodicComplexField& f,
                                const PeriodicComplexField& g);

// [f, H(1/z_a) + Hbar(1/conj(z_a))] d_alpha g, expanded as
// f (H(g_a/z_a) + Hbar(g_a/conj(z_a))) - H(f g_a/z_a) - Hbar(f g_a/conj(z_a))
PeriodicComplexField bracket_two(const HilbertWorkspace& ws,
                                 const PeriodicComplexField& f,
                                 const PeriodicComplexField& g);

// (1/(pi i)) \int ((vel(b)-vel(a))/(z(b)-z(a)))^2 f_b(b) db, smooth kernel,
// diagonal (vel_a/z_a)^2 f_a
PeriodicComplexField quad_kernel(const ClosedCurve& c,
                                 const PeriodicComplexField& vel,
                                 const PeriodicComplexField& f);

// S(f)(a) = (1/8pi) \int |f(b)-f(a)|^2 csc^2((b-a)/2) db  (nonnegative)
PeriodicRealField csc_form(const PeriodicComplexField& f);

// G = (pi/2)(I + H_Z) conj(Z) - 2 i w0 conj(Zt), computed on the unit-circle
// grid using reparametrization invariance of the curve transform.
PeriodicComplexField g_forcing(const PeriodicComplexField& Z,
                               const PeriodicComplexField& Zt,
                               double omega0);

// AV(f) = (1/2)[z, H](f/z)
PeriodicComplexField av_bracket(const HilbertWorkspace& ws, const PeriodicComplexField& f);

// dense matrix of K = Re H acting on real fields (smooth kernel; includes
// trapezoid weights), row-major n x n
std::vector<double> k_matrix(const ClosedCurve& c);

// solve (I + K*) x = y, K* the adjoint of K in the unweighted inner product
// on [0, 2pi]; residual certified, SingularSystem when conditioning > 1e12
PeriodicRealField k_star_solve(const ClosedCurve& c, const PeriodicRealField& y);

// pluggable quadratic remainder operator E
using EOperator = std::function<PeriodicComplexField(const HilbertWorkspace&,
                                                     const PeriodicComplexField&)>;

// candidate reconstruction: E(f) = z [f, H](f_a/z_a) - (H + Hbar) f + 2 mean(f);
// accepted only through the validation identity in the identities module
EOperator candidate_e_operator();

// conjugation-defect operator
//   E(f) = (I - Hbar) f - conj((I - H) f) - (1/2)(I - H) conj((I - H) f);
// vanishes identically on real fields up to the last term, reduces to
// (I - Hbar) z on the curve position, and satisfies the validation identity
// exactly. This is the accepted default.
EOperator reflection_e_operator();

// pairwise difference-quotient table Q(j,l) = (f_l - f_j)/(z_l - z_j) with
// Taylor diagonal f_a/z_a; building block of the smooth quadratic kernels
std::vector<Complex> difference_quotient_table(const ClosedCurve& c,
                                               const PeriodicComplexField& f);

// row-sum trapezoid of a pairwise table against samples g: for each j,
// (2pi/N) sum_l T(j,l) g_l
PeriodicComplexField table_integrate(const std::vector<Complex>& table,
                                     const PeriodicComplexField& g);

// cached grid tables
const std::vector<double>& half_cot_table(std::size_t n); // (1/2)cot(pi m / N), entry 0 = 0
const std::vector<double>& csc2_table(std::size_t n);     // csc^2(pi m / N), entry 0 = 0

} // namespace gravsurf
