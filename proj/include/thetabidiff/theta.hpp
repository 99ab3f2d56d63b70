#pragma once

#include <complex>

#include "thetabidiff/siegel.hpp"

namespace tb {

// Default absolute truncation targets.
inline constexpr double kDefaultEpsValue = 1e-13;
inline constexpr double kDefaultEpsJet = 1e-11;
inline constexpr int kDefaultLatticeCap = 200;

// Value, z-gradient and z-Hessian of a theta-type function at a point.
// The Hessian is computed once per unordered pair and mirrored, so it is
// symmetric exactly as stored.
struct ThetaJet {
    Complex value{};
    CVector gradient;
    CMatrix hessian;
};

// Certified lattice truncation: summing over integer m with
// ||m - center|| <= radius (Euclidean) leaves a tail below `bound` for
// the value and all derivatives up to the planned order. The tail is
// measured relative to the Gaussian envelope scale
// e^{pi <Im z, (Im tau)^{-1} Im z>} (the natural magnitude of the
// series), which makes the radius invariant under lattice translates of
// z; for moderate arguments this coincides with an absolute bound.
struct TruncationPlan {
    Eigen::VectorXi center;
    double radius = 0;
    double bound = 0;
};

TruncationPlan truncation_radius(const PeriodMatrix& tau, const CVector& z,
                                 double eps, int order,
                                 int cap = kDefaultLatticeCap);

// theta(z; tau) = sum_m exp(pi*i*<m, tau*m + 2z>), with termwise
// derivatives: gradient factor 2*pi*i*m_i, Hessian factor
// (2*pi*i)^2 m_i m_j. One pass over the truncation lattice.
ThetaJet theta_jet(const CVector& z, const PeriodMatrix& tau,
                   double eps = kDefaultEpsJet);

// theta[zeta](z) = sum_m exp(pi*i*<m+a, tau*(m+a) + 2(z+b)>).
ThetaJet theta_char_jet(const Characteristic& c, const CVector& z,
                        const PeriodMatrix& tau, double eps = kDefaultEpsJet);

// s_zeta(z) = theta(z - zeta) * theta(z + zeta), jet assembled by the
// Leibniz rule from two theta_jet calls.
ThetaJet s_zeta_jet(const Characteristic& c, const CVector& z,
                    const PeriodMatrix& tau, double eps = kDefaultEpsJet);

// c(zeta) = -exp(2*pi*i*<a, tau*a + 2b>), defined for any characteristic.
Complex c_zeta(const Characteristic& c, const PeriodMatrix& tau);

// exp(2*pi*i*<a, tau*a>); agrees with c_zeta on odd half-integer
// characteristics. Throws NotOdd otherwise.
Complex c_odd(const Characteristic& c, const PeriodMatrix& tau);

namespace detail {

// Shared engine: sum over m of exp(pi*i*<m+shift, Q*(m+shift) + 2*zarg>)
// where Q is symmetric with positive definite imaginary part. Both the
// first-order theta (Q = tau) and the second-order series (Q = 2*tau,
// zarg = 2z) reduce to this form. Gradient/Hessian are with respect to
// zarg. Accumulation order is fixed (lexicographic box scan), so results
// are reproducible.
ThetaJet lattice_jet(const CMatrix& Q, double lambda_min, const RMatrix& im_inv,
                     const RVector& shift, const CVector& zarg, double eps,
                     int order, int cap);

TruncationPlan plan(int g, double lambda_min, const RMatrix& im_inv,
                    const RVector& shift, const RVector& im_zarg, double eps,
                    int order, int cap);

} // namespace detail

} // namespace tb
