#pragma once

#include "thetabidiff/sot.hpp"

namespace tb {

// Coefficients of the pullback of a section f: the scalar f(0)
// multiplying the canonical bidifferential (carried symbolically) and the
// symmetric matrix (1/2) f_ij(0) multiplying the holomorphic basis forms.
struct PullbackCoefficients {
    Complex omega_coeff{};
    CMatrix holo_matrix;
};

enum class CorrectionKind { Sigma, Eta, Difference };

// Symmetric g x g coefficient matrix of the holomorphic part of a
// bidifferential correction. The eta kind is -pi*(Im tau)^{-1}, real
// symmetric negative definite.
struct CorrectionMatrix {
    CMatrix entries;
    CorrectionKind kind;
};

// f(0) and Hess f(0) for f = s_w, from a single theta_jet at w:
//   f(0) = theta(w)^2,  f_ij(0) = 2 theta(w) theta_ij(w) - 2 theta_i(w) theta_j(w).
struct SwJet0 {
    Complex f0{};
    CMatrix fij;
};
SwJet0 s_w_jet0(const CVector& w, const PeriodMatrix& tau,
                double eps = kDefaultEpsJet);

// Section input: dense coefficient vector over the fixed lexicographic
// theta_u order.
PullbackCoefficients pullback_coefficients(const CVector& sot_coeffs,
                                           const PeriodMatrix& tau,
                                           double eps = kDefaultEpsJet);
// Section input: the point w, meaning f = s_w.
PullbackCoefficients pullback_coefficients(const CVector& w,
                                           const PeriodMatrix& tau,
                                           bool as_s_w,
                                           double eps = kDefaultEpsJet);

// Gradient of theta[zeta] at 0, as coefficients in the omega_i basis.
// Requires zeta numerically on the theta divisor; throws
// NotOnThetaDivisor otherwise.
CVector omega_zeta_coeffs(const Characteristic& c, const PeriodMatrix& tau,
                          double eps = kDefaultEpsJet);

// S_ij = (1 / (2 sum_u |theta_u(0)|^2)) sum_u conj(theta_u(0)) *
//        d^2 theta_u / dz_i dz_j (0), assembled over all 2^g indices.
// For g >= 2 this matrix represents the sigma correction only when tau is
// a curve period matrix; the formula itself is a function of tau alone.
CorrectionMatrix sigma_correction(const PeriodMatrix& tau,
                                  double eps = kDefaultEpsJet);

// -pi * (Im tau)^{-1}.
CorrectionMatrix eta_correction(const PeriodMatrix& tau);

// Max-norm of sigma_correction - eta_correction; vanishes exactly on the
// coincidence locus.
double coincidence_residual(const PeriodMatrix& tau,
                            double eps = kDefaultEpsJet);

// 2^g minus the numerical rank of the 2^g x (1 + g(g+1)/2) matrix with
// row u = (theta_u(0), {theta_u,ij(0)}_{i<=j}).
int v00_kernel_dimension(const PeriodMatrix& tau, double eps = kDefaultEpsJet,
                         double rank_tol = 1e-8);

// Singular values of the same matrix (for reporting).
RVector v00_singular_values(const PeriodMatrix& tau,
                            double eps = kDefaultEpsJet);

} // namespace tb
