#pragma once

#include "thetabidiff/theta.hpp"

namespace tb {

// Representative u of (2^{-1}Z/Z)^g with entries in {0, 1/2}. The
// enumeration order is lexicographic and fixed: index bit k (from the
// most significant) selects u_k.
struct SecondOrderIndex {
    RVector u;

    static SecondOrderIndex from_index(int g, int index);
};

std::vector<SecondOrderIndex> second_order_indices(int g);

// Jet of theta_u at z = 0. tau_deriv uses the upper-triangle
// parametrization of symmetric tau: d/dtau_ij moves tau_ij and tau_ji
// together, giving the termwise factor 2*pi*i*(2 - delta_ij)*n_i*n_j.
// With that convention the heat identity reads
//   hessian0_ij = (8*pi*i / (2 - delta_ij)) * tau_deriv_ij.
struct SotJet0 {
    Complex value0{};
    CMatrix hessian0;
    CMatrix tau_deriv;
};

// theta_u(z) = sum_xi exp(2*pi*i*(xi+u)^t tau (xi+u) + 4*pi*i*(xi+u)^t z).
Complex sot_value(const SecondOrderIndex& u, const CVector& z,
                  const PeriodMatrix& tau, double eps = kDefaultEpsValue);

SotJet0 sot_jet0(const SecondOrderIndex& u, const PeriodMatrix& tau,
                 double eps = kDefaultEpsJet);

// Quadrature oracle for the orthogonality of the theta_u at g = 1:
// integral over the fundamental parallelogram {s + t*tau} of
// theta_u * conj(theta_v) * exp(-4*pi*(Im z)^2 / Im tau), N x N periodic
// trapezoid rule. Throws NotSupported for g > 1.
Complex inner_product_g1(const SecondOrderIndex& u, const SecondOrderIndex& v,
                         const PeriodMatrix& tau, int n,
                         double eps = kDefaultEpsValue);

} // namespace tb
