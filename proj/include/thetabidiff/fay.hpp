#pragma once

#include "thetabidiff/theta.hpp"

namespace tb {

// Genus-1 trisecant configuration. All points live on the universal
// cover C; nothing is reduced mod the lattice. zeta defaults to the
// unique odd half-integer characteristic a = b = 1/2.
struct TrisecantConfig {
    Complex w{};
    Complex z1{}, z2{}, a1{}, a2{};
};

// The lifted Abel difference at genus 1 is literally x - y (normalized
// differential dz on C / (Z + tau Z)).
Complex abel_difference_g1(Complex x, Complex y);

struct TrisecantSides {
    Complex A{};
    Complex B{};
    // |A - B| / (|A| + |B| + 1)
    double residual() const;
};

// A = alpha(z) alpha(a2,a1) beta(z1,a1) beta(z2,a2)
// B = theta(w) gamma(z) beta(z1,a2) beta(z2,a1)
//     + alpha(z1,a1) alpha(a2,z2) beta(z) beta(a)
// with alpha(x,y) = theta(w + x - y), beta(x,y) = theta[zeta](x - y),
// gamma(x,y) = theta(w + (x - y) - (a1 - a2)).
TrisecantSides trisecant_sides(const TrisecantConfig& cfg, const PeriodMatrix& tau,
                               double eps = kDefaultEpsValue);

// Scalar coefficient of the canonical bidifferential at genus 1:
// -(d^2/du^2 log theta[zeta])(u) at u = z1 - z2, from the exact jet.
// Throws OnDiagonal when z1 - z2 is within 1e-6 of the lattice.
Complex omega_g1(Complex z1, Complex z2, const PeriodMatrix& tau,
                 double eps = kDefaultEpsJet);

struct PeriodCheck {
    Complex a_period{};
    Complex b_period{};
};

// Integrates omega_g1(p, .) along an a-cycle segment [t, t+1] and a
// b-cycle segment [t, t+tau], with the base point t chosen to keep the
// path away from the pole lattice p + Z + tau*Z. Expected values are 0
// and 2*pi*i.
PeriodCheck period_check(const PeriodMatrix& tau, Complex p,
                         double eps = kDefaultEpsJet, int n_quad = 64);

struct A12B12Result {
    double res_a = 0;  // FD A_12 vs s_w(a1-a2) * theta[zeta]'(0)^2
    double res_b = 0;  // FD B_12 vs theta[zeta](a1-a2)^2 * (s_w(0)*Omega + s_w''(0)/2)
};

A12B12Result a12_b12_check(Complex w, Complex a1, Complex a2,
                           const PeriodMatrix& tau,
                           double eps = kDefaultEpsValue, double h = 1e-4);

} // namespace tb
