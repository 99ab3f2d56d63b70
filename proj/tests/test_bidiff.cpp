#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "thetabidiff/bidiff.hpp"
#include "thetabidiff/io.hpp"

using namespace tb;
using namespace tbtest;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("s_w jet at 0 against the independent s_zeta path") {
    PointGen gen(43);
    for (int g = 1; g <= 2; ++g) {
        const PeriodMatrix tau = gen.random_tau(g);
        const CVector w = gen.random_z(g, 0.4);
        const SwJet0 jet = s_w_jet0(w, tau, 1e-12);
        const Characteristic c = characteristic_from_point(w, tau);
        const ThetaJet sz = s_zeta_jet(c, CVector::Zero(g), tau, 1e-12);
        CHECK(rel(jet.f0, sz.value) < 1e-11);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                CHECK(std::abs(jet.fij(i, j) - sz.hessian(i, j)) /
                          (jet.fij.cwiseAbs().maxCoeff() + 1.0) <
                      1e-11);
    }
}

TEST_CASE("s_w degenerate cases") {
    const PeriodMatrix tau = tau_g1({0.3, 1.1});
    const Characteristic odd = Characteristic::from_rational({1}, 2, {1}, 2);
    CHECK(std::abs(s_w_jet0(odd.zeta(tau), tau).f0) < 1e-11);

    const SwJet0 at0 = s_w_jet0(CVector::Zero(1), tau);
    const ThetaJet t0 = theta_jet(CVector::Zero(1), tau);
    CHECK(rel(at0.fij(0, 0), 2.0 * t0.value * t0.hessian(0, 0)) < 1e-11);
}

TEST_CASE("pullback coefficients: linearity and the rank-1 form for s_zeta") {
    PointGen gen(47);
    const PeriodMatrix tau = gen.random_tau(2);
    const int n = 4;

    CVector f = gen.random_z(n, 1.0), h = gen.random_z(n, 1.0);
    const Complex alpha{0.3, -0.8}, beta{-1.1, 0.4};
    const PullbackCoefficients pf = pullback_coefficients(f, tau);
    const PullbackCoefficients ph = pullback_coefficients(h, tau);
    const PullbackCoefficients pc =
        pullback_coefficients((alpha * f + beta * h).eval(), tau);
    CHECK(std::abs(pc.omega_coeff - (alpha * pf.omega_coeff + beta * ph.omega_coeff)) <
          1e-10);
    CHECK((pc.holo_matrix - (alpha * pf.holo_matrix + beta * ph.holo_matrix))
              .cwiseAbs()
              .maxCoeff() < 1e-9);

    // f = s_zeta for odd zeta: omega coefficient 0, holomorphic part rank 1.
    for (const Characteristic& zeta : odd_characteristics(2)) {
        const PullbackCoefficients p =
            pullback_coefficients(zeta.zeta(tau), tau, true);
        CHECK(std::abs(p.omega_coeff) < 1e-9);
        const CVector grad = omega_zeta_coeffs(zeta, tau);
        const Complex c = c_zeta(zeta, tau);
        double scale = 0, worst = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const Complex expect = grad[i] * grad[j] / c;
                scale = std::max(scale, std::abs(expect));
                worst = std::max(worst, std::abs(p.holo_matrix(i, j) - expect));
            }
        CHECK(worst / (scale + 1e-30) < 1e-9);
    }
}

TEST_CASE("omega_zeta requires the theta divisor") {
    const PeriodMatrix tau = tau_g1(kImagUnit);
    RVector a(1), b(1);
    a[0] = 0.0;
    b[0] = 0.1;  // zeta = 0.1, |theta(0.1; i)| > 0.5
    CHECK_THROWS_AS(omega_zeta_coeffs(Characteristic(a, b), tau),
                    NotOnThetaDivisor);

    const Characteristic odd = Characteristic::from_rational({1}, 2, {1}, 2);
    CHECK(omega_zeta_coeffs(odd, tau).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("sigma and eta special values") {
    CHECK(std::abs(sigma_correction(tau_g1(kImagUnit)).entries(0, 0) - Complex{-kPi}) <
          1e-8);
    const double im_hex = kTauHex.imag();
    CHECK(std::abs(sigma_correction(tau_g1(kTauHex)).entries(0, 0) -
                   Complex{-kPi / im_hex}) < 1e-8);

    CHECK(std::abs(eta_correction(tau_g1(kImagUnit)).entries(0, 0) - Complex{-kPi}) <
          1e-14);
    // Depends on Im tau only.
    CHECK(std::abs(eta_correction(tau_g1({0.37, 1.0})).entries(0, 0) -
                   Complex{-kPi}) < 1e-14);

    CMatrix d(2, 2);
    d << Complex{0, 1}, Complex{0, 0}, Complex{0, 0}, Complex{0, 2};
    const CMatrix e = eta_correction(PeriodMatrix(d)).entries;
    CHECK(std::abs(e(0, 0) - Complex{-kPi}) < 1e-13);
    CHECK(std::abs(e(1, 1) - Complex{-kPi / 2.0}) < 1e-13);
    CHECK(std::abs(e(0, 1)) < 1e-13);
}

TEST_CASE("coincidence residual at the three reference points") {
    CHECK(coincidence_residual(tau_g1(kImagUnit)) < 1e-8);
    CHECK(coincidence_residual(tau_g1(kTauHex)) < 1e-8);
    CHECK(coincidence_residual(tau_g1({0.3, 1.1})) > 1e-3);
}

TEST_CASE("v00 kernel dimensions 0, 0, 1 for g = 1, 2, 3") {
    PointGen gen(53);
    const int expected[4] = {0, 0, 0, 1};
    for (int g = 1; g <= 3; ++g)
        for (int k = 0; k < 5; ++k) {
            const PeriodMatrix tau = gen.random_tau(g);
            CHECK(v00_kernel_dimension(tau) == expected[g]);
            const RVector sv = v00_singular_values(tau);
            CHECK(sv.size() == 1 + g * (g + 1) / 2);
        }
}
