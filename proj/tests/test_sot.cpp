#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "thetabidiff/io.hpp"
#include "thetabidiff/locus.hpp"
#include "thetabidiff/sot.hpp"

using namespace tb;
using namespace tbtest;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}

TEST_CASE("index enumeration is lexicographic, most significant first") {
    const auto u = second_order_indices(2);
    REQUIRE(u.size() == 4);
    CHECK(u[0].u[0] == 0.0);
    CHECK(u[0].u[1] == 0.0);
    CHECK(u[1].u[0] == 0.0);
    CHECK(u[1].u[1] == 0.5);
    CHECK(u[2].u[0] == 0.5);
    CHECK(u[2].u[1] == 0.0);
    CHECK(u[3].u[0] == 0.5);
    CHECK(u[3].u[1] == 0.5);
}

TEST_CASE("theta_u(0; i) against the direct sum") {
    const PeriodMatrix tau = tau_g1(kImagUnit);
    const auto u = second_order_indices(1);
    const Complex v = sot_value(u[0], vec1(0.0), tau, 1e-13);
    double direct = 0;
    for (int m = -6; m <= 6; ++m) direct += std::exp(-2.0 * kPi * m * m);
    CHECK(v.real() == doctest::Approx(1.0037348854877393).epsilon(1e-12));
    CHECK(std::abs(v - direct) < 1e-13);
}

TEST_CASE("theta_u is even") {
    PointGen gen(29);
    for (int g = 1; g <= 2; ++g) {
        const PeriodMatrix tau = gen.random_tau(g);
        const CVector z = gen.random_z(g, 0.3);
        for (const auto& u : second_order_indices(g))
            CHECK(rel(sot_value(u, z, tau), sot_value(u, (-z).eval(), tau)) < 1e-11);
    }
}

TEST_CASE("weighted modulus is invariant under lattice shifts") {
    PointGen gen(31);
    const PeriodMatrix tau = gen.random_tau(1);
    const Complex t = tau.entries()(0, 0);
    const CVector z = gen.random_z(1, 0.3);
    auto weighted = [&](const SecondOrderIndex& u, Complex p) {
        const double imz = p.imag();
        return std::norm(sot_value(u, vec1(p), tau)) *
               std::exp(-4.0 * kPi * imz * imz / t.imag());
    };
    for (const auto& u : second_order_indices(1)) {
        const double base = weighted(u, z[0]);
        CHECK(std::abs(weighted(u, z[0] + 1.0) - base) / base < 1e-10);
        CHECK(std::abs(weighted(u, z[0] + t) - base) / base < 1e-10);
    }
}

TEST_CASE("heat identity, termwise and against tau finite differences") {
    PointGen gen(37);
    for (int g = 1; g <= 3; ++g) {
        const PeriodMatrix tau = gen.random_tau(g);
        for (const auto& u : second_order_indices(g)) {
            const SotJet0 jet = sot_jet0(u, tau, 1e-12);
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j) {
                    const double coef = (i == j) ? 1.0 : 2.0;
                    CHECK(rel(jet.hessian0(i, j),
                              (8.0 * kPi * kI / coef) * jet.tau_deriv(i, j)) < 1e-12);
                }
            const int i = 0, j = g - 1;
            const double h = 1e-5;
            CMatrix tp = tau.entries(), tm = tau.entries();
            tp(i, j) += h;
            tm(i, j) -= h;
            if (i != j) {
                tp(j, i) += h;
                tm(j, i) -= h;
            }
            const CVector zero = CVector::Zero(g);
            const Complex fd =
                (sot_value(u, zero, PeriodMatrix(tp)) -
                 sot_value(u, zero, PeriodMatrix(tm))) /
                (2.0 * h);
            CHECK(std::abs(fd - jet.tau_deriv(i, j)) /
                      (std::abs(jet.tau_deriv(i, j)) + 1.0) <
                  1e-6);
        }
    }
}

TEST_CASE("genus-1 inner products: orthogonality and equal norms") {
    const auto u = second_order_indices(1);
    {
        const PeriodMatrix tau = tau_g1(kImagUnit);
        const Complex g00 = inner_product_g1(u[0], u[0], tau, 64);
        const Complex g01 = inner_product_g1(u[0], u[1], tau, 64);
        CHECK(g00.real() > 0);
        CHECK(std::abs(g00.imag()) < 1e-10 * g00.real());
        CHECK(std::abs(g01) / g00.real() < 1e-8);
    }
    {
        const PeriodMatrix tau = tau_g1({0.3, 1.1});
        const Complex g00 = inner_product_g1(u[0], u[0], tau, 64);
        const Complex g11 = inner_product_g1(u[1], u[1], tau, 64);
        CHECK(std::abs(g00 / g11 - 1.0) < 1e-8);
    }
    CMatrix m2(2, 2);
    m2 << Complex{0, 1}, Complex{0, 0.2}, Complex{0, 0.2}, Complex{0, 1.3};
    CHECK_THROWS_AS(inner_product_g1(u[0], u[0], PeriodMatrix(m2), 16),
                    NotSupported);
}

TEST_CASE("level-2 values at 0 reproduce the real lattice sum w") {
    PointGen gen(41);
    const auto u = second_order_indices(1);
    for (int k = 0; k < 10; ++k) {
        const double x = gen.uniform(-0.5, 0.5);
        const double y = gen.uniform(0.6, 2.0);
        const PeriodMatrix tau = tau_g1({x, y});
        const CVector zero = CVector::Zero(1);
        const double sum = std::norm(sot_value(u[0], zero, tau)) +
                           std::norm(sot_value(u[1], zero, tau));
        const double w = w_jet(x, y, 1e-13).w;
        CHECK(std::abs(sum - w) / w < 1e-11);
    }
}
