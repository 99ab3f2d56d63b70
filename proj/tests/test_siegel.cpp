#include <doctest.h>

#include "helpers.hpp"
#include "thetabidiff/io.hpp"

using namespace tb;
using namespace tbtest;

TEST_CASE("period matrix validation") {
    CMatrix m(2, 2);
    m << Complex{0.1, 1.0}, Complex{0.2, 0.3}, Complex{0.2, 0.3}, Complex{-0.1, 1.2};
    const PeriodMatrix tau(m);
    CHECK(tau.g() == 2);
    CHECK((tau.entries() - tau.entries().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(tau.lambda_min() > 0);
    CHECK((tau.im_inverse() * tau.im() - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-12);

    CMatrix asym = m;
    asym(0, 1) += 1e-6;
    CHECK_THROWS_AS(PeriodMatrix{asym}, NotSymmetric);

    CMatrix bad = m;
    bad(0, 0) = Complex{0.1, -1.0};
    CHECK_THROWS_AS(PeriodMatrix{bad}, NotPositiveDefinite);
}

TEST_CASE("small asymmetry is averaged away") {
    CMatrix m(2, 2);
    m << Complex{0.0, 1.0}, Complex{0.1, 0.2}, Complex{0.1 + 1e-15, 0.2},
        Complex{0.0, 1.5};
    const PeriodMatrix tau(m);
    CHECK(tau.entries()(0, 1) == tau.entries()(1, 0));
}

TEST_CASE("characteristic parity from exact rationals") {
    const auto odd1 = Characteristic::from_rational({1}, 2, {1}, 2);
    CHECK(odd1.half_integer());
    CHECK(odd1.odd());
    const auto even1 = Characteristic::from_rational({1}, 2, {0}, 2);
    CHECK(even1.parity() == Parity::Even);
    const auto third = Characteristic::from_rational({1}, 3, {1}, 2);
    CHECK_FALSE(third.half_integer());
    CHECK_THROWS_AS(parity(third), NotHalfInteger);

    // Float construction never claims a parity.
    RVector a(1), b(1);
    a[0] = 0.5;
    b[0] = 0.5;
    const Characteristic f(a, b);
    CHECK_FALSE(f.half_integer());
    CHECK_THROWS_AS(parity(f), NotHalfInteger);
}

TEST_CASE("odd characteristic counts are 2^(g-1)(2^g - 1)") {
    CHECK(half_integer_characteristics(1).size() == 4);
    CHECK(odd_characteristics(1).size() == 1);
    CHECK(odd_characteristics(2).size() == 6);
    CHECK(odd_characteristics(3).size() == 28);
}

TEST_CASE("zeta decomposition round trip") {
    PointGen gen(11);
    for (int g = 1; g <= 3; ++g) {
        const PeriodMatrix tau = gen.random_tau(g);
        RVector a(g), b(g);
        for (int i = 0; i < g; ++i) {
            a[i] = gen.uniform(-1.0, 1.0);
            b[i] = gen.uniform(-1.0, 1.0);
        }
        const Characteristic c(a, b);
        const Characteristic back = characteristic_from_point(c.zeta(tau), tau);
        CHECK((back.a() - a).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((back.b() - b).cwiseAbs().maxCoeff() < 1e-12);
    }
}
