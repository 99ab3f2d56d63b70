#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "thetabidiff/io.hpp"
#include "thetabidiff/locus.hpp"

using namespace tb;
using namespace tbtest;

TEST_CASE("w jet symmetries and the frozen second derivative at tau = i") {
    CHECK(std::abs(w_jet(0.0, 1.0).w_x) < 1e-13);
    CHECK(std::abs(w_jet(0.0, 0.7).w_x) < 1e-13);

    const WJet a = w_jet(0.23, 1.3), b = w_jet(-0.23, 1.3);
    CHECK(std::abs(a.w - b.w) < 1e-13 * a.w);

    const WJet i = w_jet(0.0, 1.0, 1e-13);
    CHECK(i.w > 0);
    CHECK(i.w_xx == doctest::Approx(-0.2950851497540241).epsilon(1e-11));
    CHECK(i.w_xx < -0.1);
}

TEST_CASE("lattice bound certifies the tail") {
    const int m = w_lattice_bound(1.0, 1e-13);
    // One more shell changes nothing at the target accuracy.
    const WJet a = w_jet_bounded(0.3, 1.0, m);
    const WJet b = w_jet_bounded(0.3, 1.0, m + 2);
    CHECK(std::abs(a.w - b.w) < 1e-13);
    CHECK(std::abs(a.w_xx - b.w_xx) < 1e-12);
    CHECK_THROWS_AS(w_lattice_bound(-1.0, 1e-13), EpsilonTooSmall);
}

TEST_CASE("residuals at reference points") {
    CHECK(residuals(0.0, 1.0).res < 1e-9);
    CHECK(residuals(0.5, std::sqrt(3.0) / 2.0).res < 1e-9);
    CHECK(residuals(0.3, 1.1).res > 1e-3);
}

TEST_CASE("holomorphic residual is the Re/Im repackaging of (r1, r2)") {
    PointGen gen(59);
    for (int k = 0; k < 100; ++k) {
        const double x = gen.uniform(-0.5, 0.5);
        const double y = gen.uniform(0.5, 2.0);
        const LocusSample s = residuals(x, y);
        const Complex h = holomorphic_residual(x, y);
        CHECK(std::abs(h.real() - s.r2) < 1e-12 * (1.0 + std::abs(s.r2)));
        CHECK(std::abs(h.imag() - 2.0 * y * s.r1) < 1e-12 * (1.0 + std::abs(s.r1)));
    }
    CHECK(std::abs(holomorphic_residual(0.0, 1.0)) < 1e-9);
    CHECK(std::abs(holomorphic_residual(0.3, 1.1)) > 1e-3);
}

TEST_CASE("scan grids") {
    const auto tiny = scan(-0.1, 0.1, 0.9, 1.1, 2, 2);
    REQUIRE(tiny.size() == 4);
    for (const auto& s : tiny) CHECK_FALSE(s.failed);
    // Row-major, x fastest.
    CHECK(tiny[0].x == -0.1);
    CHECK(tiny[1].x == 0.1);
    CHECK(tiny[0].y == tiny[1].y);

    const auto grid = scan(-0.5, 0.5, 0.5, 1.5, 41, 41);
    std::size_t best = 0;
    double interior_best = 1e300;
    double interior_x = 0, interior_y = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k].res < grid[best].res) best = k;
        // The window boundary carries modular images of tau = i at
        // (+-1/2 + i/2)/1, which tie the global minimum; restrict the
        // locality claim to the interior strip.
        if (std::abs(grid[k].x) <= 0.2 && grid[k].res < interior_best) {
            interior_best = grid[k].res;
            interior_x = grid[k].x;
            interior_y = grid[k].y;
        }
    }
    CHECK(grid[best].res < 1e-12);
    CHECK(std::abs(interior_x) <= 0.025 + 1e-12);
    CHECK(std::abs(interior_y - 1.0) <= 0.025 + 1e-12);

    CHECK_THROWS_AS(scan(0, 1, -1.0, 1.0, 4, 4), NotSupported);
}

TEST_CASE("refine converges to the two known roots") {
    const RefineResult a = refine(0.05, 0.95);
    CHECK(a.sample.res < 1e-10);
    CHECK(std::abs(a.sample.x) < 1e-8);
    CHECK(std::abs(a.sample.y - 1.0) < 1e-8);

    const RefineResult b = refine(0.45, 0.9);
    CHECK(b.sample.res < 1e-10);
    CHECK(std::abs(b.sample.x - 0.5) < 1e-8);
    CHECK(std::abs(b.sample.y - std::sqrt(3.0) / 2.0) < 1e-8);
}

TEST_CASE("refine never claims convergence above the residual gate") {
    try {
        const RefineResult r = refine(0.3, 1.1, 1e-13, 5);
        CHECK(r.sample.res < 1e-10);  // found some other root
    } catch (const NoConvergence&) {
        // acceptable outcome per contract
    } catch (const SingularJacobian&) {
    }
    CHECK_THROWS_AS(refine(0.0, -1.0), NotSupported);
}

TEST_CASE("the imaginary axis reduces to a 1-D root of r2 at y = 1") {
    // r1(0, y) = 0 identically, so refinement started on the axis stays
    // near it and must reproduce y = 1.
    const RefineResult r = refine(0.0, 1.2);
    CHECK(std::abs(r.sample.x) < 1e-9);
    CHECK(std::abs(r.sample.y - 1.0) < 1e-8);
}
