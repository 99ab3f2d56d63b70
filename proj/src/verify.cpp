#include "thetabidiff/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "thetabidiff/bidiff.hpp"
#include "thetabidiff/fay.hpp"
#include "thetabidiff/locus.hpp"

namespace tb {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

PeriodMatrix tau_g1(Complex t) {
    CMatrix m(1, 1);
    m(0, 0) = t;
    return PeriodMatrix(m);
}

const Complex kHex{0.5, std::sqrt(3.0) / 2.0};

double rel_gap(Complex lhs, Complex rhs) {
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

struct Runner {
    VerifyReport& report;
    const RunConfig& cfg;

    void upper(const std::string& name, const std::string& identity,
               double measured, double tol) {
        report.checks.push_back({name, identity, measured, tol, measured < tol});
    }
    void lower(const std::string& name, const std::string& identity,
               double measured, double threshold) {
        report.checks.push_back({name, identity, measured, threshold,
                                 measured > threshold});
    }
};

void check_special_points(Runner& r) {
    const double res_i = coincidence_residual(tau_g1(kI), r.cfg.eps_jet);
    const double res_hex = coincidence_residual(tau_g1(kHex), r.cfg.eps_jet);
    r.upper("coincidence.tau_i", "sigma = eta at the square lattice point",
            res_i, 1e-8);
    r.upper("coincidence.tau_hex", "sigma = eta at the hexagonal lattice point",
            res_hex, 1e-8);
    const double loc = std::max(residuals(0.0, 1.0).res,
                                residuals(0.5, std::sqrt(3.0) / 2.0).res);
    r.upper("locus.special_points", "w_x = 0 = 2y w_y + w at both special points",
            loc, 1e-9);
}

void check_generic_noncoincidence(Runner& r) {
    r.lower("coincidence.generic_point", "sigma != eta at tau = 0.3 + 1.1i",
            coincidence_residual(tau_g1({0.3, 1.1}), r.cfg.eps_jet), 1e-3);
    PointGen gen(r.cfg.seed + 1);
    int hits = 0;
    for (int k = 0; k < 100; ++k) {
        const Complex t{gen.uniform(-0.5, 0.5), gen.uniform(0.6, 2.0)};
        if (coincidence_residual(tau_g1(t), r.cfg.eps_jet) > 1e-3) ++hits;
    }
    r.lower("coincidence.random_window",
            "sigma != eta at >= 95 of 100 seeded tau", hits, 94.5);
}

void check_w_sign(Runner& r) {
    const WJet j = w_jet(0.0, 1.0, r.cfg.eps_value);
    r.upper("locus.wx_zero", "w_x vanishes at tau = i", std::abs(j.w_x), 1e-12);
    r.lower("locus.wxx_negative", "|w_xx(i)| exceeds 0.1 with w_xx < 0",
            (j.w_xx < 0) ? -j.w_xx : 0.0, 0.1);
    // Independent direct sum, |m|,|n| <= 8.
    double direct = 0;
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n)
            direct -= std::pow(2.0 * kPi * m * n, 2) *
                      std::exp(-kPi * (m * m + n * n));
    r.upper("locus.wxx_direct_sum", "w_xx matches the direct lattice sum",
            std::abs(j.w_xx - direct), 1e-10);
}

void check_v00(Runner& r) {
    PointGen gen(r.cfg.seed + 2);
    int mismatches = 0;
    const int expected[4] = {0, 0, 0, 1};
    for (int g = 1; g <= 3; ++g)
        for (int k = 0; k < 5; ++k) {
            const PeriodMatrix tau = gen.random_tau(g);
            if (v00_kernel_dimension(tau, r.cfg.eps_jet) != expected[g]) ++mismatches;
        }
    r.upper("bidiff.v00_dimension", "kernel dimension 2^g - g(g+1)/2 - 1",
            mismatches, 0.5);
}

void check_trisecant(Runner& r) {
    PointGen gen(r.cfg.seed + 3);
    double worst = 0;
    for (const Complex t : {Complex{0, 1}, Complex{0.3, 1.1}, kHex}) {
        const PeriodMatrix tau = tau_g1(t);
        for (int k = 0; k < 100; ++k) {
            TrisecantConfig c;
            c.w = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
            c.z1 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
            c.z2 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
            c.a1 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
            c.a2 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
            worst = std::max(worst, trisecant_sides(c, tau, r.cfg.eps_value).residual());
        }
    }
    r.upper("fay.trisecant", "trisecant identity over 300 seeded configs",
            worst, 1e-9);

    PointGen gen2(r.cfg.seed + 4);
    double worst_fd = 0;
    for (int k = 0; k < 3; ++k) {
        const Complex w = gen2.complex_in(-0.4, 0.4, -0.3, 0.3);
        const Complex a1 = gen2.complex_in(-0.4, 0.4, -0.3, 0.3);
        const Complex a2 = a1 + gen2.complex_in(0.2, 0.5, 0.1, 0.3);
        const A12B12Result res = a12_b12_check(w, a1, a2, tau_g1(kI), r.cfg.eps_value);
        worst_fd = std::max({worst_fd, res.res_a, res.res_b});
    }
    r.upper("fay.a12_b12", "second-derivative reduction of the trisecant identity",
            worst_fd, 1e-5);
}

void check_gunning(Runner& r) {
    PointGen gen(r.cfg.seed + 5);
    double worst = 0;
    for (int g = 1; g <= 2; ++g)
        for (int k = 0; k < 5; ++k) {
            const PeriodMatrix tau = gen.random_tau(g);
            for (const Characteristic& zeta : odd_characteristics(g)) {
                const Complex c = c_zeta(zeta, tau);
                const CVector grad = omega_zeta_coeffs(zeta, tau, r.cfg.eps_jet);
                const ThetaJet sz = s_zeta_jet(zeta, CVector::Zero(g), tau, r.cfg.eps_jet);
                double scale = 0, gap = 0;
                for (int i = 0; i < g; ++i)
                    for (int j = 0; j < g; ++j) {
                        const Complex lhs = 2.0 * grad[i] * grad[j];
                        scale = std::max(scale, std::abs(lhs));
                        gap = std::max(gap, std::abs(lhs - c * sz.hessian(i, j)));
                    }
                worst = std::max(worst, gap / (scale + 1e-30));
            }
        }
    r.upper("bidiff.gunning",
            "2 grad theta[zeta] outer product = c(zeta) Hess s_zeta(0)", worst, 1e-9);
}

void check_heat(Runner& r) {
    PointGen gen(r.cfg.seed + 6);
    double worst_termwise = 0, worst_fd = 0;
    for (int g = 1; g <= 3; ++g) {
        const PeriodMatrix tau = gen.random_tau(g);
        for (const auto& u : second_order_indices(g)) {
            const SotJet0 jet = sot_jet0(u, tau, r.cfg.eps_jet);
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j) {
                    const double coef = (i == j) ? 1.0 : 2.0;
                    const Complex lhs = jet.hessian0(i, j);
                    const Complex rhs = (8.0 * kPi * kI / coef) * jet.tau_deriv(i, j);
                    worst_termwise = std::max(
                        worst_termwise,
                        std::abs(lhs - rhs) / (std::abs(lhs) + 1e-30));
                }
            // FD in tau_ij cross-check (moves ij and ji together).
            const double h = 1e-5;
            const int i = 0, j = g - 1;
            CMatrix tp = tau.entries(), tm = tau.entries();
            tp(i, j) += h;
            tm(i, j) -= h;
            if (i != j) {
                tp(j, i) += h;
                tm(j, i) -= h;
            }
            const CVector zero = CVector::Zero(g);
            const Complex fd = (sot_value(u, zero, PeriodMatrix(tp), r.cfg.eps_value) -
                                sot_value(u, zero, PeriodMatrix(tm), r.cfg.eps_value)) /
                               (2.0 * h);
            worst_fd = std::max(worst_fd, std::abs(fd - jet.tau_deriv(i, j)) /
                                              (std::abs(jet.tau_deriv(i, j)) + 1.0));
        }
    }
    r.upper("sot.heat_termwise", "Hessian vs tau-derivative of theta_u, termwise",
            worst_termwise, 1e-12);
    r.upper("sot.heat_fd", "tau-derivative vs central finite difference",
            worst_fd, 1e-6);
}

void check_gram(Runner& r, int n_quad, int n_tau) {
    PointGen gen(r.cfg.seed + 7);
    double worst_off = 0, worst_diag = 0;
    const auto u = second_order_indices(1);
    for (int k = 0; k < n_tau; ++k) {
        const Complex t{gen.uniform(-0.5, 0.5), gen.uniform(0.7, 1.6)};
        const PeriodMatrix tau = tau_g1(t);
        const Complex g00 = inner_product_g1(u[0], u[0], tau, n_quad, r.cfg.eps_value);
        const Complex g11 = inner_product_g1(u[1], u[1], tau, n_quad, r.cfg.eps_value);
        const Complex g01 = inner_product_g1(u[0], u[1], tau, n_quad, r.cfg.eps_value);
        worst_off = std::max(worst_off, std::abs(g01) / std::abs(g00));
        worst_diag = std::max(worst_diag, std::abs(g00 / g11 - 1.0));
    }
    r.upper("sot.gram_offdiag", "orthogonality of the level-2 sections",
            worst_off, 1e-7);
    r.upper("sot.gram_equal_norm", "equal norms of the level-2 sections",
            worst_diag, 1e-7);
}

void check_periods(Runner& r) {
    const PeriodMatrix tau = tau_g1(kI);
    const Complex p{0.21, 0.37};
    const PeriodCheck pc = period_check(tau, p, r.cfg.eps_jet);
    r.upper("fay.a_period", "vanishing a-period of the canonical bidifferential",
            std::abs(pc.a_period), 1e-7);
    r.upper("fay.b_period", "b-period equals 2 pi i",
            std::abs(pc.b_period - 2.0 * kPi * kI), 1e-6);

    // Biresidue: (z1-z2)^2 Omega -> 1, Richardson-extrapolated in h^2.
    const Complex z2{0.11, 0.05};
    auto probe = [&](double d) {
        const Complex z1 = z2 + d;
        return (z1 - z2) * (z1 - z2) * omega_g1(z1, z2, tau, r.cfg.eps_jet);
    };
    const Complex v1 = probe(1e-2), v2 = probe(1e-3);
    const Complex extrap = (100.0 * v2 - v1) / 99.0;
    r.upper("fay.biresidue", "double pole with biresidue 1 on the diagonal",
            std::abs(extrap - 1.0), 1e-4);
}

void check_pullback(Runner& r) {
    PointGen gen(r.cfg.seed + 8);
    const PeriodMatrix tau = tau_g1({0.3, 1.1});
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        const Complex x = gen.complex_in(-0.5, 0.5, -0.3, 0.3);
        const Complex y = x + gen.complex_in(0.15, 0.6, 0.05, 0.25);
        const Complex w = gen.complex_in(-0.5, 0.5, -0.3, 0.3);
        CVector wv(1);
        wv[0] = w;
        const SwJet0 sw = s_w_jet0(wv, tau, r.cfg.eps_jet);
        const Complex u = x - y;
        CVector uv(1);
        uv[0] = u - w;
        const Complex swu = theta_jet(uv, tau, r.cfg.eps_value).value;
        uv[0] = u + w;
        const Complex swu2 = theta_jet(uv, tau, r.cfg.eps_value).value;
        const Characteristic zeta = Characteristic::from_rational({1}, 2, {1}, 2);
        const CVector grad = theta_char_jet(zeta, CVector::Zero(1), tau,
                                            r.cfg.eps_jet)
                                 .gradient;
        uv[0] = u;
        const Complex bz = theta_char_jet(zeta, uv, tau, r.cfg.eps_value).value;
        const Complex lhs = swu * swu2 * grad[0] * grad[0];
        const Complex rhs =
            bz * bz * (sw.f0 * omega_g1(x, y, tau, r.cfg.eps_jet) + 0.5 * sw.fij(0, 0));
        worst = std::max(worst, rel_gap(lhs, rhs));
    }
    r.upper("fay.pullback_identity",
            "scalar pullback identity tying theta jets to the bidifferential",
            worst, 1e-9);
}

void check_oracles(Runner& r) {
    const auto u = second_order_indices(1);
    double worst_w = 0, worst_sigma = 0;
    for (int iy = 0; iy < 21; ++iy) {
        const double y = 0.6 + (2.0 - 0.6) * iy / 20.0;
        for (int ix = 0; ix < 21; ++ix) {
            const double x = -0.5 + 1.0 * ix / 20.0;
            const PeriodMatrix tau = tau_g1({x, y});
            const WJet j = w_jet(x, y, r.cfg.eps_value);
            const CVector zero = CVector::Zero(1);
            const double w_sot =
                std::norm(sot_value(u[0], zero, tau, r.cfg.eps_value)) +
                std::norm(sot_value(u[1], zero, tau, r.cfg.eps_value));
            worst_w = std::max(worst_w, std::abs(j.w - w_sot) / w_sot);

            const Complex s_direct = sigma_correction(tau, r.cfg.eps_jet).entries(0, 0);
            const Complex w_tau{0.5 * j.w_x, -0.5 * j.w_y};
            const Complex s_heat = 4.0 * kPi * kI * w_tau / j.w;
            worst_sigma = std::max(worst_sigma,
                                   std::abs(s_direct - s_heat) / std::abs(s_direct));
        }
    }
    r.upper("oracle.w_two_routes", "lattice sum vs level-2 values of w",
            worst_w, 1e-11);
    r.upper("oracle.sigma_two_routes", "direct sigma vs its heat-equation form",
            worst_sigma, 1e-9);
}

void check_theta_basics(Runner& r) {
    PointGen gen(r.cfg.seed + 9);
    double worst_even = 0, worst_qp = 0, worst_sq = 0;
    for (int g = 1; g <= 3; ++g)
        for (int k = 0; k < 5; ++k) {
            const PeriodMatrix tau = gen.random_tau(g);
            const CVector z = gen.random_z(g, 0.4);
            const Complex v = theta_jet(z, tau, r.cfg.eps_value).value;
            const Complex vm = theta_jet((-z).eval(), tau, r.cfg.eps_value).value;
            worst_even = std::max(worst_even, std::abs(v - vm) / std::abs(v));

            // Quasi-periodicity for integer p, q with small norm.
            RVector p(g), q(g);
            for (int i = 0; i < g; ++i) {
                p[i] = std::floor(gen.uniform(-2.0, 3.0));
                q[i] = std::floor(gen.uniform(-2.0, 3.0));
            }
            const CVector shifted =
                z + p.cast<Complex>() + tau.entries() * q.cast<Complex>();
            const Complex lhs = theta_jet(shifted, tau, r.cfg.eps_value).value;
            const CVector qc = q.cast<Complex>();
            const Complex factor =
                std::exp(-kPi * kI * qc.dot(tau.entries() * qc) -
                         2.0 * kPi * kI * qc.dot(z));
            worst_qp = std::max(worst_qp,
                                std::abs(lhs - factor * v) / std::abs(lhs));
        }
    for (int k = 0; k < 5; ++k) {
        const PeriodMatrix tau = gen.random_tau(2);
        const CVector z = gen.random_z(2, 0.4);
        for (const Characteristic& zeta : odd_characteristics(2)) {
            const Complex tz = theta_char_jet(zeta, z, tau, r.cfg.eps_value).value;
            const Complex sz = s_zeta_jet(zeta, z, tau, r.cfg.eps_value).value;
            worst_sq = std::max(worst_sq,
                                rel_gap(tz * tz, c_odd(zeta, tau) * sz));
        }
    }
    r.upper("theta.even", "theta(-z) = theta(z)", worst_even, 1e-12);
    r.upper("theta.quasi_periodicity", "lattice transformation law", worst_qp, 1e-10);
    r.upper("theta.squared_section", "theta[zeta]^2 = c(zeta) s_zeta for odd zeta",
            worst_sq, 1e-10);
}

} // namespace

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::render() const {
    std::ostringstream os;
    os << "verify report\n";
    os << "seed=" << seed << " eps_value=" << format_double(eps_value)
       << " eps_jet=" << format_double(eps_jet) << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name
           << "  measured=" << format_double(c.measured)
           << "  tolerance=" << format_double(c.tolerance) << "  (" << c.identity
           << ")\n";
    }
    os << (all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
    return os.str();
}

VerifyReport verify_all(const RunConfig& config) {
    config.validate();
    VerifyReport report;
    report.seed = config.seed;
    report.eps_value = config.eps_value;
    report.eps_jet = config.eps_jet;
    Runner r{report, config};

    check_special_points(r);
    check_generic_noncoincidence(r);
    check_w_sign(r);
    check_v00(r);
    check_trisecant(r);
    check_gunning(r);
    check_heat(r);
    check_gram(r, 128, 10);
    check_periods(r);
    check_pullback(r);
    check_oracles(r);
    check_theta_basics(r);
    return report;
}

} // namespace tb
