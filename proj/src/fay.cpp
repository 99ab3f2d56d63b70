#include "thetabidiff/fay.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace tb {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

CVector vec1(Complex z) {
    CVector v(1);
    v[0] = z;
    return v;
}

Characteristic odd_char_g1() {
    return Characteristic::from_rational({1}, 2, {1}, 2);
}

Complex theta_val(Complex z, const PeriodMatrix& tau, double eps) {
    return detail::lattice_jet(tau.entries(), tau.lambda_min(), tau.im_inverse(),
                               RVector::Zero(1), vec1(z), eps, 0,
                               kDefaultLatticeCap)
        .value;
}

Complex theta_odd_val(Complex z, const PeriodMatrix& tau, double eps) {
    static const Characteristic zeta = odd_char_g1();
    const CVector zarg = vec1(z + 0.5);
    return detail::lattice_jet(tau.entries(), tau.lambda_min(), tau.im_inverse(),
                               zeta.a(), zarg, eps, 0, kDefaultLatticeCap)
        .value;
}

ThetaJet theta_odd_jet(Complex z, const PeriodMatrix& tau, double eps) {
    static const Characteristic zeta = odd_char_g1();
    return theta_char_jet(zeta, vec1(z), tau, eps);
}

// Distance from u to the lattice Z + tau*Z.
double lattice_distance(Complex u, const PeriodMatrix& tau) {
    const Complex t = tau.entries()(0, 0);
    const double q = u.imag() / t.imag();
    const double p = u.real() - q * t.real();
    double best = std::abs(u);
    for (int dk = -1; dk <= 1; ++dk)
        for (int dl = -1; dl <= 1; ++dl) {
            const double k = std::round(p) + dk;
            const double l = std::round(q) + dl;
            best = std::min(best, std::abs(u - (k + l * t)));
        }
    return best;
}

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
    0.40828267875217505, 0.5917173212478249,  0.7627662049581645,
    0.8983332387068134,  0.9801449282487681};
constexpr std::array<double, 8> kGlWeights = {
    0.05061426814518813, 0.11119051722668723, 0.15685332293894364,
    0.18134189168918097, 0.18134189168918097, 0.15685332293894364,
    0.11119051722668723, 0.05061426814518813};

} // namespace

Complex abel_difference_g1(Complex x, Complex y) { return x - y; }

double TrisecantSides::residual() const {
    return std::abs(A - B) / (std::abs(A) + std::abs(B) + 1.0);
}

TrisecantSides trisecant_sides(const TrisecantConfig& cfg, const PeriodMatrix& tau,
                               double eps) {
    if (tau.g() != 1) throw NotSupported("trisecant check is implemented for g = 1");
    const Complex w = cfg.w;
    auto alpha = [&](Complex x, Complex y) { return theta_val(w + (x - y), tau, eps); };
    auto beta = [&](Complex x, Complex y) { return theta_odd_val(x - y, tau, eps); };
    const Complex phi_z = cfg.z1 - cfg.z2;
    const Complex phi_a = cfg.a1 - cfg.a2;

    TrisecantSides out;
    out.A = theta_val(w + phi_z, tau, eps) * alpha(cfg.a2, cfg.a1) *
            beta(cfg.z1, cfg.a1) * beta(cfg.z2, cfg.a2);
    out.B = theta_val(w, tau, eps) * theta_val(w + phi_z - phi_a, tau, eps) *
                beta(cfg.z1, cfg.a2) * beta(cfg.z2, cfg.a1) +
            alpha(cfg.z1, cfg.a1) * alpha(cfg.a2, cfg.z2) *
                theta_odd_val(phi_z, tau, eps) * theta_odd_val(phi_a, tau, eps);
    return out;
}

Complex omega_g1(Complex z1, Complex z2, const PeriodMatrix& tau, double eps) {
    if (tau.g() != 1) throw NotSupported("omega_g1 is defined for g = 1");
    const Complex u = z1 - z2;
    if (lattice_distance(u, tau) < 1e-6)
        throw OnDiagonal("z1 - z2 is on the lattice orbit of the diagonal");
    const ThetaJet jet = theta_odd_jet(u, tau, eps);
    const Complex f = jet.value, fp = jet.gradient[0], fpp = jet.hessian(0, 0);
    return -(fpp * f - fp * fp) / (f * f);
}

PeriodCheck period_check(const PeriodMatrix& tau, Complex p, double eps,
                         int n_quad) {
    if (tau.g() != 1) throw NotSupported("period_check is defined for g = 1");
    const Complex t = tau.entries()(0, 0);

    // Base point chosen so both segments stay away from p + Z + tau*Z;
    // offset candidates are tried when the default path grazes a pole.
    const std::array<Complex, 4> offsets = {0.5 + 0.37 * t, 0.5 + 0.23 * t,
                                            0.29 + 0.41 * t, 0.13 + 0.31 * t};
    Complex base{};
    bool found = false;
    for (const Complex& off : offsets) {
        const Complex t0 = p - off;
        bool clear = true;
        for (int k = 0; k <= 64 && clear; ++k) {
            const double s = static_cast<double>(k) / 64;
            clear = lattice_distance(p - (t0 + s), tau) > 1e-3 &&
                    lattice_distance(p - (t0 + s * t), tau) > 1e-3;
        }
        if (clear) {
            base = t0;
            found = true;
            break;
        }
    }
    if (!found) throw PoleOnPath("no pole-free integration path found");

    auto integrate = [&](Complex dir) {
        Complex acc = 0;
        for (int seg = 0; seg < n_quad; ++seg) {
            for (int k = 0; k < 8; ++k) {
                const double s = (seg + kGlNodes[k]) / n_quad;
                const Complex q = base + s * dir;
                acc += kGlWeights[k] * omega_g1(p, q, tau, eps);
            }
        }
        return acc * dir / static_cast<double>(n_quad);
    };

    PeriodCheck out;
    out.a_period = integrate(1.0);
    out.b_period = integrate(t);
    return out;
}

A12B12Result a12_b12_check(Complex w, Complex a1, Complex a2,
                           const PeriodMatrix& tau, double eps, double h) {
    if (tau.g() != 1) throw NotSupported("a12_b12_check is defined for g = 1");

    auto sideA = [&](Complex x1, Complex x2) {
        TrisecantConfig c{w, x1, x2, a1, a2};
        return trisecant_sides(c, tau, eps).A;
    };
    auto sideB = [&](Complex x1, Complex x2) {
        TrisecantConfig c{w, x1, x2, a1, a2};
        return trisecant_sides(c, tau, eps).B;
    };
    auto fd12 = [&](auto&& f) {
        return (f(a1 + h, a2 + h) - f(a1 + h, a2 - h) - f(a1 - h, a2 + h) +
                f(a1 - h, a2 - h)) /
               (4.0 * h * h);
    };

    const Complex a12_fd = fd12(sideA);
    const Complex b12_fd = fd12(sideB);

    const Complex u = a1 - a2;
    const ThetaJet tw = theta_jet(vec1(w), tau, eps);
    const Complex sw0 = tw.value * tw.value;
    const Complex swpp0 = 2.0 * tw.value * tw.hessian(0, 0) -
                          2.0 * tw.gradient[0] * tw.gradient[0];
    const Complex sw_u = theta_val(u - w, tau, eps) * theta_val(u + w, tau, eps);
    const Complex dzeta0 = theta_odd_jet(0.0, tau, eps).gradient[0];
    const Complex bz = theta_odd_val(u, tau, eps);

    const Complex a12_exact = sw_u * dzeta0 * dzeta0;
    const Complex b12_exact =
        bz * bz * (sw0 * omega_g1(a1, a2, tau, eps) + 0.5 * swpp0);

    A12B12Result out;
    out.res_a = std::abs(a12_fd - a12_exact) / (std::abs(a12_exact) + 1.0);
    out.res_b = std::abs(b12_fd - b12_exact) / (std::abs(b12_exact) + 1.0);
    return out;
}

} // namespace tb
