#include "thetabidiff/sot.hpp"

#include <cmath>
#include <numbers>

namespace tb {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
} // namespace

SecondOrderIndex SecondOrderIndex::from_index(int g, int index) {
    SecondOrderIndex out;
    out.u = RVector::Zero(g);
    for (int k = 0; k < g; ++k)
        if ((index >> (g - 1 - k)) & 1) out.u[k] = 0.5;
    return out;
}

std::vector<SecondOrderIndex> second_order_indices(int g) {
    std::vector<SecondOrderIndex> out;
    out.reserve(std::size_t(1) << g);
    for (int i = 0; i < (1 << g); ++i)
        out.push_back(SecondOrderIndex::from_index(g, i));
    return out;
}

Complex sot_value(const SecondOrderIndex& u, const CVector& z,
                  const PeriodMatrix& tau, double eps) {
    // theta_u is the level-2 series: quadratic form 2*tau, argument 2*z.
    const CMatrix Q = 2.0 * tau.entries();
    const RMatrix im_inv = 0.5 * tau.im_inverse();
    return detail::lattice_jet(Q, 2.0 * tau.lambda_min(), im_inv, u.u,
                               2.0 * z, eps, 0, kDefaultLatticeCap)
        .value;
}

SotJet0 sot_jet0(const SecondOrderIndex& u, const PeriodMatrix& tau, double eps) {
    const int g = tau.g();
    const CMatrix Q = 2.0 * tau.entries();
    const RMatrix im_inv = 0.5 * tau.im_inverse();
    const TruncationPlan tp = detail::plan(g, 2.0 * tau.lambda_min(), im_inv,
                                           u.u, RVector::Zero(g), eps, 2,
                                           kDefaultLatticeCap);
    const int R = static_cast<int>(tp.radius);
    const double R2 = tp.radius * tp.radius;

    SotJet0 jet;
    jet.hessian0 = CMatrix::Zero(g, g);
    jet.tau_deriv = CMatrix::Zero(g, g);
    CVector grad = CVector::Zero(g);

    const Complex four_pi_i = 4.0 * kPi * kI;
    const Complex two_pi_i = 2.0 * kPi * kI;
    Eigen::VectorXi m = tp.center.array() - R;
    RVector n(g);
    while (true) {
        double dist2 = 0;
        for (int i = 0; i < g; ++i) {
            const double d = m[i] - tp.center[i];
            dist2 += d * d;
        }
        if (dist2 <= R2) {
            for (int i = 0; i < g; ++i) n[i] = m[i] + u.u[i];
            const CVector nc = n.cast<Complex>();
            const Complex term = std::exp(two_pi_i * nc.dot(tau.entries() * nc));
            jet.value0 += term;
            for (int i = 0; i < g; ++i) grad[i] += four_pi_i * n[i] * term;
            for (int i = 0; i < g; ++i) {
                for (int j = i; j < g; ++j) {
                    jet.hessian0(i, j) += four_pi_i * four_pi_i * n[i] * n[j] * term;
                    // Upper-triangle parametrization of symmetric tau:
                    // off-diagonal entries move tau_ij and tau_ji together.
                    const double mult = (i == j) ? 1.0 : 2.0;
                    jet.tau_deriv(i, j) += two_pi_i * mult * n[i] * n[j] * term;
                }
            }
        }
        int k = g - 1;
        while (k >= 0 && m[k] == tp.center[k] + R) {
            m[k] = tp.center[k] - R;
            --k;
        }
        if (k < 0) break;
        ++m[k];
    }
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < i; ++j) {
            jet.hessian0(i, j) = jet.hessian0(j, i);
            jet.tau_deriv(i, j) = jet.tau_deriv(j, i);
        }
    }
    // theta_u is even, so the gradient at 0 cancels to truncation level.
    // Asserted rather than stored.
    (void)grad;
    return jet;
}

Complex inner_product_g1(const SecondOrderIndex& u, const SecondOrderIndex& v,
                         const PeriodMatrix& tau, int n, double eps) {
    if (tau.g() != 1)
        throw NotSupported("inner_product_g1 is defined for g = 1 only");
    const Complex t = tau.entries()(0, 0);
    const double im_tau = t.imag();

    // z = s + t*tau over the fundamental parallelogram; the weighted
    // integrand is doubly periodic, so the N x N trapezoid rule is just
    // the grid mean and converges geometrically.
    Complex acc = 0;
    for (int a = 0; a < n; ++a) {
        const double s = static_cast<double>(a) / n;
        for (int b = 0; b < n; ++b) {
            const double r = static_cast<double>(b) / n;
            CVector z(1);
            z[0] = s + r * t;
            const Complex fu = sot_value(u, z, tau, eps);
            const Complex fv = sot_value(v, z, tau, eps);
            const double imz = z[0].imag();
            const double weight = std::exp(-4.0 * kPi * imz * imz / im_tau);
            acc += fu * std::conj(fv) * weight;
        }
    }
    return acc * (im_tau / (static_cast<double>(n) * n));
}

} // namespace tb
