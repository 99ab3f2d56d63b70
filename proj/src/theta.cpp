#include "thetabidiff/theta.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tb {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Count of integer points at sup-norm exactly ell in dimension g.
double shell_count(int ell, int g) {
    return std::pow(2.0 * ell + 1.0, g) - std::pow(2.0 * ell - 1.0, g);
}
} // namespace

namespace detail {

TruncationPlan plan(int g, double lambda_min, const RMatrix& im_inv,
                    const RVector& shift, const RVector& im_zarg, double eps,
                    int order, int cap) {
    // Gaussian center of |term| as a function of m.
    const RVector mu = -(shift + im_inv * im_zarg);
    Eigen::VectorXi center(g);
    for (int i = 0; i < g; ++i) center[i] = static_cast<int>(std::lround(mu[i]));
    const double delta = (center.cast<double>() - mu).norm();
    // |m + shift| <= ||m - center|| + c0 (derivative prefactor).
    const double c0 = (center.cast<double>() + shift).norm() + 1.0;
    const double sg = std::sqrt(static_cast<double>(g));

    auto tail = [&](int radius) {
        // Excluded points have Euclidean distance > radius from the
        // center; group them by sup-norm shell ell >= ceil(radius/sqrt(g)).
        double total = 0;
        const int ell0 = std::max(1, static_cast<int>(std::ceil(radius / sg)));
        for (int ell = ell0; ell < ell0 + 4000; ++ell) {
            const double d = std::max(0.0, std::max<double>(ell, radius) - delta);
            double t = shell_count(ell, g) * std::exp(-kPi * lambda_min * d * d);
            if (order > 0) t *= std::pow(2.0 * kPi * (sg * ell + c0), order);
            total += t;
            if (ell > radius && t < 1e-3 * eps) break;
        }
        return total;
    };

    for (int radius = 1; radius <= cap; ++radius) {
        const double b = tail(radius);
        if (b <= eps)
            return TruncationPlan{center, static_cast<double>(radius), b};
    }
    std::ostringstream os;
    os << "no radius below cap " << cap << " reaches eps " << eps
       << " (lambda_min " << lambda_min << ")";
    throw EpsilonTooSmall(os.str());
}

ThetaJet lattice_jet(const CMatrix& Q, double lambda_min, const RMatrix& im_inv,
                     const RVector& shift, const CVector& zarg, double eps,
                     int order, int cap) {
    const int g = static_cast<int>(Q.rows());
    const TruncationPlan tp = plan(g, lambda_min, im_inv, shift, zarg.imag(),
                                   eps, order, cap);
    const int R = static_cast<int>(tp.radius);
    const double R2 = tp.radius * tp.radius;

    ThetaJet jet;
    jet.gradient = CVector::Zero(g);
    jet.hessian = CMatrix::Zero(g, g);

    Eigen::VectorXi m = tp.center.array() - R;
    RVector n(g);
    const Complex two_pi_i = 2.0 * kPi * kI;
    // Lexicographic box scan with per-point ball test; the fixed order
    // keeps the accumulation deterministic.
    while (true) {
        double dist2 = 0;
        for (int i = 0; i < g; ++i) {
            const double d = m[i] - tp.center[i];
            dist2 += d * d;
        }
        if (dist2 <= R2) {
            for (int i = 0; i < g; ++i) n[i] = m[i] + shift[i];
            const CVector nc = n.cast<Complex>();
            // Exponent accumulated as one complex number per term.
            const Complex expo = kPi * kI * (nc.dot(Q * nc) + 2.0 * nc.dot(zarg));
            const Complex term = std::exp(expo);
            jet.value += term;
            if (order >= 1)
                for (int i = 0; i < g; ++i)
                    jet.gradient[i] += two_pi_i * n[i] * term;
            if (order >= 2)
                for (int i = 0; i < g; ++i)
                    for (int j = i; j < g; ++j)
                        jet.hessian(i, j) += two_pi_i * two_pi_i * n[i] * n[j] * term;
        }
        int k = g - 1;
        while (k >= 0 && m[k] == tp.center[k] + R) {
            m[k] = tp.center[k] - R;
            --k;
        }
        if (k < 0) break;
        ++m[k];
    }
    // Mirror the upper triangle: symmetric exactly as stored.
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < i; ++j)
            jet.hessian(i, j) = jet.hessian(j, i);
    return jet;
}

} // namespace detail

TruncationPlan truncation_radius(const PeriodMatrix& tau, const CVector& z,
                                 double eps, int order, int cap) {
    if (!(eps > 0)) throw EpsilonTooSmall("eps must be positive");
    return detail::plan(tau.g(), tau.lambda_min(), tau.im_inverse(),
                        RVector::Zero(tau.g()), z.imag(), eps, order, cap);
}

ThetaJet theta_jet(const CVector& z, const PeriodMatrix& tau, double eps) {
    return detail::lattice_jet(tau.entries(), tau.lambda_min(), tau.im_inverse(),
                               RVector::Zero(tau.g()), z, eps, 2,
                               kDefaultLatticeCap);
}

ThetaJet theta_char_jet(const Characteristic& c, const CVector& z,
                        const PeriodMatrix& tau, double eps) {
    const CVector zarg = z + c.b().cast<Complex>();
    return detail::lattice_jet(tau.entries(), tau.lambda_min(), tau.im_inverse(),
                               c.a(), zarg, eps, 2, kDefaultLatticeCap);
}

ThetaJet s_zeta_jet(const Characteristic& c, const CVector& z,
                    const PeriodMatrix& tau, double eps) {
    const CVector zeta = c.zeta(tau);
    const ThetaJet f = theta_jet(z - zeta, tau, eps);
    const ThetaJet g_ = theta_jet(z + zeta, tau, eps);
    const int g = tau.g();

    ThetaJet out;
    out.value = f.value * g_.value;
    out.gradient = f.gradient * g_.value + f.value * g_.gradient;
    out.hessian = CMatrix::Zero(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            out.hessian(i, j) = f.hessian(i, j) * g_.value +
                                f.gradient[i] * g_.gradient[j] +
                                f.gradient[j] * g_.gradient[i] +
                                f.value * g_.hessian(i, j);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < i; ++j)
            out.hessian(i, j) = out.hessian(j, i);
    return out;
}

Complex c_zeta(const Characteristic& c, const PeriodMatrix& tau) {
    const CVector a = c.a().cast<Complex>();
    const CVector b = c.b().cast<Complex>();
    const Complex expo = a.dot(tau.entries() * a + 2.0 * b);
    return -std::exp(2.0 * std::numbers::pi * kI * expo);
}

Complex c_odd(const Characteristic& c, const PeriodMatrix& tau) {
    if (!c.odd())
        throw NotOdd("c_odd requires an odd half-integer characteristic");
    const CVector a = c.a().cast<Complex>();
    const Complex expo = a.dot(tau.entries() * a);
    return std::exp(2.0 * std::numbers::pi * kI * expo);
}

} // namespace tb
