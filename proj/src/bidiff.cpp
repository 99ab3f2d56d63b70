#include "thetabidiff/bidiff.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tb {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

SwJet0 s_w_jet0(const CVector& w, const PeriodMatrix& tau, double eps) {
    const ThetaJet t = theta_jet(w, tau, eps);
    const int g = tau.g();
    SwJet0 out;
    out.f0 = t.value * t.value;
    out.fij = CMatrix::Zero(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            out.fij(i, j) = 2.0 * t.value * t.hessian(i, j) -
                            2.0 * t.gradient[i] * t.gradient[j];
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < i; ++j) out.fij(i, j) = out.fij(j, i);
    return out;
}

PullbackCoefficients pullback_coefficients(const CVector& sot_coeffs,
                                           const PeriodMatrix& tau, double eps) {
    const int g = tau.g();
    if (sot_coeffs.size() != (1 << g))
        throw NotSupported("expected one coefficient per theta_u index");
    PullbackCoefficients out;
    out.holo_matrix = CMatrix::Zero(g, g);
    const auto indices = second_order_indices(g);
    for (int k = 0; k < (1 << g); ++k) {
        const SotJet0 jet = sot_jet0(indices[k], tau, eps);
        out.omega_coeff += sot_coeffs[k] * jet.value0;
        out.holo_matrix += sot_coeffs[k] * 0.5 * jet.hessian0;
    }
    return out;
}

PullbackCoefficients pullback_coefficients(const CVector& w, const PeriodMatrix& tau,
                                           bool as_s_w, double eps) {
    if (!as_s_w) return pullback_coefficients(w, tau, eps);
    const SwJet0 jet = s_w_jet0(w, tau, eps);
    return PullbackCoefficients{jet.f0, 0.5 * jet.fij};
}

CVector omega_zeta_coeffs(const Characteristic& c, const PeriodMatrix& tau,
                          double eps) {
    const CVector zeta = c.zeta(tau);
    const ThetaJet at_zeta = theta_jet(zeta, tau, eps);
    // Scale of the leading series term at zeta: e^{pi Im(z)^t Y^{-1} Im(z)}.
    const RVector imz = zeta.imag();
    const double scale = std::exp(kPi * imz.dot(tau.im_inverse() * imz));
    if (std::abs(at_zeta.value) >= 1e-6 * scale) {
        std::ostringstream os;
        os << "|theta(zeta)| = " << std::abs(at_zeta.value)
           << " not below 1e-6 * " << scale;
        throw NotOnThetaDivisor(os.str());
    }
    const CVector zero = CVector::Zero(tau.g());
    return theta_char_jet(c, zero, tau, eps).gradient;
}

CorrectionMatrix sigma_correction(const PeriodMatrix& tau, double eps) {
    const int g = tau.g();
    CMatrix num = CMatrix::Zero(g, g);
    double w = 0;
    for (const auto& u : second_order_indices(g)) {
        const SotJet0 jet = sot_jet0(u, tau, eps);
        w += std::norm(jet.value0);
        num += std::conj(jet.value0) * jet.hessian0;
    }
    if (w < 1e-300) throw DenominatorUnderflow("sum of |theta_u(0)|^2 underflowed");
    return CorrectionMatrix{num / (2.0 * w), CorrectionKind::Sigma};
}

CorrectionMatrix eta_correction(const PeriodMatrix& tau) {
    return CorrectionMatrix{(-kPi * tau.im_inverse()).cast<Complex>(),
                            CorrectionKind::Eta};
}

double coincidence_residual(const PeriodMatrix& tau, double eps) {
    const CMatrix d = sigma_correction(tau, eps).entries - eta_correction(tau).entries;
    return d.cwiseAbs().maxCoeff();
}

namespace {
CMatrix v00_matrix(const PeriodMatrix& tau, double eps) {
    const int g = tau.g();
    const int cols = 1 + g * (g + 1) / 2;
    CMatrix m(1 << g, cols);
    const auto indices = second_order_indices(g);
    for (int r = 0; r < (1 << g); ++r) {
        const SotJet0 jet = sot_jet0(indices[r], tau, eps);
        m(r, 0) = jet.value0;
        int col = 1;
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) m(r, col++) = jet.hessian0(i, j);
    }
    return m;
}
} // namespace

int v00_kernel_dimension(const PeriodMatrix& tau, double eps, double rank_tol) {
    const CMatrix m = v00_matrix(tau, eps);
    Eigen::JacobiSVD<CMatrix> svd(m);
    const RVector sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > rank_tol * sv[0]) ++rank;
    return static_cast<int>(m.rows()) - rank;
}

RVector v00_singular_values(const PeriodMatrix& tau, double eps) {
    Eigen::JacobiSVD<CMatrix> svd(v00_matrix(tau, eps));
    return svd.singularValues();
}

} // namespace tb
