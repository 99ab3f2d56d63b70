#include "thetabidiff/siegel.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace tb {

PeriodMatrix::PeriodMatrix(const CMatrix& entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
        throw NotSymmetric("period matrix must be square and nonempty");

    const double scale = entries.cwiseAbs().maxCoeff();
    const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + scale)) {
        std::ostringstream os;
        os << "asymmetry " << asym << " above tolerance for scale " << scale;
        throw NotSymmetric(os.str());
    }
    // Downstream termwise derivative identities need exact symmetry.
    tau_ = 0.5 * (entries + entries.transpose());

    im_ = tau_.imag();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(im_);
    lambda_min_ = es.eigenvalues().minCoeff();
    if (lambda_min_ <= 0) {
        std::ostringstream os;
        os << "Im tau has non-positive eigenvalue " << lambda_min_;
        throw NotPositiveDefinite(os.str());
    }
    im_inv_ = es.eigenvectors() *
              es.eigenvalues().cwiseInverse().asDiagonal() *
              es.eigenvectors().transpose();
    im_inv_ = 0.5 * (im_inv_ + im_inv_.transpose());
}

PeriodMatrix validate_period_matrix(const CMatrix& entries) {
    return PeriodMatrix(entries);
}

Characteristic::Characteristic(RVector a, RVector b)
    : a_(std::move(a)), b_(std::move(b)) {}

Characteristic Characteristic::from_rational(const std::vector<long>& a_num, long a_den,
                                             const std::vector<long>& b_num, long b_den) {
    const int g = static_cast<int>(a_num.size());
    RVector a(g), b(g);
    for (int i = 0; i < g; ++i) {
        a[i] = static_cast<double>(a_num[i]) / static_cast<double>(a_den);
        b[i] = static_cast<double>(b_num[i]) / static_cast<double>(b_den);
    }
    Characteristic c(std::move(a), std::move(b));

    // 2a, 2b integral <=> a_den | 2*a_num componentwise (exact).
    bool half = true;
    for (int i = 0; i < g && half; ++i)
        half = (2 * a_num[i]) % a_den == 0 && (2 * b_num[i]) % b_den == 0;
    c.half_integer_ = half;
    if (half) {
        // 4<a,b> = <2a, 2b> in integers.
        long dot = 0;
        for (int i = 0; i < g; ++i)
            dot += (2 * a_num[i] / a_den) * (2 * b_num[i] / b_den);
        c.parity_ = (std::abs(dot) % 2 == 1) ? Parity::Odd : Parity::Even;
    }
    return c;
}

CVector Characteristic::zeta(const PeriodMatrix& tau) const {
    return tau.entries() * a_.cast<Complex>() + b_.cast<Complex>();
}

Characteristic characteristic_from_point(const CVector& zeta, const PeriodMatrix& tau) {
    RVector a = tau.im_inverse() * zeta.imag();
    RVector b = zeta.real() - tau.entries().real() * a;
    return Characteristic(std::move(a), std::move(b));
}

Parity parity(const Characteristic& c) {
    if (!c.half_integer())
        throw NotHalfInteger("parity is defined only for exact half-integer characteristics");
    return c.parity();
}

std::vector<Characteristic> half_integer_characteristics(int g) {
    std::vector<Characteristic> out;
    const int n = 1 << g;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int ia = 0; ia < n; ++ia) {
        for (int ib = 0; ib < n; ++ib) {
            std::vector<long> an(g), bn(g);
            for (int k = 0; k < g; ++k) {
                an[k] = (ia >> (g - 1 - k)) & 1;
                bn[k] = (ib >> (g - 1 - k)) & 1;
            }
            out.push_back(Characteristic::from_rational(an, 2, bn, 2));
        }
    }
    return out;
}

std::vector<Characteristic> odd_characteristics(int g) {
    std::vector<Characteristic> out;
    for (auto& c : half_integer_characteristics(g))
        if (c.odd()) out.push_back(c);
    return out;
}

} // namespace tb
