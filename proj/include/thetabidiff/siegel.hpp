#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "thetabidiff/errors.hpp"

namespace tb {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// A point of the Siegel upper half-space: symmetric g x g complex matrix
// with positive definite imaginary part. Immutable after construction.
// Normalized differentials are represented only by their index; the
// convention is that the a-periods of omega_j form the identity.
class PeriodMatrix {
public:
    // Symmetrizes the input (average of tau_ij, tau_ji) when the relative
    // asymmetry is below 1e-12; verifies Im tau > 0.
    // Throws NotSymmetric / NotPositiveDefinite on invalid moduli input.
    explicit PeriodMatrix(const CMatrix& entries);

    int g() const { return static_cast<int>(tau_.rows()); }
    const CMatrix& entries() const { return tau_; }
    const RMatrix& im() const { return im_; }
    const RMatrix& im_inverse() const { return im_inv_; }
    // Smallest eigenvalue of Im tau; controls the Gaussian decay of the
    // theta series.
    double lambda_min() const { return lambda_min_; }

private:
    CMatrix tau_;
    RMatrix im_;
    RMatrix im_inv_;
    double lambda_min_;
};

enum class Parity { Even, Odd, None };

// Real pair (a, b) representing the point zeta = tau*a + b. The
// half-integer flag is set only by the exact rational constructor; a
// characteristic recovered from floating point carries no parity.
class Characteristic {
public:
    // Float constructor: half-integer flag is always false.
    Characteristic(RVector a, RVector b);

    // Exact constructor: a = a_num/a_den, b = b_num/b_den componentwise.
    // Half-integer detection and parity are computed in integer arithmetic.
    static Characteristic from_rational(const std::vector<long>& a_num, long a_den,
                                        const std::vector<long>& b_num, long b_den);

    const RVector& a() const { return a_; }
    const RVector& b() const { return b_; }
    int g() const { return static_cast<int>(a_.size()); }
    bool half_integer() const { return half_integer_; }
    Parity parity() const { return parity_; }
    bool odd() const { return parity_ == Parity::Odd; }

    // zeta = tau*a + b
    CVector zeta(const PeriodMatrix& tau) const;

private:
    RVector a_, b_;
    bool half_integer_ = false;
    Parity parity_ = Parity::None;
};

PeriodMatrix validate_period_matrix(const CMatrix& entries);

// Unique decomposition zeta = tau*a + b with a, b real:
// a = (Im tau)^{-1} Im zeta, b = Re zeta - (Re tau) a.
Characteristic characteristic_from_point(const CVector& zeta, const PeriodMatrix& tau);

// Throws NotHalfInteger when the characteristic carries no exact parity.
Parity parity(const Characteristic& c);

// All 4^g characteristics with entries in {0, 1/2}, lexicographic in
// (a, b) with the first coordinate most significant.
std::vector<Characteristic> half_integer_characteristics(int g);
std::vector<Characteristic> odd_characteristics(int g);

} // namespace tb
