#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "thetabidiff/siegel.hpp"

namespace tbtest {

inline tb::PeriodMatrix tau_g1(tb::Complex t) {
    tb::CMatrix m(1, 1);
    m(0, 0) = t;
    return tb::PeriodMatrix(m);
}

inline tb::CVector vec1(tb::Complex z) {
    tb::CVector v(1);
    v[0] = z;
    return v;
}

inline const tb::Complex kTauHex{0.5, std::sqrt(3.0) / 2.0};
inline const tb::Complex kImagUnit{0.0, 1.0};

inline double rel(tb::Complex a, tb::Complex b) {
    return std::abs(a - b) / (std::abs(a) + std::abs(b) + 1e-300);
}

} // namespace tbtest
