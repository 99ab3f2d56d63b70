#pragma once

#include <optional>
#include <vector>

#include "thetabidiff/theta.hpp"

namespace tb {

// w(x + i y) = sum over (m, n) in Z^2 of exp(2*pi*i*x*m*n - pi*y*(m^2+n^2))
// and its partials up to second order. All values are real; the termwise
// imaginary parts must cancel to below 1e-12 * w before they are dropped.
struct WJet {
    double x = 0, y = 0;
    double w = 0, w_x = 0, w_y = 0;
    double w_xx = 0, w_yy = 0, w_xy = 0;
};

// One point of the coincidence system: r1 = w_x, r2 = 2y*w_y + w,
// res = sqrt(r1^2 + r2^2) / w.
struct LocusSample {
    double x = 0, y = 0;
    double w = 0, w_x = 0, w_y = 0;
    double r1 = 0, r2 = 0;
    double res = 0;
    bool failed = false;
};

// Smallest sup-norm lattice bound M with certified tail < eps for the
// value and all partials up to second order.
int w_lattice_bound(double y, double eps);

WJet w_jet(double x, double y, double eps = kDefaultEpsValue);
// Fixed-bound variant used by scans (one M per scan window).
WJet w_jet_bounded(double x, double y, int m_bound);

LocusSample residuals(double x, double y, double eps = kDefaultEpsValue);

// 4*i*y*w_tau + w with w_tau = (w_x - i*w_y)/2; vanishes together with
// the residual pair (real part = r2, imaginary part = 2y*r1).
Complex holomorphic_residual(double x, double y, double eps = kDefaultEpsValue);

// Row-major grid of samples (x fastest). A failed sample is recorded with
// res = NaN and flagged rather than aborting the scan. The lattice bound
// is chosen once from y_min.
std::vector<LocusSample> scan(double x_min, double x_max, double y_min,
                              double y_max, int nx, int ny,
                              double eps = kDefaultEpsValue);

struct RefineResult {
    LocusSample sample;
    int iterations = 0;
};

// Damped Newton on (r1, r2) with res as merit function and step halving.
// Converged when res < 1e-10. Throws NoConvergence after max_iter and
// SingularJacobian when the 2x2 Jacobian is degenerate.
RefineResult refine(double x0, double y0, double eps = kDefaultEpsValue,
                    int max_iter = 50, int max_halvings = 40);

} // namespace tb
