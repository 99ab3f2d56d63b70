#include "thetabidiff/locus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tb {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

int w_lattice_bound(double y, double eps) {
    if (!(y > 0)) throw EpsilonTooSmall("w_jet requires y > 0");
    // Tail over sup-norm shells ell > M: 8*ell points per shell,
    // m^2 + n^2 >= ell^2, worst derivative prefactor (2*pi*ell^2)^2.
    auto tail = [&](int m) {
        double total = 0;
        for (int ell = m + 1; ell < m + 4000; ++ell) {
            const double pref = 1.0 + std::pow(2.0 * kPi * ell * ell, 2);
            const double t = 8.0 * ell * pref * std::exp(-kPi * y * ell * ell);
            total += t;
            if (t < 1e-3 * eps) break;
        }
        return total;
    };
    for (int m = 1; m <= 800; ++m)
        if (tail(m) <= eps) return m;
    std::ostringstream os;
    os << "no lattice bound reaches eps " << eps << " for y = " << y;
    throw EpsilonTooSmall(os.str());
}

WJet w_jet_bounded(double x, double y, int m_bound) {
    Complex w = 0, wx = 0, wy = 0, wxx = 0, wyy = 0, wxy = 0;
    const Complex two_pi_i{0.0, 2.0 * kPi};
    for (int m = -m_bound; m <= m_bound; ++m) {
        for (int n = -m_bound; n <= m_bound; ++n) {
            const double mn = static_cast<double>(m) * n;
            const double s2 = static_cast<double>(m) * m + static_cast<double>(n) * n;
            const Complex term = std::exp(two_pi_i * (x * mn) - kPi * y * s2);
            const Complex fx = two_pi_i * mn;
            const double fy = -kPi * s2;
            w += term;
            wx += fx * term;
            wy += fy * term;
            wxx += fx * fx * term;
            wyy += fy * fy * term;
            wxy += fx * fy * term;
        }
    }
    const double scale = std::abs(w);
    for (const Complex* v : {&w, &wx, &wy, &wxx, &wyy, &wxy}) {
        if (std::abs(v->imag()) > 1e-12 * scale * (1.0 + std::abs(v->real())))
            throw EpsilonTooSmall("imaginary residue of the w series did not cancel");
    }
    WJet jet;
    jet.x = x;
    jet.y = y;
    jet.w = w.real();
    jet.w_x = wx.real();
    jet.w_y = wy.real();
    jet.w_xx = wxx.real();
    jet.w_yy = wyy.real();
    jet.w_xy = wxy.real();
    return jet;
}

WJet w_jet(double x, double y, double eps) {
    return w_jet_bounded(x, y, w_lattice_bound(y, eps));
}

namespace {
LocusSample sample_from(const WJet& j) {
    LocusSample s;
    s.x = j.x;
    s.y = j.y;
    s.w = j.w;
    s.w_x = j.w_x;
    s.w_y = j.w_y;
    s.r1 = j.w_x;
    s.r2 = 2.0 * j.y * j.w_y + j.w;
    s.res = std::hypot(s.r1, s.r2) / j.w;
    return s;
}
} // namespace

LocusSample residuals(double x, double y, double eps) {
    return sample_from(w_jet(x, y, eps));
}

Complex holomorphic_residual(double x, double y, double eps) {
    const WJet j = w_jet(x, y, eps);
    const Complex w_tau{0.5 * j.w_x, -0.5 * j.w_y};
    return 4.0 * Complex{0.0, 1.0} * y * w_tau + j.w;
}

std::vector<LocusSample> scan(double x_min, double x_max, double y_min,
                              double y_max, int nx, int ny, double eps) {
    if (!(0 < y_min && y_min < y_max) || nx < 2 || ny < 2)
        throw NotSupported("scan requires 0 < y_min < y_max and nx, ny >= 2");
    // One lattice bound for the whole window (monotone in y):
    // reproducibility over adaptivity.
    const int m_bound = w_lattice_bound(y_min, eps);
    std::vector<LocusSample> out;
    out.reserve(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = y_min + (y_max - y_min) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = x_min + (x_max - x_min) * ix / (nx - 1);
            LocusSample s;
            try {
                s = sample_from(w_jet_bounded(x, y, m_bound));
            } catch (const NumericsError&) {
                s.x = x;
                s.y = y;
                s.res = std::numeric_limits<double>::quiet_NaN();
                s.failed = true;
            }
            out.push_back(s);
        }
    }
    return out;
}

RefineResult refine(double x0, double y0, double eps, int max_iter,
                    int max_halvings) {
    if (!(y0 > 0)) throw NotSupported("refine requires y0 > 0");
    LocusSample cur = residuals(x0, y0, eps);
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (cur.res < 1e-10) return RefineResult{cur, iter - 1};
        const WJet j = w_jet(cur.x, cur.y, eps);
        // Exact Jacobian of (r1, r2) = (w_x, 2y*w_y + w).
        const double j11 = j.w_xx;
        const double j12 = j.w_xy;
        const double j21 = 2.0 * j.y * j.w_xy + j.w_x;
        const double j22 = 3.0 * j.w_y + 2.0 * j.y * j.w_yy;
        const double det = j11 * j22 - j12 * j21;
        const double norm2 = j11 * j11 + j12 * j12 + j21 * j21 + j22 * j22;
        if (std::abs(det) * 1e12 < norm2)
            throw SingularJacobian("degenerate Jacobian at the current iterate");
        const double dx = -(j22 * cur.r1 - j12 * cur.r2) / det;
        const double dy = -(-j21 * cur.r1 + j11 * cur.r2) / det;

        double step = 1.0;
        bool improved = false;
        for (int h = 0; h < max_halvings; ++h, step *= 0.5) {
            const double xn = cur.x + step * dx;
            const double yn = cur.y + step * dy;
            if (!(yn > 0)) continue;
            const LocusSample cand = residuals(xn, yn, eps);
            if (cand.res < cur.res) {
                cur = cand;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (cur.res < 1e-10) return RefineResult{cur, max_iter};
    std::ostringstream os;
    os << "res " << cur.res << " after damped Newton from (" << x0 << ", " << y0 << ")";
    throw NoConvergence(os.str());
}

} // namespace tb
