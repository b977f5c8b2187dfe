#include "hqt/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace hqt {

double brent(const std::function<double(double)>& f, double lo, double hi,
             double xtol, int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::invalid_argument("brent: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {       // inverse quadratic
                const double qa = fa / fc, rb = fb / fc;
                p = s * (2.0 * m * qa * (qa - rb) - (b - a) * (rb - 1.0));
                q = (qa - 1.0) * (rb - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
    }
    return b;
}

bool brent_log_bracket(const std::function<double(double)>& f, double lo_limit,
                       double hi_limit, double* root, double xtol) {
    if (!(lo_limit > 0.0) || !(hi_limit > lo_limit))
        throw std::invalid_argument("brent_log_bracket: need 0 < lo < hi");
    const int kSteps = 64;
    const double ratio = std::pow(hi_limit / lo_limit, 1.0 / kSteps);
    double x0 = lo_limit;
    double f0 = f(x0);
    if (f0 == 0.0) { *root = x0; return true; }
    for (int i = 1; i <= kSteps; ++i) {
        const double x1 = lo_limit * std::pow(ratio, i);
        const double f1 = f(x1);
        if (f1 == 0.0) { *root = x1; return true; }
        if (f0 * f1 < 0.0) {
            *root = brent(f, x0, x1, xtol);
            return true;
        }
        x0 = x1; f0 = f1;
    }
    return false;
}

}  // namespace hqt
