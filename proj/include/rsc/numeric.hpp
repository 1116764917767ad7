#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace rsc::num {

// Adaptive Simpson quadrature with absolute tolerance. Depth is generous;
// integrands here are piecewise smooth away from the origin.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 50) {
    if (a == b) return 0.0;
    auto simpson = [](double fa, double fm, double fb, double h) {
        return h / 6.0 * (fa + 4.0 * fm + fb);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double tol,
            int depth) -> double {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m);
        const double rm = 0.5 * (m + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(flo, flm, fmid, m - lo);
        const double right = simpson(fmid, frm, fhi, hi - m);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return rec(lo, m, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
               rec(m, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return rec(a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Boundary of {x : pred(x)} by bisection. Expects pred(lo) false, pred(hi)
// true; returns the smallest x with pred(x) to within x_tol.
template <class P>
double bisect_boundary(P&& pred, double lo, double hi, double x_tol) {
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Brent root bracketing, used as the independent cross-check root finder.
template <class F>
double brent(F&& f, double a, double b, double tol = 1e-13, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0) throw std::invalid_argument("brent: root not bracketed");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, s = b, fs = fb, d = c;
    bool mflag = true;
    for (int it = 0; it < max_iter; ++it) {
        if (fb == 0.0 || std::abs(b - a) < tol) return b;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double edge = 0.25 * (3.0 * a + b);
        const bool outside = !(std::min(edge, b) < s && s < std::max(edge, b));
        const bool bad = outside || (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
                         (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
                         (mflag && std::abs(b - c) < tol) || (!mflag && std::abs(c - d) < tol);
        if (bad) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0.0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

// Inverse normal CDF, Wichura's AS241 (PPND16). Accurate to ~1e-16 over (0,1).
inline double normal_icdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("normal_icdf: p outside [0,1]");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

}  // namespace rsc::num
