#pragma once

// Scalar root and minimum finders shared by the family and oracle modules.

#include <cmath>
#include <utility>

namespace envelopes::detail {

struct Minimum {
    double t;
    double value;
};

/// Golden-section search for a minimum of f on [lo, hi]. Returns the best
/// point seen, endpoints included.
template <typename F>
Minimum golden_section(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
    constexpr double kInvPhi = 0.6180339887498949;
    Minimum best{lo, f(lo)};
    if (const double fh = f(hi); fh < best.value) best = {hi, fh};

    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};
    return best;
}

/// Bisection for a sign change of f on [lo, hi]; requires f(lo), f(hi) of
/// opposite sign (or one of them zero). Stops when the bracket is <= tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace envelopes::detail
