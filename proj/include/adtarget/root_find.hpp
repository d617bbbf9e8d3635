#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "adtarget/errors.hpp"

namespace adtarget::root_find {

struct Bracket {
    double lo;
    double hi;
};

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    std::size_t max_iter = 500;
};

/// Bisection on a bracket where f(lo) and f(hi) have opposite signs.
/// Stops when the bracket width drops below max(abs_tol, rel_tol * max(|lo|, |hi|))
/// or when the midpoint no longer separates the endpoints.
template <class F>
double bisect(F&& f, Bracket b, const Options& opt = {}) {
    double flo = f(b.lo);
    double fhi = f(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw SolverError("bisect: endpoints do not bracket a root");
    }
    for (std::size_t it = 0; it < opt.max_iter; ++it) {
        const double width = std::abs(b.hi - b.lo);
        const double scale = std::max(std::abs(b.lo), std::abs(b.hi));
        if (width <= std::max(opt.abs_tol, opt.rel_tol * scale)) break;
        const double mid = b.lo + 0.5 * (b.hi - b.lo);
        if (mid == b.lo || mid == b.hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            b.lo = mid;
            flo = fm;
        } else {
            b.hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? b.lo : b.hi;
}

/// Newton's method kept inside a sign-change bracket; falls back to bisection
/// whenever a step leaves the bracket or fails to halve the residual's bracket.
/// `fdf(x)` returns {f(x), f'(x)}. f must be increasing on the bracket.
template <class FDF>
double safeguarded_newton(FDF&& fdf, Bracket b, const Options& opt = {}) {
    auto [flo, dlo] = fdf(b.lo);
    auto [fhi, dhi] = fdf(b.hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if (!(flo < 0.0 && fhi > 0.0)) {
        throw SolverError("safeguarded_newton: bracket must satisfy f(lo) < 0 < f(hi)");
    }
    double x = b.lo + 0.5 * (b.hi - b.lo);
    double prev_step = b.hi - b.lo;
    for (std::size_t it = 0; it < opt.max_iter; ++it) {
        const auto [fx, dfx] = fdf(x);
        if (fx == 0.0) return x;
        if (fx < 0.0) {
            b.lo = x;
        } else {
            b.hi = x;
        }
        double next = x - fx / dfx;
        const bool inside = std::isfinite(next) && next > b.lo && next < b.hi;
        const double step = std::abs(next - x);
        if (!inside || step > 0.5 * prev_step) {
            next = b.lo + 0.5 * (b.hi - b.lo);
        }
        prev_step = std::abs(next - x);
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(next));
        if (prev_step <= tol || next == x) return next;
        x = next;
    }
    return x;
}

}  // namespace adtarget::root_find
