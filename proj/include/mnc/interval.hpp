#pragma once

// Closed intervals with outward rounding by one ulp per operation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mnc {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double x) { return {x, x}; }
    static Interval around(double c, double r) { return outward(c - r, c + r); }

    static Interval outward(double lo, double hi) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {std::nextafter(lo, -inf), std::nextafter(hi, inf)};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
    bool contains(double x, double slack = 0.0) const { return lo - slack <= x && x <= hi + slack; }
};

inline Interval operator+(Interval a, Interval b) { return Interval::outward(a.lo + b.lo, a.hi + b.hi); }
inline Interval operator-(Interval a, Interval b) { return Interval::outward(a.lo - b.hi, a.hi - b.lo); }

inline Interval operator*(Interval a, Interval b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return Interval::outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

inline Interval operator*(double k, Interval a) { return Interval::point(k) * a; }

/// a^n for n >= 0, tight for even powers of sign-changing intervals.
inline Interval pow(Interval a, unsigned n) {
    if (n == 0)
        return Interval::point(1.0);
    const double top = std::pow(a.mag(), static_cast<double>(n));
    if (n % 2 == 0 && a.lo <= 0.0 && a.hi >= 0.0)
        return {0.0, Interval::outward(top, top).hi};
    const double x = std::pow(a.lo, static_cast<double>(n));
    const double y = std::pow(a.hi, static_cast<double>(n));
    Interval r = Interval::outward(std::min(x, y), std::max(x, y));
    if (n % 2 == 0)
        r.lo = std::max(r.lo, 0.0); // even powers are nonnegative
    return r;
}

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// Intersection; empty results collapse to the midpoint of the gap.
inline Interval intersect(Interval a, Interval b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi)
        return {lo, hi};
    const double m = 0.5 * (lo + hi);
    return {m, m};
}

using IntervalBox = std::vector<Interval>;

inline double max_width(const IntervalBox& b) {
    double w = 0.0;
    for (const Interval& x : b)
        w = std::max(w, x.width());
    return w;
}

} // namespace mnc
