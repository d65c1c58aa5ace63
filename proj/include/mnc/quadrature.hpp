#pragma once

#include "mnc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mnc {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // Richardson estimate summed over accepted panels
    std::size_t evaluations = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
    F& f;
    double tol;
    int max_depth;
    QuadratureResult result{};
    bool failed = false;

    double eval(double x) {
        ++result.evaluations;
        return f(x);
    }

    void recurse(double a, double fa, double m, double fm, double b, double fb, double whole, double tol_here,
                 int depth) {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if ((depth >= 4 && std::abs(delta) <= 15.0 * tol_here) || depth >= max_depth) {
            if (std::abs(delta) > 15.0 * tol_here)
                failed = true;
            result.value += left + right + delta / 15.0;
            result.error += std::abs(delta) / 15.0;
            return;
        }
        recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol_here, depth + 1);
        recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol_here, depth + 1);
    }
};

} // namespace detail

/// Adaptive Simpson on [a, b] with absolute tolerance tol. Splits at the
/// given breakpoints first so that each panel sees a smooth integrand; the
/// right end of a panel is sampled one ulp inside, so a right-continuous
/// jump at a breakpoint never enters the panel to its left.
/// Throws accuracy_error if some panel cannot meet its share of tol.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, std::span<const double> breakpoints = {},
                                  int max_depth = 48) {
    if (!(a <= b))
        throw domain_error("adaptive_simpson: reversed interval");
    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b)
            cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    detail::SimpsonState<std::remove_reference_t<F>> st{f, tol, max_depth};
    const double length = b - a;
    if (length == 0.0)
        return {};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (hi <= lo)
            continue;
        const double m = 0.5 * (lo + hi);
        const double flo = st.eval(lo);
        const double fm = st.eval(m);
        const double fhi = st.eval(std::nextafter(hi, lo));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        st.recurse(lo, flo, m, fm, hi, fhi, whole, tol * (hi - lo) / length, 0);
    }
    if (st.failed)
        throw accuracy_error("adaptive_simpson: target tolerance " + std::to_string(tol) + " not reached");
    return st.result;
}

/// Running integral of uniformly spaced samples by the trapezoid rule.
inline std::vector<double> cumulative_trapezoid(std::span<const double> f, double dt) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * dt * (f[i - 1] + f[i]);
    return out;
}

/// Running integral by piecewise cubic interpolation through the four nearest
/// samples (fourth order). Falls back to trapezoids for fewer than 4 samples.
inline std::vector<double> cumulative_cubic(std::span<const double> f, double dt) {
    const std::size_t n = f.size();
    if (n < 4)
        return cumulative_trapezoid(f, dt);
    std::vector<double> out(n, 0.0);
    const double w = dt / 24.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i == 0)
            panel = w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        else if (i + 2 == n)
            panel = w * (f[i - 2] - 5.0 * f[i - 1] + 19.0 * f[i] + 9.0 * f[i + 1]);
        else
            panel = w * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
        out[i + 1] = out[i] + panel;
    }
    return out;
}

/// Step-halving error estimate for cumulative_trapezoid: compares the fine
/// running integral with the one on every other sample, |T_h - T_2h| / 3.
inline double trapezoid_halving_error(std::span<const double> f, double dt) {
    const std::vector<double> fine = cumulative_trapezoid(f, dt);
    std::vector<double> coarse_f;
    for (std::size_t i = 0; i < f.size(); i += 2)
        coarse_f.push_back(f[i]);
    const std::vector<double> coarse = cumulative_trapezoid(coarse_f, 2.0 * dt);
    double err = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
        err = std::max(err, std::abs(fine[2 * i] - coarse[i]) / 3.0);
    return err;
}

} // namespace mnc
