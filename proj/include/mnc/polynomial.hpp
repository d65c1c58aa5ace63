#pragma once

// Piecewise polynomials on [0, a] in the power basis of the global variable.
// Evaluation is right-continuous at breakpoints; the right end belongs to the
// last piece.

#include "mnc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace mnc {

/// Closed interval [lo, hi].
struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

class PiecewisePolynomial {
public:
    PiecewisePolynomial() : PiecewisePolynomial({0.0, 1.0}, {{0.0}}) {}

    PiecewisePolynomial(std::vector<double> breakpoints, std::vector<std::vector<double>> pieces)
        : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2 || pieces_.size() != breaks_.size() - 1)
            throw construction_error("piecewise polynomial: need n+1 breakpoints for n pieces");
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (!(breaks_[i] < breaks_[i + 1]))
                throw construction_error("piecewise polynomial: breakpoints must increase strictly");
        for (auto& p : pieces_) {
            if (p.empty())
                p.push_back(0.0);
            for (double c : p)
                if (!std::isfinite(c))
                    throw construction_error("piecewise polynomial: non-finite coefficient");
        }
    }

    static PiecewisePolynomial constant(double c, double a) { return PiecewisePolynomial({0.0, a}, {{c}}); }

    /// c0 + c1 s + ... on the single piece [0, a].
    static PiecewisePolynomial polynomial(std::vector<double> coefs, double a) {
        return PiecewisePolynomial({0.0, a}, {std::move(coefs)});
    }

    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<std::vector<double>>& pieces() const noexcept { return pieces_; }
    double start() const noexcept { return breaks_.front(); }
    double end() const noexcept { return breaks_.back(); }

    std::size_t piece_index(double s) const {
        if (s < start() || s > end())
            throw domain_error("piecewise polynomial: argument outside the domain");
        const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
        return std::min(i == 0 ? 0 : i - 1, pieces_.size() - 1);
    }

    static double horner(const std::vector<double>& c, double s) {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;)
            v = v * s + c[i];
        return v;
    }

    double operator()(double s) const { return horner(pieces_[piece_index(s)], s); }

    /// Limit from the left at breakpoint i (i >= 1).
    double left_limit(std::size_t i) const { return horner(pieces_[i - 1], breaks_[i]); }

    /// Exact integral over [lo, hi] from the piecewise antiderivative.
    double integral(double lo, double hi) const {
        if (lo < start() || hi > end() || lo > hi)
            throw domain_error("piecewise polynomial: integration bounds outside the domain");
        double total = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const double a = std::max(lo, breaks_[i]);
            const double b = std::min(hi, breaks_[i + 1]);
            if (a >= b)
                continue;
            total += antiderivative(pieces_[i], b) - antiderivative(pieces_[i], a);
        }
        return total;
    }

    bool is_piecewise_constant() const {
        return std::all_of(pieces_.begin(), pieces_.end(), [](const std::vector<double>& p) {
            return std::all_of(p.begin() + 1, p.end(), [](double c) { return c == 0.0; });
        });
    }

    bool is_continuous(double tol = 1e-12) const {
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            const double left = left_limit(i);
            const double right = horner(pieces_[i], breaks_[i]);
            if (std::abs(left - right) > tol * (1.0 + std::abs(left)))
                return false;
        }
        return true;
    }

    /// Enclosure of one piece over [lo, hi] by interval Horner.
    static Range enclose(const std::vector<double>& c, double lo, double hi) {
        Range v{0.0, 0.0};
        for (std::size_t i = c.size(); i-- > 0;) {
            const double p[4] = {v.lo * lo, v.lo * hi, v.hi * lo, v.hi * hi};
            v.lo = *std::min_element(p, p + 4) + c[i];
            v.hi = *std::max_element(p, p + 4) + c[i];
        }
        return v;
    }

    /// Certify p >= -tol on the whole domain by bisection with interval
    /// bounds. Returns false as soon as a point with p < -tol is found.
    bool certify_nonnegative(double tol = 1e-12) const {
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (!nonnegative_on(pieces_[i], breaks_[i], breaks_[i + 1], tol, 0))
                return false;
        return true;
    }

    /// Enclosure of the whole function over [lo, hi].
    Range bounds(double lo, double hi) const {
        Range out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const double a = std::max(lo, breaks_[i]);
            const double b = std::min(hi, breaks_[i + 1]);
            if (a > b)
                continue;
            const Range r = enclose(pieces_[i], a, b);
            out.lo = std::min(out.lo, r.lo);
            out.hi = std::max(out.hi, r.hi);
        }
        return out;
    }

    PiecewisePolynomial scaled(double k) const {
        auto p = pieces_;
        for (auto& c : p)
            for (double& x : c)
                x *= k;
        return PiecewisePolynomial(breaks_, std::move(p));
    }

private:
    static double antiderivative(const std::vector<double>& c, double s) {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;)
            v = v * s + c[i] / static_cast<double>(i + 1);
        return v * s;
    }

    static bool nonnegative_on(const std::vector<double>& c, double lo, double hi, double tol, int depth) {
        const Range r = enclose(c, lo, hi);
        if (r.lo >= -tol)
            return true;
        if (horner(c, lo) < -tol || horner(c, hi) < -tol || horner(c, 0.5 * (lo + hi)) < -tol)
            return false;
        if (depth >= 40)
            return true; // the enclosure is within rounding of zero
        const double mid = 0.5 * (lo + hi);
        return nonnegative_on(c, lo, mid, tol, depth + 1) && nonnegative_on(c, mid, hi, tol, depth + 1);
    }

    std::vector<double> breaks_;
    std::vector<std::vector<double>> pieces_;
};

} // namespace mnc
