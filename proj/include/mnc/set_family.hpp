#pragma once

// Set-valued paths s -> G(s) on [0, a] built from piecewise-polynomial
// centers and radii, their Aumann integrals, and the verifier for the
// integral inequalities
//
//     mu(int_0^t G) <= (1/t) int_0^t mu(t G(s)) ds       (every convex mu)
//     mu(int_0^t G) <=       int_0^t mu(G(s)) ds         (t <= min(1, a), or mu sublinear)
//
// G(s) is a single box-with-tail body, and the family denotes all measurable
// selections of s -> G(s). Integrating all selections of a box-valued path
// gives the box with integrated center and integrated radii.

#include "mnc/errors.hpp"
#include "mnc/mnc.hpp"
#include "mnc/polynomial.hpp"
#include "mnc/quadrature.hpp"
#include "mnc/structured_set.hpp"
#include "mnc/support.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace mnc {

enum class RegularityTag { equicontinuous, equiregulated, uniformly_measurable };

inline const char* to_string(RegularityTag t) {
    switch (t) {
    case RegularityTag::equicontinuous: return "equicontinuous";
    case RegularityTag::equiregulated: return "equiregulated";
    case RegularityTag::uniformly_measurable: return "uniformly_measurable";
    }
    return "?";
}

struct FamilyBlock {
    std::vector<PiecewisePolynomial> center;
    std::vector<PiecewisePolynomial> head_radii;
    PiecewisePolynomial tail_radius;
};

class SetFamily {
public:
    SetFamily(double horizon, std::vector<FamilyBlock> blocks) : a_(horizon), blocks_(std::move(blocks)) {
        if (!(a_ > 0.0) || !std::isfinite(a_))
            throw construction_error("set family: interval length must be positive");
        if (blocks_.empty())
            throw construction_error("set family: needs at least one block");
        bool continuous = true;
        bool steps = true;
        auto check = [&](const PiecewisePolynomial& p, bool radius, const std::string& what) {
            if (p.start() != 0.0 || p.end() != a_)
                throw construction_error("set family: " + what + " must be defined on [0, a]");
            if (radius && !p.certify_nonnegative())
                throw construction_error("set family: " + what + " takes negative values");
            continuous = continuous && p.is_continuous();
            steps = steps && p.is_piecewise_constant();
            for (double b : p.breakpoints())
                breaks_.push_back(b);
        };
        for (std::size_t j = 0; j < blocks_.size(); ++j) {
            const FamilyBlock& b = blocks_[j];
            const std::string where = "block " + std::to_string(j);
            if (b.center.size() != b.head_radii.size())
                throw construction_error("set family: " + where + " center and head radius counts differ");
            for (const auto& p : b.center)
                check(p, false, where + " center");
            for (const auto& p : b.head_radii)
                check(p, true, where + " head radius");
            check(b.tail_radius, true, where + " tail radius");
        }
        std::sort(breaks_.begin(), breaks_.end());
        breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
        tag_ = continuous ? RegularityTag::equicontinuous
                          : steps ? RegularityTag::uniformly_measurable : RegularityTag::equiregulated;
    }

    double horizon() const noexcept { return a_; }
    const std::vector<FamilyBlock>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    RegularityTag regularity_tag() const noexcept { return tag_; }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }

    BoxTail box_at(double s) const {
        if (s < 0.0 || s > a_)
            throw domain_error("set family: s outside [0, a]");
        BoxTail out;
        for (const FamilyBlock& b : blocks_) {
            BlockBox x;
            for (const auto& p : b.center)
                x.center.push_back(p(s));
            for (const auto& p : b.head_radii)
                x.head_radii.push_back(std::max(0.0, p(s)));
            x.tail_radius = std::max(0.0, b.tail_radius(s));
            out.blocks.push_back(std::move(x));
        }
        return out;
    }

    VElement tail_radii(double s) const {
        if (s < 0.0 || s > a_)
            throw domain_error("set family: s outside [0, a]");
        VElement v;
        for (const FamilyBlock& b : blocks_)
            v.radii.push_back(std::max(0.0, b.tail_radius(s)));
        return v;
    }

private:
    double a_;
    std::vector<FamilyBlock> blocks_;
    std::vector<double> breaks_;
    RegularityTag tag_ = RegularityTag::equicontinuous;
};

/// G(s).
inline StructuredSet family_eval(const SetFamily& f, double s) { return StructuredSet(f.box_at(s)); }

struct SupportSample {
    double s = 0.0;
    BoxTail box; // sigma_{G(s)}(w) = <w, center> + sum a_i |w_i| + r * tail(w)
};

struct SupportPath {
    std::vector<SupportSample> samples;
    RegularityTag tag = RegularityTag::equicontinuous;
};

/// Closed-form support-function records of G along the sample points,
/// together with the regularity class that makes the support path strongly
/// measurable.
inline SupportPath support_path(const SetFamily& f, const std::vector<double>& sample_points) {
    SupportPath out;
    out.tag = f.regularity_tag();
    for (double s : sample_points)
        out.samples.push_back({s, f.box_at(s)});
    return out;
}

/// int_0^t G(s) ds over all measurable selections.
inline StructuredSet aumann_integral(const SetFamily& f, double t) {
    if (!(t > 0.0) || t > f.horizon())
        throw domain_error("aumann_integral: t must lie in (0, a]");
    BoxTail out;
    for (const FamilyBlock& b : f.blocks()) {
        BlockBox x;
        for (const auto& p : b.center)
            x.center.push_back(p.integral(0.0, t));
        for (const auto& p : b.head_radii)
            x.head_radii.push_back(std::max(0.0, p.integral(0.0, t)));
        x.tail_radius = std::max(0.0, b.tail_radius.integral(0.0, t));
        out.blocks.push_back(std::move(x));
    }
    return StructuredSet(std::move(out));
}

struct InequalityReport {
    double t = 0.0;
    double lhs = 0.0;        // mu of the integral
    double rhs_scaled = 0.0; // (1/t) int_0^t mu(t G(s)) ds
    double rhs_plain = 0.0;  // int_0^t mu(G(s)) ds
    bool holds_scaled = false;
    bool holds_plain = false;
    bool plain_guaranteed = false; // t <= min(1, a) or mu sublinear
    double quadrature_error_bound = 0.0;
};

namespace detail {

inline bool within(double lhs, double rhs, double err) { return lhs <= rhs + err + 1e-12 * (1.0 + std::abs(rhs)); }

} // namespace detail

inline InequalityReport verify_inequality(const Mnc& m, const SetFamily& f, double t, double quad_tol = 1e-9) {
    if (!(t > 0.0) || t > f.horizon())
        throw domain_error("verify_inequality: t must lie in (0, a]");
    InequalityReport r;
    r.t = t;
    r.lhs = mnc_eval(m, aumann_integral(f, t));

    const auto plain = adaptive_simpson([&](double s) { return m.from_radii(f.tail_radii(s)); }, 0.0, t, quad_tol,
                                        f.breakpoints());
    const auto scaled = adaptive_simpson([&](double s) { return m.from_radii(t * f.tail_radii(s)); }, 0.0, t,
                                         quad_tol * t, f.breakpoints());
    r.rhs_plain = plain.value;
    r.rhs_scaled = scaled.value / t;
    r.quadrature_error_bound = std::max(plain.error, scaled.error / t);
    r.holds_scaled = detail::within(r.lhs, r.rhs_scaled, r.quadrature_error_bound);
    r.holds_plain = detail::within(r.lhs, r.rhs_plain, r.quadrature_error_bound);
    r.plain_guaranteed = t <= std::min(1.0, f.horizon()) || m.is_sublinear();
    return r;
}

struct JensenCheck {
    double at_mean = 0.0;   // F of the mean radii vector
    double mean_of = 0.0;   // mean of F along the path
    double error = 0.0;
    bool holds = false;
};

/// F((1/t) int v) <= (1/t) int F(v) for the radii path v(s) of the family.
inline JensenCheck jensen_check(const Mnc& m, const SetFamily& f, double t, double quad_tol = 1e-9) {
    if (!(t > 0.0) || t > f.horizon())
        throw domain_error("jensen_check: t must lie in (0, a]");
    VElement mean;
    for (const FamilyBlock& b : f.blocks())
        mean.radii.push_back(b.tail_radius.integral(0.0, t) / t);
    const auto q = adaptive_simpson([&](double s) { return m.from_radii(f.tail_radii(s)); }, 0.0, t, quad_tol,
                                    f.breakpoints());
    JensenCheck j;
    j.at_mean = m.from_radii(mean);
    j.mean_of = q.value / t;
    j.error = q.error / t;
    j.holds = detail::within(j.at_mean, j.mean_of, j.error);
    return j;
}

} // namespace mnc
