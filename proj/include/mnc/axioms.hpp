#pragma once

// Property-based checker for the measure-of-noncompactness axioms and their
// standard consequences, run on seeded random structured sets.

#include "mnc/mnc.hpp"
#include "mnc/random_sets.hpp"
#include "mnc/structured_set.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mnc {

enum class Property {
    noncompactness,
    monotonicity,
    order_preserving,
    convexification_invariance,
    absolute_homogeneity,
    subadditivity,
    positive_homogeneity,
    convexity,
    density_determination,
    translation_invariance,
    negligibility,
    nested_intersection,
};

inline const char* to_string(Property p) {
    switch (p) {
    case Property::noncompactness: return "noncompactness";
    case Property::monotonicity: return "monotonicity";
    case Property::order_preserving: return "order_preserving";
    case Property::convexification_invariance: return "convexification_invariance";
    case Property::absolute_homogeneity: return "absolute_homogeneity";
    case Property::subadditivity: return "subadditivity";
    case Property::positive_homogeneity: return "positive_homogeneity";
    case Property::convexity: return "convexity";
    case Property::density_determination: return "density_determination";
    case Property::translation_invariance: return "translation_invariance";
    case Property::negligibility: return "negligibility";
    case Property::nested_intersection: return "nested_intersection";
    }
    return "?";
}

/// Whether a tier must satisfy the property. The last four are consequences
/// that every convex measure has.
inline bool required_for(Property p, MncClass c) {
    switch (p) {
    case Property::order_preserving:
        return at_least(c, MncClass::regular);
    case Property::absolute_homogeneity:
        return at_least(c, MncClass::homogeneous);
    case Property::subadditivity:
    case Property::positive_homogeneity:
        return at_least(c, MncClass::sublinear);
    default:
        return true;
    }
}

struct Counterexample {
    std::vector<StructuredSet> sets;
    std::vector<double> scalars; // k or lambda where relevant
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation; // how lhs and rhs were supposed to compare
};

struct PropertyResult {
    Property property;
    bool required = true;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double tolerance = 0.0;
    std::optional<Counterexample> counterexample; // first violation
};

struct AxiomReport {
    std::string mnc;
    MncClass declared = MncClass::convex;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;

    bool passed() const {
        for (const PropertyResult& r : results)
            if (r.required && r.violations > 0)
                return false;
        return true;
    }

    /// First failing required property, in checking order.
    const PropertyResult* first_failure() const {
        for (const PropertyResult& r : results)
            if (r.required && r.violations > 0)
                return &r;
        return nullptr;
    }

    const PropertyResult& result(Property p) const {
        for (const PropertyResult& r : results)
            if (r.property == p)
                return r;
        throw domain_error("axiom report has no such property");
    }
};

namespace detail {

class AxiomRun {
public:
    AxiomRun(const Mnc& m, double tol) : m_(m), tol_(tol) {}

    PropertyResult& slot(Property p) {
        for (PropertyResult& r : results_)
            if (r.property == p)
                return r;
        results_.push_back(PropertyResult{p, required_for(p, m_.declared_class()), 0, 0, 0.0, std::nullopt});
        return results_.back();
    }

    // Records one trial of lhs <rel> rhs.
    void trial(Property p, double lhs, const char* rel, double rhs, std::vector<StructuredSet> sets,
               std::vector<double> scalars = {}) {
        PropertyResult& r = slot(p);
        const double t = tolerance(rhs);
        r.tolerance = std::max(r.tolerance, t);
        ++r.trials;
        const std::string relation(rel);
        bool ok = false;
        if (relation == "==")
            ok = std::abs(lhs - rhs) <= t;
        else if (relation == "<=")
            ok = lhs <= rhs + t;
        else if (relation == ">=")
            ok = lhs + t >= rhs;
        else if (relation == ">")
            ok = lhs > rhs;
        if (!ok) {
            ++r.violations;
            if (!r.counterexample)
                r.counterexample = Counterexample{std::move(sets), std::move(scalars), lhs, rhs, relation};
        }
    }

    double mu(const StructuredSet& s) const { return mnc_eval(m_, s); }

    std::vector<PropertyResult> take() { return std::move(results_); }

private:
    double tolerance(double rhs) const { return tol_ == 0.0 ? 0.0 : tol_ * (1.0 + std::abs(rhs)); }

    const Mnc& m_;
    double tol_;
    std::vector<PropertyResult> results_;
};

// Shrink every radius of s by the factor f <= 1; the result lies inside s.
inline StructuredSet shrink_radii(const StructuredSet& s, double f) {
    std::vector<BoxTail> ms = s.members();
    for (BoxTail& m : ms)
        for (BlockBox& b : m.blocks) {
            for (double& r : b.head_radii)
                r *= f;
            b.tail_radius *= f;
        }
    return StructuredSet(std::move(ms), s.convexified());
}

} // namespace detail

/// Relative tolerance used by check_axioms: zero for the Hausdorff measure,
/// whose evaluation involves no rounding beyond what the set algebra already
/// does identically on both sides; 1e-12 for the other kinds.
inline double axiom_tolerance(const Mnc& m) { return m.spec().kind == MncKind::hausdorff ? 0.0 : 1e-12; }

inline AxiomReport check_axioms(const Mnc& m, std::size_t sample_count, std::uint64_t seed, std::size_t blocks = 3) {
    if (sample_count < 1)
        throw domain_error("check_axioms: sample_count must be >= 1");
    if (m.blocks() != 0)
        blocks = m.blocks();

    SetSampler gen(seed, blocks);
    detail::AxiomRun run(m, axiom_tolerance(m));
    const StructuredSet ball = StructuredSet::unit_ball(blocks);

    // Fix the reporting order.
    for (Property p : {Property::noncompactness, Property::monotonicity, Property::order_preserving,
                       Property::convexification_invariance, Property::absolute_homogeneity,
                       Property::subadditivity, Property::positive_homogeneity, Property::convexity,
                       Property::density_determination, Property::translation_invariance,
                       Property::negligibility, Property::nested_intersection})
        run.slot(p);

    for (std::size_t s = 0; s < sample_count; ++s) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const StructuredSet c = gen.set(true);
        const StructuredSet nc = gen.noncompact_set();
        const double mua = run.mu(a);
        const double mub = run.mu(b);

        // mu = 0 exactly on relatively compact sets
        run.trial(Property::noncompactness, run.mu(c), "==", 0.0, {c});
        run.trial(Property::noncompactness, run.mu(nc), ">", 0.0, {nc});

        const StructuredSet big = gen.inflate(a);
        run.trial(Property::monotonicity, run.mu(big), ">=", mua, {big, a});
        const StructuredSet with_b = set_union(a, b);
        run.trial(Property::monotonicity, run.mu(with_b), ">=", mua, {with_b, a});

        run.trial(Property::order_preserving, run.mu(set_union(a, b)), "==", std::max(mua, mub), {a, b});

        run.trial(Property::convexification_invariance, run.mu(convex_hull(a)), "==",
                  run.mu(StructuredSet(a.members(), false)), {a});

        const double k = gen.scalar();
        run.trial(Property::absolute_homogeneity, run.mu(scale(a, k)), "==", std::abs(k) * mua, {a}, {k});

        run.trial(Property::subadditivity, run.mu(minkowski_sum(a, b)), "<=", mua + mub, {a, b});

        const double kp = gen.nonnegative_scalar();
        run.trial(Property::positive_homogeneity, run.mu(scale(a, kp)), "==", kp * mua, {a}, {kp});

        const double lam = gen.lambda();
        const StructuredSet mix = minkowski_sum(scale(a, lam), scale(b, 1.0 - lam));
        run.trial(Property::convexity, run.mu(mix), "<=", lam * mua + (1.0 - lam) * mub, {a, b}, {lam});

        // Closure: the radii-shrunk copies exhaust a dense subset of A, and
        // their measures approach mu(A) at the local Lipschitz rate.
        {
            const double r = v_embed(a).norm();
            const double c_r = run.mu(scale(ball, 1.0 + r));
            for (int n = 1; n <= 8; ++n) {
                const double f = 1.0 - std::ldexp(1.0, -n);
                const double inner = run.mu(detail::shrink_radii(a, f));
                run.trial(Property::density_determination, inner, "<=", mua, {a}, {f});
                run.trial(Property::density_determination, mua - inner, "<=", c_r * std::ldexp(1.0, -n) * r, {a}, {f});
            }
        }

        run.trial(Property::translation_invariance, run.mu(minkowski_sum(a, c)), "==", mua, {a, c});
        run.trial(Property::negligibility, run.mu(set_union(a, c)), "==", mua, {a, c});
        run.trial(Property::negligibility, run.mu(convexify_union(a, c)), "==", mua, {a, c});

        // Nested boxes B_{n+1} c B_n with shrinking radii and drifting
        // centers. mu(B_n) -> 0 and the limit center lies in every B_n.
        {
            BoxTail cur = gen.box();
            std::vector<BoxTail> chain{cur};
            for (int n = 0; n < 40; ++n) {
                BoxTail next = cur;
                for (BlockBox& blk : next.blocks) {
                    for (std::size_t i = 0; i < blk.head_size(); ++i) {
                        const double half = 0.5 * blk.head_radii[i];
                        const double u = gen.dyadic(-1.0, 1.0, 4);
                        blk.center[i] += u * half;
                        blk.head_radii[i] = half;
                    }
                    blk.tail_radius *= 0.5;
                }
                chain.push_back(next);
                cur = std::move(next);
            }
            bool nested = true;
            double prev = run.mu(StructuredSet(chain.front()));
            for (std::size_t n = 1; n < chain.size(); ++n) {
                nested = nested && box_contains(chain[n - 1], chain[n]);
                const double now = run.mu(StructuredSet(chain[n]));
                nested = nested && now <= prev + 1e-12 * (1.0 + prev);
                prev = now;
            }
            const double first = run.mu(StructuredSet(chain.front()));
            // the limit center, as a degenerate box
            BoxTail limit = chain.back();
            for (BlockBox& blk : limit.blocks) {
                std::fill(blk.head_radii.begin(), blk.head_radii.end(), 0.0);
                blk.tail_radius = 0.0;
            }
            bool inside = true;
            for (const BoxTail& bn : chain)
                inside = inside && box_contains(bn, limit);
            run.trial(Property::nested_intersection, prev, "<=", std::ldexp(first, -30), {StructuredSet(chain.front())});
            run.trial(Property::nested_intersection, (nested && inside) ? 1.0 : 0.0, "==", 1.0,
                      {StructuredSet(chain.front())});
        }
    }

    AxiomReport report;
    report.mnc = m.describe();
    report.declared = m.declared_class();
    report.samples = sample_count;
    report.seed = seed;
    report.results = run.take();
    return report;
}

} // namespace mnc
