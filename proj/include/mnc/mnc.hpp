#pragma once

// Measures of noncompactness on the structured class. Every measure here
// factors through the radii embedding: mu(B) = F(v_embed(co B)) for a convex
// monotone F on the positive cone with F(0) = 0.

#include "mnc/errors.hpp"
#include "mnc/phi.hpp"
#include "mnc/structured_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mnc {

enum class MncKind { hausdorff, convex_of_radii, weighted_sup, sum };

// Axiom tiers, each including the requirements of the previous one.
enum class MncClass { convex = 0, sublinear = 1, homogeneous = 2, regular = 3 };

inline const char* to_string(MncKind k) {
    switch (k) {
    case MncKind::hausdorff: return "hausdorff";
    case MncKind::convex_of_radii: return "convex_of_radii";
    case MncKind::weighted_sup: return "weighted_sup";
    case MncKind::sum: return "sum";
    }
    return "?";
}

inline const char* to_string(MncClass c) {
    switch (c) {
    case MncClass::convex: return "convex";
    case MncClass::sublinear: return "sublinear";
    case MncClass::homogeneous: return "homogeneous";
    case MncClass::regular: return "regular";
    }
    return "?";
}

inline bool at_least(MncClass have, MncClass need) { return static_cast<int>(have) >= static_cast<int>(need); }

struct MncSpec {
    MncKind kind = MncKind::hausdorff;
    std::optional<Phi> phi;                   // convex_of_radii
    std::vector<std::vector<double>> weights; // weighted_sup

    static MncSpec hausdorff() { return {MncKind::hausdorff, std::nullopt, {}}; }
    static MncSpec sum() { return {MncKind::sum, std::nullopt, {}}; }
    static MncSpec weighted_sup(std::vector<std::vector<double>> f) { return {MncKind::weighted_sup, std::nullopt, std::move(f)}; }
    static MncSpec convex_of_radii(Phi p) { return {MncKind::convex_of_radii, std::move(p), {}}; }
};

class Mnc {
public:
    const MncSpec& spec() const noexcept { return spec_; }
    MncClass declared_class() const noexcept { return declared_; }

    /// Blocks the measure requires, or 0 if it works for any k.
    std::size_t blocks() const noexcept { return blocks_; }

    bool is_sublinear() const noexcept { return at_least(declared_, MncClass::sublinear); }

    /// F(v): the scalarization of a radii vector.
    double from_radii(const VElement& v) const {
        if (blocks_ != 0 && v.size() != blocks_)
            throw domain_error("mnc: expects " + std::to_string(blocks_) + " blocks, got " +
                               std::to_string(v.size()));
        switch (spec_.kind) {
        case MncKind::hausdorff:
            return v.norm();
        case MncKind::sum: {
            double s = 0.0;
            for (double r : v.radii)
                s += r;
            return s;
        }
        case MncKind::weighted_sup:
            return functional_sup(FunctionalSet{spec_.weights}, v);
        case MncKind::convex_of_radii:
            return (*spec_.phi)(v);
        }
        return 0.0;
    }

    std::string describe() const {
        std::string s = to_string(spec_.kind);
        if (spec_.phi)
            s += "[" + spec_.phi->describe() + "]";
        return s;
    }

private:
    friend Mnc make_mnc(const MncSpec&);
    friend Mnc make_mnc_unchecked(const MncSpec&, MncClass);

    Mnc(MncSpec spec, MncClass declared, std::size_t blocks)
        : spec_(std::move(spec)), declared_(declared), blocks_(blocks) {}

    MncSpec spec_;
    MncClass declared_;
    std::size_t blocks_;
};

namespace detail {

inline std::size_t spec_blocks(const MncSpec& spec) {
    switch (spec.kind) {
    case MncKind::weighted_sup: {
        if (spec.weights.empty())
            throw construction_error("weighted_sup: weight set F is empty");
        const std::size_t k = spec.weights.front().size();
        for (const auto& w : spec.weights) {
            if (w.size() != k || k == 0)
                throw construction_error("weighted_sup: weight vectors must share a nonzero length");
            for (double x : w)
                if (!std::isfinite(x) || x < 0.0)
                    throw construction_error("weighted_sup: weights must be finite and >= 0");
        }
        return k;
    }
    case MncKind::convex_of_radii:
        if (!spec.phi)
            throw construction_error("convex_of_radii: phi missing");
        return spec.phi->required_length();
    default:
        return 0;
    }
}

// Sampled convexity and monotonicity of phi on the orthant.
inline void sample_phi_shape(const Phi& phi, std::size_t k) {
    std::mt19937_64 rng(0x5eed);
    auto draw = [&] {
        VElement v{std::vector<double>(k)};
        for (double& r : v.radii)
            r = static_cast<double>(rng() % 4097) / 1024.0;
        return v;
    };
    for (int trial = 0; trial < 256; ++trial) {
        const VElement u = draw();
        const VElement w = draw();
        const double lambda = static_cast<double>(rng() % 17) / 16.0;
        const VElement mix = lambda * u + (1.0 - lambda) * w;
        const double lhs = phi(mix);
        const double rhs = lambda * phi(u) + (1.0 - lambda) * phi(w);
        if (lhs > rhs + 1e-12 * (1.0 + std::abs(rhs)))
            throw construction_error("phi fails the sampled convexity check");
        VElement up = u;
        for (std::size_t j = 0; j < k; ++j)
            up.radii[j] = std::max(u.radii[j], w.radii[j]);
        if (phi(up) + 1e-12 * (1.0 + std::abs(phi(up))) < phi(u))
            throw construction_error("phi fails the sampled monotonicity check");
    }
}

inline MncClass derive_class(const MncSpec& spec) {
    switch (spec.kind) {
    case MncKind::hausdorff:
        return MncClass::regular;
    case MncKind::sum:
        return MncClass::homogeneous;
    case MncKind::weighted_sup: {
        const bool single = std::all_of(spec.weights.begin(), spec.weights.end(), [](const auto& w) {
            return std::count_if(w.begin(), w.end(), [](double x) { return x != 0.0; }) <= 1;
        });
        return single ? MncClass::regular : MncClass::homogeneous;
    }
    case MncKind::convex_of_radii: {
        const auto d = spec.phi->homogeneity_degree();
        if (d && *d == 1.0)
            return spec.phi->preserves_max() ? MncClass::regular : MncClass::homogeneous;
        return MncClass::convex;
    }
    }
    return MncClass::convex;
}

} // namespace detail

/// Validate a spec and derive its axiom tier.
inline Mnc make_mnc(const MncSpec& spec) {
    const std::size_t k = detail::spec_blocks(spec);
    const std::size_t probe = k == 0 ? 3 : k;
    if (spec.kind == MncKind::weighted_sup) {
        for (std::size_t j = 0; j < k; ++j) {
            const bool covered = std::any_of(spec.weights.begin(), spec.weights.end(),
                                             [j](const auto& w) { return w[j] > 0.0; });
            if (!covered)
                throw construction_error("weighted_sup: no weight is positive on block " + std::to_string(j) +
                                         ", so mu = 0 would not imply compactness");
        }
    }
    if (spec.kind == MncKind::convex_of_radii) {
        const Phi& phi = *spec.phi;
        if (phi(VElement{std::vector<double>(probe, 0.0)}) != 0.0 || phi.has_constant())
            throw construction_error("phi(0) must be 0");
        for (std::size_t j = 0; j < probe; ++j)
            if (!phi.positive_on(j))
                throw construction_error("phi vanishes along block " + std::to_string(j) +
                                         ", so mu = 0 would not imply compactness");
        detail::sample_phi_shape(phi, probe);
    }
    return Mnc(spec, detail::derive_class(spec), k);
}

/// Build a measure with an asserted tier and no validation. Exists for
/// negative controls of the axiom checker.
inline Mnc make_mnc_unchecked(const MncSpec& spec, MncClass declared) {
    std::size_t k = 0;
    if (spec.kind == MncKind::weighted_sup && !spec.weights.empty())
        k = spec.weights.front().size();
    if (spec.kind == MncKind::convex_of_radii && spec.phi)
        k = spec.phi->required_length();
    return Mnc(spec, declared, k);
}

/// mu(A) = F(v_embed(co A)).
inline double mnc_eval(const Mnc& m, const StructuredSet& a) { return m.from_radii(v_embed(convex_hull(a))); }

struct WitnessReport {
    double r = 0.0;            // max of the two radii norms
    double c_r = 0.0;          // mu((1 + r) B_X)
    double lhs = 0.0;          // |mu(A) - mu(B)|
    double distance = 0.0;     // ||v_embed(A) - v_embed(B)||
    double rhs = 0.0;          // c_r * distance
    bool holds = false;
    std::optional<double> c_sublinear; // mu(B_X), sublinear measures only
    std::optional<bool> holds_sublinear;
};

/// Check the local Lipschitz bound of F between two sets.
inline WitnessReport lipschitz_witness(const Mnc& m, const StructuredSet& a, const StructuredSet& b,
                                       double tolerance = 1e-12) {
    if (a.block_count() != b.block_count())
        throw domain_error("lipschitz_witness: block counts differ");
    const std::size_t k = a.block_count();
    const VElement va = v_embed(a);
    const VElement vb = v_embed(b);
    WitnessReport w;
    w.r = std::max(va.norm(), vb.norm());
    const StructuredSet ball = StructuredSet::unit_ball(k);
    w.c_r = mnc_eval(m, scale(ball, 1.0 + w.r));
    w.lhs = std::abs(m.from_radii(va) - m.from_radii(vb));
    w.distance = sup_distance(va, vb);
    w.rhs = w.c_r * w.distance;
    w.holds = w.lhs <= w.rhs + tolerance;
    if (m.is_sublinear()) {
        w.c_sublinear = mnc_eval(m, ball);
        w.holds_sublinear = w.lhs <= *w.c_sublinear * w.distance + tolerance;
    }
    return w;
}

/// A finite set M of positive functionals with mu(A) = max_M <w, v_embed(A)>.
inline FunctionalSet represent_sublinear(const Mnc& m, std::size_t k) {
    if (!m.is_sublinear())
        throw unsupported_input("represent_sublinear: measure is not sublinear");
    if (m.blocks() != 0 && m.blocks() != k)
        throw domain_error("represent_sublinear: block count mismatch");
    switch (m.spec().kind) {
    case MncKind::hausdorff:
        return *Phi::norm(NormOrder::inf).functionals(k);
    case MncKind::sum:
        return FunctionalSet{{std::vector<double>(k, 1.0)}};
    case MncKind::weighted_sup:
        return FunctionalSet{m.spec().weights};
    case MncKind::convex_of_radii: {
        auto f = m.spec().phi->functionals(k);
        if (!f)
            throw unsupported_input("represent_sublinear: phi has no finite functional representation");
        return *f;
    }
    }
    throw unsupported_input("represent_sublinear: unknown kind");
}

} // namespace mnc
