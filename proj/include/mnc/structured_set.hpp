#pragma once

// The structured set class: finite unions of box-with-tail bodies in a
// k-block sequence-space model.
//
// The ambient space is the l-infinity sum of k copies of c0. A point has one
// null sequence per block and norm max_j sup_i |x_{j,i}|. A box-with-tail body
// is, per block j,
//
//     { x_j in c0 : |x_{j,i} - c_{j,i}| <= a_{j,i} for i < N_j,
//                   |x_{j,i}|          <= r_j     for i >= N_j }
//
// i.e. a finite "head" box of N_j coordinates plus a uniform tail ball of
// radius r_j on every remaining coordinate. The head is compact, the tail ball
// is not (for r_j > 0), which is what makes the Hausdorff measure of
// noncompactness of these sets exactly computable: it is the largest tail
// radius.

#include "mnc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mnc {

/// One block of a box-with-tail body.
struct BlockBox {
    std::vector<double> center;     // head coordinates; the tail center is 0
    std::vector<double> head_radii; // same length as center
    double tail_radius = 0.0;

    std::size_t head_size() const noexcept { return head_radii.size(); }

    double center_at(std::size_t i) const noexcept { return i < center.size() ? center[i] : 0.0; }

    // Coordinates past the head are governed by the tail radius.
    double radius_at(std::size_t i) const noexcept {
        return i < head_radii.size() ? head_radii[i] : tail_radius;
    }

    // Same set, with the head extended to n coordinates.
    BlockBox aligned(std::size_t n) const {
        BlockBox out;
        const std::size_t m = std::max(n, head_size());
        out.center.resize(m);
        out.head_radii.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            out.center[i] = center_at(i);
            out.head_radii[i] = radius_at(i);
        }
        out.tail_radius = tail_radius;
        return out;
    }

    bool operator==(const BlockBox&) const = default;
};

/// A single box-with-tail body: one BlockBox per block.
struct BoxTail {
    std::vector<BlockBox> blocks;

    std::size_t block_count() const noexcept { return blocks.size(); }

    bool is_compact() const noexcept {
        return std::all_of(blocks.begin(), blocks.end(),
                           [](const BlockBox& b) { return b.tail_radius == 0.0; });
    }

    void validate() const {
        if (blocks.empty())
            throw construction_error("box-with-tail body needs at least one block");
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const BlockBox& b = blocks[j];
            const std::string where = "block " + std::to_string(j);
            if (b.center.size() != b.head_radii.size())
                throw construction_error(where + ": center and head_radii lengths differ");
            for (double c : b.center)
                if (!std::isfinite(c))
                    throw construction_error(where + ": non-finite center coordinate");
            for (double a : b.head_radii)
                if (!std::isfinite(a) || a < 0.0)
                    throw construction_error(where + ": head radius must be finite and >= 0");
            if (!std::isfinite(b.tail_radius) || b.tail_radius < 0.0)
                throw construction_error(where + ": tail radius must be finite and >= 0");
        }
    }

    bool operator==(const BoxTail&) const = default;

    /// Single box, identical in every block.
    static BoxTail uniform(std::size_t k, std::vector<double> center, std::vector<double> head_radii,
                           double tail_radius) {
        BoxTail out;
        out.blocks.assign(k, BlockBox{std::move(center), std::move(head_radii), tail_radius});
        return out;
    }
};

/// Closed unit ball of the model: empty heads, tail radius 1 in every block.
inline BoxTail unit_ball_box(std::size_t k) { return BoxTail::uniform(k, {}, {}, 1.0); }

/// Outer contains inner, for single bodies.
inline bool box_contains(const BoxTail& outer, const BoxTail& inner) {
    if (outer.block_count() != inner.block_count())
        throw domain_error("box_contains: block counts differ");
    for (std::size_t j = 0; j < outer.block_count(); ++j) {
        const BlockBox& o = outer.blocks[j];
        const BlockBox& in = inner.blocks[j];
        const std::size_t n = std::max(o.head_size(), in.head_size());
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(in.center_at(i) - o.center_at(i)) + in.radius_at(i) > o.radius_at(i))
                return false;
        if (in.tail_radius > o.tail_radius)
            return false;
    }
    return true;
}

/// A nonempty finite union of box-with-tail bodies, optionally denoting the
/// closed convex hull of that union.
class StructuredSet {
public:
    StructuredSet(std::vector<BoxTail> members, bool convexified)
        : members_(std::move(members)), convexified_(convexified) {
        if (members_.empty())
            throw domain_error("structured set must have at least one member");
        const std::size_t k = members_.front().block_count();
        for (const BoxTail& m : members_) {
            m.validate();
            if (m.block_count() != k)
                throw construction_error("all members must have the same number of blocks");
        }
    }

    explicit StructuredSet(BoxTail single) : StructuredSet(std::vector<BoxTail>{std::move(single)}, true) {}

    const std::vector<BoxTail>& members() const noexcept { return members_; }
    bool convexified() const noexcept { return convexified_; }
    std::size_t block_count() const noexcept { return members_.front().block_count(); }

    // A single box is convex whatever the flag says.
    bool is_convex() const noexcept { return convexified_ || members_.size() == 1; }

    bool is_compact() const noexcept {
        return std::all_of(members_.begin(), members_.end(), [](const BoxTail& m) { return m.is_compact(); });
    }

    /// Longest head over all members, per block.
    std::vector<std::size_t> head_extent() const {
        std::vector<std::size_t> n(block_count(), 0);
        for (const BoxTail& m : members_)
            for (std::size_t j = 0; j < n.size(); ++j)
                n[j] = std::max(n[j], m.blocks[j].head_size());
        return n;
    }

    bool operator==(const StructuredSet&) const = default;

    static StructuredSet unit_ball(std::size_t k) { return StructuredSet(unit_ball_box(k)); }

    /// {x} for a point given by its head coordinates in block 0.
    static StructuredSet point(std::size_t k, std::vector<double> coords) {
        BoxTail b = BoxTail::uniform(k, {}, {}, 0.0);
        b.blocks[0].head_radii.assign(coords.size(), 0.0);
        b.blocks[0].center = std::move(coords);
        return StructuredSet(std::move(b));
    }

    /// Convex hull of finitely many points (zero-radius boxes) in block 0.
    static StructuredSet polytope(std::size_t k, const std::vector<std::vector<double>>& vertices) {
        std::vector<BoxTail> ms;
        for (const auto& v : vertices)
            ms.push_back(point(k, v).members().front());
        return StructuredSet(std::move(ms), true);
    }

private:
    std::vector<BoxTail> members_;
    bool convexified_ = true;
};

/// Per-block quotient radii: the realization of the order isometry image of a
/// set in the positive cone.
struct VElement {
    std::vector<double> radii;

    double norm() const noexcept {
        double n = 0.0;
        for (double r : radii)
            n = std::max(n, r);
        return n;
    }

    std::size_t size() const noexcept { return radii.size(); }
    bool operator==(const VElement&) const = default;
};

inline VElement operator*(double k, const VElement& v) {
    VElement out{v.radii};
    for (double& r : out.radii)
        r *= k;
    return out;
}

inline VElement operator+(const VElement& u, const VElement& v) {
    if (u.size() != v.size())
        throw domain_error("VElement sizes differ");
    VElement out{u.radii};
    for (std::size_t j = 0; j < out.radii.size(); ++j)
        out.radii[j] += v.radii[j];
    return out;
}

/// Sup-norm distance between two radii vectors.
inline double sup_distance(const VElement& u, const VElement& v) {
    if (u.size() != v.size())
        throw domain_error("VElement sizes differ");
    double d = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        d = std::max(d, std::abs(u.radii[j] - v.radii[j]));
    return d;
}

inline BoxTail box_sum(const BoxTail& a, const BoxTail& b) {
    BoxTail out;
    out.blocks.resize(a.block_count());
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        const std::size_t n = std::max(a.blocks[j].head_size(), b.blocks[j].head_size());
        BlockBox x = a.blocks[j].aligned(n);
        const BlockBox y = b.blocks[j].aligned(n);
        for (std::size_t i = 0; i < n; ++i) {
            x.center[i] += y.center[i];
            x.head_radii[i] += y.head_radii[i];
        }
        x.tail_radius += y.tail_radius;
        out.blocks[j] = std::move(x);
    }
    return out;
}

/// A (+) B: union over member pairs of the box sums.
inline StructuredSet minkowski_sum(const StructuredSet& a, const StructuredSet& b) {
    if (a.block_count() != b.block_count())
        throw domain_error("minkowski_sum: block counts differ");
    std::vector<BoxTail> ms;
    ms.reserve(a.members().size() * b.members().size());
    for (const BoxTail& x : a.members())
        for (const BoxTail& y : b.members())
            ms.push_back(box_sum(x, y));
    return StructuredSet(std::move(ms), a.convexified() && b.convexified());
}

/// kA: centers times k, radii times |k|.
inline StructuredSet scale(const StructuredSet& a, double k) {
    const double ak = std::abs(k);
    std::vector<BoxTail> ms = a.members();
    for (BoxTail& m : ms)
        for (BlockBox& b : m.blocks) {
            for (double& c : b.center)
                c *= k;
            for (double& r : b.head_radii)
                r *= ak;
            b.tail_radius *= ak;
        }
    return StructuredSet(std::move(ms), a.convexified());
}

/// co(A u B).
inline StructuredSet convexify_union(const StructuredSet& a, const StructuredSet& b) {
    if (a.block_count() != b.block_count())
        throw domain_error("convexify_union: block counts differ");
    std::vector<BoxTail> ms = a.members();
    ms.insert(ms.end(), b.members().begin(), b.members().end());
    return StructuredSet(std::move(ms), true);
}

/// Plain (non-convexified) union.
inline StructuredSet set_union(const StructuredSet& a, const StructuredSet& b) {
    if (a.block_count() != b.block_count())
        throw domain_error("set_union: block counts differ");
    std::vector<BoxTail> ms = a.members();
    ms.insert(ms.end(), b.members().begin(), b.members().end());
    return StructuredSet(std::move(ms), false);
}

inline StructuredSet convex_hull(const StructuredSet& a) { return StructuredSet(a.members(), true); }

/// Tail-radius extraction. The quotient by compact sets removes every head
/// and center, so only the largest tail radius per block survives.
inline VElement v_embed(const StructuredSet& a) {
    VElement v{std::vector<double>(a.block_count(), 0.0)};
    for (const BoxTail& m : a.members())
        for (std::size_t j = 0; j < v.radii.size(); ++j)
            v.radii[j] = std::max(v.radii[j], m.blocks[j].tail_radius);
    return v;
}

/// Hausdorff measure of noncompactness, exact on the class.
inline double beta(const StructuredSet& a) { return v_embed(a).norm(); }

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Enclosure [beta, 2 beta] of the Kuratowski measure. The point value is not
/// computed.
inline Bracket alpha_bracket(const StructuredSet& a) {
    const double b = beta(a);
    return {b, 2.0 * b};
}

/// Quotient order f_A <= f_B (up to eps) on convex structured sets.
inline bool contains_leq(const StructuredSet& a, const StructuredSet& b, double eps = 0.0) {
    if (!a.is_convex() || !b.is_convex())
        throw domain_error("contains_leq: both sets must be convexified");
    if (a.block_count() != b.block_count())
        throw domain_error("contains_leq: block counts differ");
    const VElement va = v_embed(a);
    const VElement vb = v_embed(b);
    for (std::size_t j = 0; j < va.size(); ++j)
        if (va.radii[j] > vb.radii[j] + eps)
            return false;
    return true;
}

} // namespace mnc
