#pragma once

// Support functions of structured sets over the dual unit ball, the set norm,
// and the Hausdorff metric computed as the sup-norm distance of support
// functions.
//
// The dual of the block-c0 model is an l1 sum of l1 spaces. For a
// box-with-tail body, a functional only sees the tail of block j through the
// l1 mass it puts there, so a direction is fully described by finitely many
// head coefficients per block plus one nonnegative tail coefficient per block.

#include "mnc/errors.hpp"
#include "mnc/structured_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace mnc {

struct DirectionBlock {
    std::vector<double> head;
    double tail = 0.0; // l1 mass beyond every head
};

/// An element of the dual unit ball, reduced to effective coordinates.
class Direction {
public:
    explicit Direction(std::vector<DirectionBlock> blocks) : blocks_(std::move(blocks)) {
        double mass = 0.0;
        for (const DirectionBlock& b : blocks_) {
            if (!std::isfinite(b.tail) || b.tail < 0.0)
                throw domain_error("direction: tail coefficient must be >= 0");
            mass += b.tail;
            for (double w : b.head) {
                if (!std::isfinite(w))
                    throw domain_error("direction: non-finite coefficient");
                mass += std::abs(w);
            }
        }
        if (mass > 1.0 + 1e-12)
            throw domain_error("direction: l1 mass exceeds 1");
    }

    /// Direction supported on one block.
    static Direction in_block(std::size_t k, std::size_t block, std::vector<double> head, double tail = 0.0) {
        if (block >= k)
            throw domain_error("direction: block index out of range");
        std::vector<DirectionBlock> bs(k);
        bs[block] = DirectionBlock{std::move(head), tail};
        return Direction(std::move(bs));
    }

    /// e_i in the given block.
    static Direction coordinate(std::size_t k, std::size_t block, std::size_t index, double sign = 1.0) {
        std::vector<double> head(index + 1, 0.0);
        head[index] = sign;
        return in_block(k, block, std::move(head));
    }

    const std::vector<DirectionBlock>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }

private:
    std::vector<DirectionBlock> blocks_;
};

inline double eval_support(const BoxTail& box, const Direction& dir) {
    double s = 0.0;
    for (std::size_t j = 0; j < box.block_count(); ++j) {
        const BlockBox& b = box.blocks[j];
        const DirectionBlock& d = dir.blocks()[j];
        for (std::size_t i = 0; i < d.head.size(); ++i)
            s += d.head[i] * b.center_at(i) + b.radius_at(i) * std::abs(d.head[i]);
        s += b.tail_radius * d.tail;
    }
    return s;
}

/// sigma_A(dir). Unions and their convex hulls share a support function, so
/// both evaluate to the max over members.
inline double eval_support(const StructuredSet& set, const Direction& dir) {
    if (dir.block_count() != set.block_count())
        throw domain_error("eval_support: direction and set have different block counts");
    double best = -std::numeric_limits<double>::infinity();
    for (const BoxTail& m : set.members())
        best = std::max(best, eval_support(m, dir));
    return best;
}

/// sup of the ambient norm over the set.
inline double set_norm(const StructuredSet& set) {
    double n = 0.0;
    for (const BoxTail& m : set.members())
        for (const BlockBox& b : m.blocks) {
            for (std::size_t i = 0; i < b.head_size(); ++i)
                n = std::max(n, std::abs(b.center[i]) + b.head_radii[i]);
            n = std::max(n, b.tail_radius);
        }
    return n;
}

struct HausdorffResult {
    double value = 0.0;
    double tolerance = 0.0; // the true distance lies in [value, value + tolerance]
    bool exact = false;
};

struct HausdorffOptions {
    double eps = 1e-6;
    std::size_t max_nodes = 4'000'000;
    double max_lp_candidates = 2e7; // above this, fall back to simplex refinement
};

namespace detail {

// Hausdorff distance between two single boxes: the sets are products of
// intervals (and tail balls), so the distance is the worst coordinate.
inline double box_hausdorff(const BoxTail& a, const BoxTail& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        const BlockBox& x = a.blocks[j];
        const BlockBox& y = b.blocks[j];
        const std::size_t n = std::max(x.head_size(), y.head_size());
        for (std::size_t i = 0; i < n; ++i)
            d = std::max(d, std::abs(x.center_at(i) - y.center_at(i)) + std::abs(x.radius_at(i) - y.radius_at(i)));
        d = std::max(d, std::abs(x.tail_radius - y.tail_radius));
    }
    return d;
}

// One effective coordinate of the dual ball: a head coordinate (block, index)
// or the tail of a block.
struct EffectiveCoord {
    std::size_t block = 0;
    std::size_t index = 0;
    bool tail = false;
    bool signed_ = false; // some center is nonzero, so both signs matter
};

inline void coord_data(const BoxTail& m, const EffectiveCoord& e, double& c, double& a) {
    const BlockBox& b = m.blocks[e.block];
    if (e.tail) {
        c = 0.0;
        a = b.tail_radius;
    } else {
        c = b.center_at(e.index);
        a = b.radius_at(e.index);
    }
}

inline std::vector<EffectiveCoord> effective_coords(const StructuredSet& a, const StructuredSet& b) {
    std::vector<EffectiveCoord> out;
    const std::vector<std::size_t> na = a.head_extent();
    const std::vector<std::size_t> nb = b.head_extent();
    auto consider = [&](EffectiveCoord e) {
        bool nonzero = false;
        bool has_center = false;
        for (const StructuredSet* s : {&a, &b})
            for (const BoxTail& m : s->members()) {
                double c, r;
                coord_data(m, e, c, r);
                nonzero = nonzero || c != 0.0 || r != 0.0;
                has_center = has_center || c != 0.0;
            }
        if (nonzero) {
            e.signed_ = has_center;
            out.push_back(e);
        }
    };
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        const std::size_t n = std::max(na[j], nb[j]);
        for (std::size_t i = 0; i < n; ++i)
            consider({j, i, false, false});
        consider({j, 0, true, false});
    }
    return out;
}

struct Vertex {
    std::vector<double> bary; // barycentric coordinates on the facet
    std::vector<double> pa;   // member linear functions of A at this vertex
    std::vector<double> pb;   // same for B
};

struct Node {
    std::vector<Vertex> vertices;
    bool a_minus_b = true;
    double upper = 0.0;

    bool operator<(const Node& o) const noexcept { return upper < o.upper; }
};

inline double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

inline double vertex_gap(const Vertex& v, bool a_minus_b) {
    const double g = max_of(v.pa) - max_of(v.pb);
    return a_minus_b ? g : -g;
}

// max over the simplex of max_m P_m - max_n Q_n is at most
// max_m min_n max_vertex (P_m - Q_n), since each P_m - Q_n is linear.
inline double upper_bound(const Node& node) {
    const auto& v0 = node.vertices.front();
    const std::size_t np = node.a_minus_b ? v0.pa.size() : v0.pb.size();
    const std::size_t nq = node.a_minus_b ? v0.pb.size() : v0.pa.size();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < np; ++m) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < nq && worst > best; ++n) {
            double mx = -std::numeric_limits<double>::infinity();
            for (const Vertex& v : node.vertices) {
                const double p = node.a_minus_b ? v.pa[m] : v.pb[m];
                const double q = node.a_minus_b ? v.pb[n] : v.pa[n];
                mx = std::max(mx, p - q);
            }
            worst = std::min(worst, mx);
        }
        best = std::max(best, worst);
    }
    return best;
}

inline Vertex midpoint(const Vertex& x, const Vertex& y) {
    Vertex m;
    m.bary.resize(x.bary.size());
    m.pa.resize(x.pa.size());
    m.pb.resize(x.pb.size());
    for (std::size_t i = 0; i < m.bary.size(); ++i)
        m.bary[i] = 0.5 * (x.bary[i] + y.bary[i]);
    for (std::size_t i = 0; i < m.pa.size(); ++i)
        m.pa[i] = 0.5 * (x.pa[i] + y.pa[i]);
    for (std::size_t i = 0; i < m.pb.size(); ++i)
        m.pb[i] = 0.5 * (x.pb[i] + y.pb[i]);
    return m;
}

inline double sq_distance(const Vertex& x, const Vertex& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.bary.size(); ++i)
        d += (x.bary[i] - y.bary[i]) * (x.bary[i] - y.bary[i]);
    return d;
}

// Solves the s x s+1 system of one basic-solution candidate by Gaussian
// elimination with partial pivoting; false when singular.
inline bool solve_dense(std::vector<std::vector<double>>& m, std::vector<double>& x) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c]))
                piv = r;
        if (std::abs(m[piv][c]) < 1e-14)
            return false;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const double f = m[r][c] / m[c][c];
            for (std::size_t q = c; q <= n; ++q)
                m[r][q] -= f * m[c][q];
        }
    }
    x.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        x[c] = m[c][n] / m[c][c];
    return true;
}

// Number of basic-solution candidates facet_maximum examines per facet.
inline double facet_candidates(std::size_t dim, std::size_t np, std::size_t nq) {
    double total = 0.0;
    double cd = 1.0;
    double cq = 1.0;
    for (std::size_t s = 1; s <= std::min(dim, nq); ++s) {
        cd = cd * static_cast<double>(dim - s + 1) / static_cast<double>(s);
        cq = cq * static_cast<double>(nq - s + 1) / static_cast<double>(s);
        total += cd * cq;
    }
    return total * static_cast<double>(np);
}

// Exact max over a facet simplex of max_m P_m - max_n Q_n. For each m this is
// the LP max z s.t. z <= (P_m - Q_n)(w), w in the simplex; an optimal vertex
// has support T and active set S with |S| = |T| <= #Q, so enumerating those
// systems finds it. Every candidate is a value attained at a feasible w.
inline double facet_maximum(const std::vector<Vertex>& verts, bool a_minus_b) {
    const std::size_t dim = verts.size();
    const std::size_t np = a_minus_b ? verts[0].pa.size() : verts[0].pb.size();
    const std::size_t nq = a_minus_b ? verts[0].pb.size() : verts[0].pa.size();
    auto P = [&](std::size_t e, std::size_t m) { return a_minus_b ? verts[e].pa[m] : verts[e].pb[m]; };
    auto Q = [&](std::size_t e, std::size_t n) { return a_minus_b ? verts[e].pb[n] : verts[e].pa[n]; };

    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> support;
    std::vector<std::size_t> active;
    std::vector<std::vector<double>> sys;
    std::vector<double> x;
    for (std::size_t m = 0; m < np; ++m) {
        auto value_at = [&](const std::vector<double>& w) {
            double z = std::numeric_limits<double>::infinity();
            for (std::size_t n = 0; n < nq; ++n) {
                double l = 0.0;
                for (std::size_t t = 0; t < support.size(); ++t)
                    l += w[t] * (P(support[t], m) - Q(support[t], n));
                z = std::min(z, l);
            }
            return z;
        };
        const std::size_t smax = std::min(dim, nq);
        for (std::size_t s = 1; s <= smax; ++s) {
            // iterate supports T (|T| = s) and active sets S (|S| = s) in lexicographic order
            support.resize(s);
            for (std::size_t i = 0; i < s; ++i)
                support[i] = i;
            while (true) {
                active.resize(s);
                for (std::size_t i = 0; i < s; ++i)
                    active[i] = i;
                while (true) {
                    // unknowns: w_T (s) then z; rows: sum w = 1, z - L_n(w) = 0
                    sys.assign(s + 1, std::vector<double>(s + 2, 0.0));
                    for (std::size_t t = 0; t < s; ++t)
                        sys[0][t] = 1.0;
                    sys[0][s + 1] = 1.0;
                    for (std::size_t r = 0; r < s; ++r) {
                        for (std::size_t t = 0; t < s; ++t)
                            sys[r + 1][t] = -(P(support[t], m) - Q(support[t], active[r]));
                        sys[r + 1][s] = 1.0;
                    }
                    if (solve_dense(sys, x)) {
                        bool feasible = true;
                        double mass = 0.0;
                        for (std::size_t t = 0; t < s; ++t) {
                            feasible = feasible && x[t] >= -1e-12;
                            x[t] = std::max(0.0, x[t]);
                            mass += x[t];
                        }
                        if (feasible && mass > 0.0) {
                            x.resize(s);
                            for (double& w : x)
                                w /= mass;
                            best = std::max(best, value_at(x));
                        }
                    }
                    std::size_t i = s;
                    while (i > 0 && active[i - 1] == nq - s + i - 1)
                        --i;
                    if (i == 0)
                        break;
                    ++active[i - 1];
                    for (std::size_t q = i; q < s; ++q)
                        active[q] = active[q - 1] + 1;
                }
                std::size_t i = s;
                while (i > 0 && support[i - 1] == dim - s + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++support[i - 1];
                for (std::size_t q = i; q < s; ++q)
                    support[q] = support[q - 1] + 1;
            }
        }
    }
    return best;
}

// Branch and bound of |sigma_A - sigma_B| over the unit sphere of the
// effective dual. Each sign pattern of the signed coordinates gives one facet
// (a simplex) on which every member support function is linear.
inline HausdorffResult direction_search(const StructuredSet& a, const StructuredSet& b, const HausdorffOptions& opt) {
    const std::vector<EffectiveCoord> coords = effective_coords(a, b);
    const std::size_t dim = coords.size();
    if (dim == 0)
        return {0.0, 0.0, true};

    std::vector<std::size_t> signed_idx;
    for (std::size_t e = 0; e < dim; ++e)
        if (coords[e].signed_)
            signed_idx.push_back(e);
    if (signed_idx.size() > 16)
        throw unsupported_input("hausdorff_distance: too many signed effective coordinates for direction search");

    std::priority_queue<Node> queue;
    double best = 0.0; // omega = 0 gives |sigma_A - sigma_B| = 0

    // Small enough for exact facet LPs: no refinement needed.
    const std::size_t patterns_exact = std::size_t{1} << signed_idx.size();
    const double work = static_cast<double>(patterns_exact) *
                        (facet_candidates(dim, a.members().size(), b.members().size()) +
                         facet_candidates(dim, b.members().size(), a.members().size()));
    const bool exact_facets = work <= opt.max_lp_candidates;

    auto push = [&](Node&& node) {
        for (const Vertex& v : node.vertices)
            best = std::max(best, vertex_gap(v, node.a_minus_b));
        node.upper = upper_bound(node);
        if (node.upper > best + opt.eps)
            queue.push(std::move(node));
    };

    const std::size_t patterns = std::size_t{1} << signed_idx.size();
    for (std::size_t pattern = 0; pattern < patterns; ++pattern) {
        std::vector<double> sign(dim, 1.0);
        for (std::size_t s = 0; s < signed_idx.size(); ++s)
            if (pattern & (std::size_t{1} << s))
                sign[signed_idx[s]] = -1.0;

        std::vector<Vertex> verts(dim);
        for (std::size_t e = 0; e < dim; ++e) {
            Vertex& v = verts[e];
            v.bary.assign(dim, 0.0);
            v.bary[e] = 1.0;
            for (const BoxTail& m : a.members()) {
                double c, r;
                coord_data(m, coords[e], c, r);
                v.pa.push_back(sign[e] * c + r);
            }
            for (const BoxTail& m : b.members()) {
                double c, r;
                coord_data(m, coords[e], c, r);
                v.pb.push_back(sign[e] * c + r);
            }
        }
        if (exact_facets) {
            best = std::max({best, facet_maximum(verts, true), facet_maximum(verts, false)});
            continue;
        }
        push(Node{verts, true, 0.0});
        push(Node{std::move(verts), false, 0.0});
    }
    if (exact_facets) // rounding in the small linear solves only
        return {best, 1e-12 * (1.0 + best), false};

    std::size_t expanded = 0;
    while (!queue.empty()) {
        if (queue.top().upper <= best + opt.eps)
            break;
        if (++expanded > opt.max_nodes)
            break;
        Node node = queue.top();
        queue.pop();
        if (node.vertices.size() == 1)
            continue; // a single point: its bound is its value
        std::size_t bi = 0, bj = 1;
        double longest = -1.0;
        for (std::size_t i = 0; i < node.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < node.vertices.size(); ++j) {
                const double d = sq_distance(node.vertices[i], node.vertices[j]);
                if (d > longest) {
                    longest = d;
                    bi = i;
                    bj = j;
                }
            }
        Vertex mid = midpoint(node.vertices[bi], node.vertices[bj]);
        Node left{node.vertices, node.a_minus_b, 0.0};
        Node right{std::move(node.vertices), node.a_minus_b, 0.0};
        left.vertices[bi] = mid;
        right.vertices[bj] = std::move(mid);
        push(std::move(left));
        push(std::move(right));
    }
    // pruned nodes were within eps of best, so eps is the floor of the gap
    const double top = queue.empty() ? best : std::max(best, queue.top().upper);
    return {best, std::max(top - best, opt.eps), false};
}

} // namespace detail

/// d_H(co A, co B) = sup over the dual ball of |sigma_A - sigma_B|.
inline HausdorffResult hausdorff_distance(const StructuredSet& a, const StructuredSet& b,
                                          const HausdorffOptions& opt = {}) {
    if (a.block_count() != b.block_count())
        throw domain_error("hausdorff_distance: block counts differ");
    if (a.members().size() == 1 && b.members().size() == 1)
        return {detail::box_hausdorff(a.members().front(), b.members().front()), 0.0, true};
    return detail::direction_search(a, b, opt);
}

} // namespace mnc
