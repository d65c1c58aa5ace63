#pragma once

// Brute-force Hausdorff distance for compact structured sets with at most
// three effective coordinates. Works entirely in the primal: it bisects on d
// and decides A c co(B) + d*cube and B c co(A) + d*cube by testing every box
// vertex against the facets of the inflated hull. No support functions are
// involved, so it can be used to check the dual computation.

#include "mnc/errors.hpp"
#include "mnc/structured_set.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace mnc {

namespace oracle_detail {

using Point = std::array<double, 3>;

struct Coord {
    std::size_t block;
    std::size_t index;
};

inline std::vector<Coord> nonzero_coords(const StructuredSet& a, const StructuredSet& b) {
    std::vector<Coord> out;
    const auto na = a.head_extent();
    const auto nb = b.head_extent();
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        const std::size_t n = std::max(na[j], nb[j]);
        for (std::size_t i = 0; i < n; ++i) {
            bool used = false;
            for (const StructuredSet* s : {&a, &b})
                for (const BoxTail& m : s->members())
                    used = used || m.blocks[j].center_at(i) != 0.0 || m.blocks[j].radius_at(i) != 0.0;
            if (used)
                out.push_back({j, i});
        }
    }
    return out;
}

struct FlatBox {
    Point center{};
    Point radius{};
};

inline std::vector<FlatBox> flatten(const StructuredSet& s, const std::vector<Coord>& coords) {
    std::vector<FlatBox> out;
    for (const BoxTail& m : s.members()) {
        FlatBox f;
        for (std::size_t d = 0; d < coords.size(); ++d) {
            const BlockBox& b = m.blocks[coords[d].block];
            f.center[d] = b.center_at(coords[d].index);
            f.radius[d] = b.radius_at(coords[d].index);
        }
        out.push_back(f);
    }
    return out;
}

inline std::vector<Point> corners(const std::vector<FlatBox>& boxes, std::size_t dim, double inflate) {
    std::vector<Point> out;
    for (const FlatBox& b : boxes)
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            Point p{};
            for (std::size_t d = 0; d < dim; ++d) {
                const double r = b.radius[d] + inflate;
                p[d] = b.center[d] + ((mask >> d) & 1 ? r : -r);
            }
            out.push_back(p);
        }
    return out;
}

struct HalfSpace {
    Point normal{};
    double offset = 0.0; // inside: <normal, x> <= offset
};

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Facets of co(pts) by enumeration: a hyperplane through dim points is a
// facet when every point lies on one side of it.
inline std::vector<HalfSpace> facets(const std::vector<Point>& pts, std::size_t dim, double tol) {
    std::vector<HalfSpace> out;
    const std::size_t n = pts.size();
    auto keep_if_supporting = [&](Point normal, const Point& through) {
        const double len = std::sqrt(dot(normal, normal));
        if (len <= tol)
            return;
        for (double& x : normal)
            x /= len;
        const double off = dot(normal, through);
        bool above = false, below = false;
        for (const Point& p : pts) {
            const double s = dot(normal, p) - off;
            above = above || s > tol;
            below = below || s < -tol;
        }
        if (above && below)
            return;
        if (above) {
            for (double& x : normal)
                x = -x;
            out.push_back({normal, -off});
        } else {
            out.push_back({normal, off});
        }
    };
    if (dim == 1) {
        keep_if_supporting({1.0, 0.0, 0.0}, *std::max_element(pts.begin(), pts.end(),
                                                              [](const Point& x, const Point& y) { return x[0] < y[0]; }));
        keep_if_supporting({-1.0, 0.0, 0.0}, *std::min_element(pts.begin(), pts.end(),
                                                               [](const Point& x, const Point& y) { return x[0] < y[0]; }));
    } else if (dim == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                keep_if_supporting({pts[j][1] - pts[i][1], pts[i][0] - pts[j][0], 0.0}, pts[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t l = j + 1; l < n; ++l) {
                    const Point u{pts[j][0] - pts[i][0], pts[j][1] - pts[i][1], pts[j][2] - pts[i][2]};
                    const Point v{pts[l][0] - pts[i][0], pts[l][1] - pts[i][1], pts[l][2] - pts[i][2]};
                    keep_if_supporting({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]},
                                       pts[i]);
                }
    }
    return out;
}

// Every vertex of `from` inside co(to) + d*cube.
inline bool covered(const std::vector<FlatBox>& from, const std::vector<FlatBox>& to, std::size_t dim, double d,
                    double tol) {
    const std::vector<Point> hull_pts = corners(to, dim, d);
    const std::vector<HalfSpace> hs = facets(hull_pts, dim, tol);
    for (const Point& p : corners(from, dim, 0.0))
        for (const HalfSpace& h : hs)
            if (dot(h.normal, p) > h.offset + tol)
                return false;
    return true;
}

} // namespace oracle_detail

/// Hausdorff distance by bisection on the inflation radius, to within
/// diameter / grid_resolution. Compact sets only, at most three effective
/// coordinates.
inline double brute_force_hausdorff_oracle(const StructuredSet& a, const StructuredSet& b, long grid_resolution) {
    using namespace oracle_detail;
    if (a.block_count() != b.block_count())
        throw domain_error("oracle: block counts differ");
    if (!a.is_compact() || !b.is_compact())
        throw unsupported_input("oracle: nonzero tail radius");
    if (grid_resolution < 1)
        throw domain_error("oracle: grid_resolution must be >= 1");
    const std::vector<Coord> coords = nonzero_coords(a, b);
    const std::size_t dim = coords.size();
    if (dim > 3)
        throw unsupported_input("oracle: more than three effective coordinates");
    if (dim == 0)
        return 0.0;

    const auto fa = flatten(a, coords);
    const auto fb = flatten(b, coords);

    double diameter = 0.0;
    for (const Point& p : corners(fa, dim, 0.0))
        for (const Point& q : corners(fb, dim, 0.0))
            for (std::size_t d = 0; d < dim; ++d)
                diameter = std::max(diameter, std::abs(p[d] - q[d]));
    if (diameter == 0.0)
        return 0.0;

    const double tol = 1e-12 * (1.0 + diameter);
    double lo = 0.0;
    double hi = diameter; // every point of A is within the diameter of B
    const double resolution = diameter / static_cast<double>(grid_resolution);
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (covered(fa, fb, dim, mid, tol) && covered(fb, fa, dim, mid, tol))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace mnc
