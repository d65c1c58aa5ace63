#pragma once

// Deterministic random structured sets. Draws are dyadic rationals with small
// denominators, so sums, scalings and convex combinations of them stay exact
// in double precision. Only raw mt19937_64 output is used (no std
// distributions), so a seed reproduces the same sets on every platform.

#include "mnc/structured_set.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace mnc {

class SetSampler {
public:
    explicit SetSampler(std::uint64_t seed, std::size_t blocks = 3) : rng_(seed), k_(blocks) {}

    std::size_t blocks() const noexcept { return k_; }

    std::uint64_t next() { return rng_(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

    /// Uniform multiple of 1/denominator in [lo, hi].
    double dyadic(double lo, double hi, int denominator = 8) {
        const auto steps = static_cast<std::uint64_t>((hi - lo) * denominator);
        return lo + static_cast<double>(rng_() % (steps + 1)) / denominator;
    }

    double lambda() { return dyadic(0.0, 1.0, 16); }
    double scalar() { return dyadic(-3.0, 3.0, 4); }
    double nonnegative_scalar() { return dyadic(0.0, 3.0, 4); }

    BoxTail box(bool compact = false) {
        BoxTail b;
        b.blocks.resize(k_);
        for (BlockBox& blk : b.blocks) {
            const std::size_t n = index(4);
            blk.center.resize(n);
            blk.head_radii.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                blk.center[i] = dyadic(-2.0, 2.0);
                blk.head_radii[i] = index(4) == 0 ? 0.0 : dyadic(0.0, 2.0);
            }
            blk.tail_radius = compact || index(4) == 0 ? 0.0 : dyadic(0.0, 2.0);
        }
        return b;
    }

    /// One to three members, randomly convexified.
    StructuredSet set(bool compact = false) {
        std::vector<BoxTail> ms;
        const std::size_t n = 1 + index(3);
        for (std::size_t i = 0; i < n; ++i)
            ms.push_back(box(compact));
        return StructuredSet(std::move(ms), index(2) == 0);
    }

    /// A set with at least one positive tail radius.
    StructuredSet noncompact_set() {
        StructuredSet s = set();
        if (!s.is_compact())
            return s;
        std::vector<BoxTail> ms = s.members();
        ms[index(ms.size())].blocks[index(k_)].tail_radius = dyadic(0.125, 2.0);
        return StructuredSet(std::move(ms), s.convexified());
    }

    /// Superset of s obtained by inflating every radius.
    StructuredSet inflate(const StructuredSet& s) {
        std::vector<BoxTail> ms = s.members();
        for (BoxTail& m : ms)
            for (BlockBox& b : m.blocks) {
                for (double& r : b.head_radii)
                    r += dyadic(0.0, 1.0);
                b.tail_radius += dyadic(0.0, 1.0);
            }
        return StructuredSet(std::move(ms), s.convexified());
    }

private:
    std::mt19937_64 rng_;
    std::size_t k_;
};

} // namespace mnc
