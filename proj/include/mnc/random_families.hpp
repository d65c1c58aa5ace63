#pragma once

// Seeded random set families on [0, a] with dyadic coefficients. Tail paths
// are drawn from constants, nonnegative lines and parabolas, step functions
// and continuous broken lines.

#include "mnc/polynomial.hpp"
#include "mnc/random_sets.hpp"
#include "mnc/set_family.hpp"

#include <cstddef>
#include <vector>

namespace mnc {

inline PiecewisePolynomial random_nonnegative_path(SetSampler& gen, double a) {
    switch (gen.index(5)) {
    case 0:
        return PiecewisePolynomial::constant(gen.dyadic(0.0, 2.0), a);
    case 1:
        return PiecewisePolynomial::polynomial({gen.dyadic(0.0, 1.0), gen.dyadic(0.0, 1.0)}, a);
    case 2: {
        // c + q (s - m)^2
        const double c = gen.dyadic(0.0, 1.0);
        const double q = gen.dyadic(0.0, 1.0);
        const double m = a * gen.lambda();
        return PiecewisePolynomial::polynomial({c + q * m * m, -2.0 * q * m, q}, a);
    }
    case 3: {
        const double cut = a * (0.25 + 0.5 * gen.lambda());
        return PiecewisePolynomial({0.0, cut, a}, {{gen.dyadic(0.0, 2.0)}, {gen.dyadic(0.0, 2.0)}});
    }
    default: {
        const double cut = a * (0.25 + 0.5 * gen.lambda());
        const double y0 = gen.dyadic(0.0, 2.0);
        const double y1 = gen.dyadic(0.0, 2.0);
        const double y2 = gen.dyadic(0.0, 2.0);
        const double s1 = (y1 - y0) / cut;
        const double s2 = (y2 - y1) / (a - cut);
        return PiecewisePolynomial({0.0, cut, a}, {{y0, s1}, {y1 - s2 * cut, s2}});
    }
    }
}

inline SetFamily random_family(SetSampler& gen, double a) {
    std::vector<FamilyBlock> blocks(gen.blocks());
    for (FamilyBlock& b : blocks) {
        const std::size_t n = gen.index(3);
        for (std::size_t i = 0; i < n; ++i) {
            b.center.push_back(PiecewisePolynomial::polynomial({gen.dyadic(-1.0, 1.0), gen.dyadic(-1.0, 1.0)}, a));
            b.head_radii.push_back(random_nonnegative_path(gen, a));
        }
        b.tail_radius = random_nonnegative_path(gen, a);
    }
    return SetFamily(a, std::move(blocks));
}

} // namespace mnc
