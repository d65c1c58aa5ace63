#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mnc;

namespace {

StructuredSet box1(std::vector<double> c, std::vector<double> a, double tail = 0.0) {
    return StructuredSet(BoxTail{{BlockBox{std::move(c), std::move(a), tail}}});
}

// Zero-tail random set with at most `dims` head coordinates in block 0.
StructuredSet flat_set(SetSampler& gen, std::size_t dims) {
    std::vector<BoxTail> ms;
    const std::size_t n = 1 + gen.index(3);
    for (std::size_t i = 0; i < n; ++i) {
        BlockBox b;
        for (std::size_t q = 0; q < dims; ++q) {
            b.center.push_back(gen.dyadic(-2, 2));
            b.head_radii.push_back(gen.dyadic(0, 1));
        }
        ms.push_back(BoxTail{{b}});
    }
    return StructuredSet(std::move(ms), true);
}

} // namespace

TEST(Direction, ValidatesDualBall) {
    EXPECT_THROW(Direction::in_block(1, 0, {0.75, 0.5}), domain_error);
    EXPECT_THROW(Direction::in_block(1, 0, {0.5}, -0.1), domain_error);
    EXPECT_THROW(Direction::in_block(1, 2, {0.5}), domain_error);
    EXPECT_NO_THROW(Direction::in_block(1, 0, {0.5, -0.5}));
}

TEST(EvalSupport, Examples) {
    const StructuredSet b = box1({0, 0}, {1, 2});
    EXPECT_EQ(eval_support(b, Direction::coordinate(1, 0, 0)), 1.0);
    EXPECT_EQ(eval_support(b, Direction::in_block(1, 0, {0.5, 0.5})), 1.5);
    const StructuredSet poly = StructuredSet::polytope(1, {{0, 0}, {1, 1}});
    EXPECT_EQ(eval_support(poly, Direction::coordinate(1, 0, 0)), 1.0);
}

TEST(EvalSupport, MatchesVertexEnumeration) {
    SetSampler gen(21);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const StructuredSet s = gen.set();
        const Direction d = oracle::random_direction(rng, 3, 5);
        ASSERT_NEAR(eval_support(s, d), oracle::support_by_vertices(s, d), 1e-12);
    }
}

TEST(EvalSupport, AdditiveUnderMinkowskiSum) {
    SetSampler gen(22);
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
        const StructuredSet a = convex_hull(gen.set());
        const StructuredSet b = convex_hull(gen.set());
        const Direction d = oracle::random_direction(rng, 3, 4);
        // exact for dyadic sets and a direction whose products round identically
        ASSERT_NEAR(eval_support(minkowski_sum(a, b), d), eval_support(a, d) + eval_support(b, d), 1e-13);
    }
}

TEST(EvalSupport, PositivelyHomogeneous) {
    SetSampler gen(23);
    for (int i = 0; i < 300; ++i) {
        const StructuredSet a = gen.set();
        const double k = gen.nonnegative_scalar();
        const Direction d = Direction::in_block(3, gen.index(3), {0.25, -0.25, 0.125}, 0.25);
        ASSERT_EQ(eval_support(scale(a, k), d), k * eval_support(a, d));
    }
}

TEST(SetNorm, Examples) {
    EXPECT_EQ(set_norm(StructuredSet::point(1, {0})), 0.0);
    EXPECT_EQ(set_norm(StructuredSet::unit_ball(2)), 1.0);
    EXPECT_EQ(set_norm(box1({1, 0}, {2, 0})), 3.0);
}

TEST(Hausdorff, Examples) {
    const StructuredSet a = box1({1, -1}, {1, 2}, 0.5);
    EXPECT_EQ(hausdorff_distance(a, a).value, 0.0);
    EXPECT_EQ(hausdorff_distance(a, minkowski_sum(a, scale(StructuredSet::unit_ball(1), 0.5))).value, 0.5);
    const HausdorffResult d = hausdorff_distance(box1({0, 0}, {1, 2}), box1({0, 0}, {2, 2}));
    EXPECT_EQ(d.value, 1.0);
    EXPECT_TRUE(d.exact);
}

TEST(Hausdorff, UnionAgainstClosedForm) {
    // co{(0,0),(2,0)} vs the point (1,0): distance 1 in the sup norm
    const StructuredSet seg = StructuredSet::polytope(1, {{0, 0}, {2, 0}});
    const HausdorffResult d = hausdorff_distance(seg, StructuredSet::point(1, {1, 0}));
    EXPECT_NEAR(d.value, 1.0, d.tolerance + 1e-12);
    EXPECT_FALSE(d.exact);
}

TEST(Hausdorff, MetricAxiomsOnSamples) {
    SetSampler gen(24, 2);
    for (int i = 0; i < 60; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const StructuredSet c = gen.set();
        const HausdorffResult ab = hausdorff_distance(a, b);
        const HausdorffResult ba = hausdorff_distance(b, a);
        const HausdorffResult bc = hausdorff_distance(b, c);
        const HausdorffResult ac = hausdorff_distance(a, c);
        const double eps = 1e-6;
        ASSERT_GE(ab.value, 0.0);
        ASSERT_NEAR(ab.value, ba.value, 2 * eps);
        ASSERT_EQ(hausdorff_distance(a, a).value, 0.0);
        ASSERT_LE(ac.value, ab.value + bc.value + 2 * eps);
    }
}

TEST(Hausdorff, DistanceFromOriginIsNorm) {
    SetSampler gen(25, 2);
    for (int i = 0; i < 100; ++i) {
        const StructuredSet c = convex_hull(gen.set());
        const HausdorffResult d = hausdorff_distance(StructuredSet::point(2, {}), c);
        ASSERT_NEAR(d.value, set_norm(c), 1e-6);
    }
}

TEST(Hausdorff, LowerBoundFromSampledDirections) {
    // Any sampled direction gives |sigma_A - sigma_B| <= d_H.
    SetSampler gen(26, 2);
    std::mt19937_64 rng(26);
    for (int i = 0; i < 60; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const HausdorffResult d = hausdorff_distance(a, b);
        for (int q = 0; q < 50; ++q) {
            const Direction w = oracle::random_direction(rng, 2, 4);
            const double gap = std::abs(oracle::support_by_vertices(a, w) - oracle::support_by_vertices(b, w));
            ASSERT_LE(gap, d.value + d.tolerance + 1e-12);
        }
    }
}

TEST(Hausdorff, TooManyCoordinatesIsUnsupported) {
    BlockBox big;
    for (int i = 0; i < 20; ++i) {
        big.center.push_back(i);
        big.head_radii.push_back(1);
    }
    BlockBox other = big;
    other.center[0] = 5;
    const StructuredSet a({BoxTail{{big}}, BoxTail{{other}}}, true);
    EXPECT_THROW(hausdorff_distance(a, StructuredSet::point(1, {})), unsupported_input);
}

TEST(BruteForceOracle, Examples) {
    const StructuredSet sq = box1({0, 0}, {1, 1});
    EXPECT_NEAR(brute_force_hausdorff_oracle(sq, sq, 1000), 0.0, 1e-3);
    EXPECT_NEAR(brute_force_hausdorff_oracle(sq, box1({1, 0}, {1, 1}), 1000), 1.0, 1e-3);
    EXPECT_NEAR(brute_force_hausdorff_oracle(sq, box1({0, 0}, {2, 2}), 10000), 1.0, 1e-3);
}

TEST(BruteForceOracle, RejectsTailsAndHighDimension) {
    EXPECT_THROW(brute_force_hausdorff_oracle(StructuredSet::unit_ball(1), StructuredSet::point(1, {}), 100),
                 unsupported_input);
    EXPECT_THROW(brute_force_hausdorff_oracle(box1({0, 0, 0, 0}, {1, 1, 1, 1}), StructuredSet::point(1, {}), 100),
                 unsupported_input);
}

TEST(Isometry, DirectionSearchMatchesOracle) {
    SetSampler gen(27, 1);
    for (int i = 0; i < 30; ++i) {
        const std::size_t dims = 1 + static_cast<std::size_t>(i % 3);
        const StructuredSet a = flat_set(gen, dims);
        const StructuredSet b = flat_set(gen, dims);
        const double exact = hausdorff_distance(a, b).value;
        ASSERT_NEAR(exact, brute_force_hausdorff_oracle(a, b, 4000), 1e-3) << "dims " << dims;
    }
}

TEST(Hausdorff, FacetProgramsAgreeWithRefinement) {
    SetSampler gen(28, 1);
    HausdorffOptions refine;
    refine.max_lp_candidates = 0.0;
    for (int i = 0; i < 40; ++i) {
        const StructuredSet a = flat_set(gen, 1 + static_cast<std::size_t>(i % 3));
        const StructuredSet b = flat_set(gen, 1 + static_cast<std::size_t>(i % 3));
        const HausdorffResult lp = hausdorff_distance(a, b);
        const HausdorffResult bb = hausdorff_distance(a, b, refine);
        ASSERT_NEAR(lp.value, bb.value, lp.tolerance + bb.tolerance + 1e-12);
    }
}
