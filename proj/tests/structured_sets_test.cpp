#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mnc;

namespace {

StructuredSet box1(std::vector<double> c, std::vector<double> a, double tail) {
    BoxTail b;
    b.blocks.push_back(BlockBox{std::move(c), std::move(a), tail});
    return StructuredSet(b);
}

StructuredSet tails(std::vector<double> r) {
    BoxTail b;
    for (double x : r)
        b.blocks.push_back(BlockBox{{}, {}, x});
    return StructuredSet(b);
}

} // namespace

TEST(MinkowskiSum, AddsHeadRadiiCoordinatewise) {
    const StructuredSet s = minkowski_sum(box1({0, 0}, {1, 2}, 0), box1({0, 0}, {3, 4}, 0));
    ASSERT_EQ(s.members().size(), 1U);
    EXPECT_EQ(s.members()[0].blocks[0].head_radii, (std::vector<double>{4, 6}));
}

TEST(MinkowskiSum, ZeroIsIdentity) {
    const StructuredSet a = box1({1, -2}, {0.5, 1}, 0.25);
    EXPECT_EQ(minkowski_sum(a, StructuredSet::point(1, {})), a);
}

TEST(MinkowskiSum, TailsAdd) { EXPECT_EQ(v_embed(minkowski_sum(tails({1}), tails({2}))).radii[0], 3.0); }

TEST(MinkowskiSum, RejectsBlockMismatch) { EXPECT_THROW(minkowski_sum(tails({1}), tails({1, 1})), domain_error); }

TEST(Scale, BallTimesTwo) {
    const StructuredSet s = scale(StructuredSet::unit_ball(3), 2.0);
    EXPECT_EQ(v_embed(s).radii, (std::vector<double>{2, 2, 2}));
}

TEST(Scale, ZeroCollapsesRadii) {
    const StructuredSet s = scale(box1({1, 2}, {3, 4}, 5), 0.0);
    const BlockBox& b = s.members()[0].blocks[0];
    EXPECT_EQ(b.head_radii, (std::vector<double>{0, 0}));
    EXPECT_EQ(b.tail_radius, 0.0);
    EXPECT_TRUE(s.is_compact());
}

TEST(Scale, ReflectionKeepsNorm) {
    const StructuredSet a = box1({1, -3}, {2, 0.5}, 1);
    EXPECT_EQ(set_norm(scale(a, -1.0)), set_norm(a));
    EXPECT_EQ(scale(a, -1.0).members()[0].blocks[0].center, (std::vector<double>{-1, 3}));
}

TEST(ConvexifyUnion, IdempotentSupport) {
    std::mt19937_64 rng(1);
    const StructuredSet a = box1({1, 0}, {1, 2}, 0.5);
    const StructuredSet u = convexify_union(a, a);
    for (int i = 0; i < 50; ++i) {
        const Direction d = oracle::random_direction(rng, 1, 3);
        EXPECT_DOUBLE_EQ(oracle::support_by_vertices(u, d), oracle::support_by_vertices(a, d));
    }
}

TEST(ConvexifyUnion, TwoPointsGiveSegment) {
    const StructuredSet seg = convexify_union(StructuredSet::point(1, {0, 0}), StructuredSet::point(1, {1, 1}));
    EXPECT_TRUE(seg.is_convex());
    EXPECT_EQ(eval_support(seg, Direction::in_block(1, 0, {0.5, 0.5})), 1.0);
    EXPECT_EQ(eval_support(seg, Direction::in_block(1, 0, {-0.5, 0.5})), 0.0);
}

TEST(ConvexifyUnion, TailsOneAndThreeGiveBetaThree) {
    const StructuredSet u = convexify_union(tails({1}), tails({3}));
    EXPECT_EQ(beta(u), 3.0);
    EXPECT_EQ(v_embed(u).radii[0], 3.0);
}

TEST(ContainsLeq, Examples) {
    EXPECT_TRUE(contains_leq(tails({1, 2}), tails({2, 2})));
    EXPECT_FALSE(contains_leq(tails({3, 1}), tails({2, 2})));
    EXPECT_TRUE(contains_leq(box1({100}, {50}, 0), tails({0})));
    EXPECT_TRUE(contains_leq(tails({2.5}), tails({2}), 0.5));
}

TEST(ContainsLeq, RequiresConvexInputs) {
    const StructuredSet u = set_union(tails({1}), box1({1}, {1}, 0));
    EXPECT_THROW(contains_leq(u, tails({2})), domain_error);
}

TEST(VEmbed, Examples) {
    EXPECT_EQ(v_embed(box1({5, 7}, {1, 1}, 2)).radii, (std::vector<double>{2}));
    EXPECT_EQ(v_embed(minkowski_sum(tails({1, 4}), tails({2, 0}))).radii, (std::vector<double>{3, 4}));
    EXPECT_EQ(v_embed(convexify_union(tails({1}), tails({3}))).radii, (std::vector<double>{3}));
}

TEST(VEmbed, CompactSetsMapToZero) {
    SetSampler gen(3);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(v_embed(gen.set(true)).norm(), 0.0);
}

TEST(Beta, Examples) {
    EXPECT_EQ(beta(StructuredSet::polytope(2, {{0, 0}, {1, 2}, {3, -1}})), 0.0);
    EXPECT_EQ(beta(StructuredSet::unit_ball(3)), 1.0);
    EXPECT_EQ(beta(convexify_union(tails({1}), tails({3}))), 3.0);
}

TEST(AlphaBracket, Examples) {
    const Bracket c = alpha_bracket(StructuredSet::point(2, {1, 1}));
    EXPECT_EQ(c.lower, 0.0);
    EXPECT_EQ(c.upper, 0.0);
    const Bracket b = alpha_bracket(StructuredSet::unit_ball(2));
    EXPECT_EQ(b.lower, 1.0);
    EXPECT_EQ(b.upper, 2.0);
    const Bracket t = alpha_bracket(tails({2}));
    EXPECT_EQ(t.lower, 2.0);
    EXPECT_EQ(t.upper, 4.0);
}

TEST(StructuredSet, RejectsInvalidInput) {
    EXPECT_THROW(StructuredSet({}, true), domain_error);
    EXPECT_THROW(box1({0}, {-1}, 0), construction_error);
    EXPECT_THROW(box1({0, 1}, {1}, 0), construction_error);
    EXPECT_THROW(box1({}, {}, -0.5), construction_error);
    BoxTail two = BoxTail::uniform(2, {}, {}, 1);
    EXPECT_THROW(StructuredSet({two, unit_ball_box(3)}, true), construction_error);
}

TEST(StructuredSet, DegenerateInputsAreLegal) {
    EXPECT_NO_THROW(StructuredSet::point(1, {}));
    EXPECT_NO_THROW(box1({1, 2}, {0, 0}, 0));
}

TEST(Invariants, EmbeddingIsAffine) {
    SetSampler gen(11);
    for (int i = 0; i < 500; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const double lam = gen.lambda();
        const VElement lhs = v_embed(minkowski_sum(scale(a, lam), scale(b, 1.0 - lam)));
        const VElement rhs = lam * v_embed(a) + (1.0 - lam) * v_embed(b);
        ASSERT_EQ(lhs, rhs) << "lambda " << lam;
    }
}

TEST(Invariants, RadiiGapBoundedByHausdorffDistance) {
    SetSampler gen(12, 2);
    for (int i = 0; i < 150; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const HausdorffResult d = hausdorff_distance(a, b);
        ASSERT_LE(sup_distance(v_embed(a), v_embed(b)), d.value + d.tolerance + 1e-12);
    }
}

TEST(Invariants, EqualEmbeddingIffMutualOrder) {
    SetSampler gen(13);
    for (int i = 0; i < 500; ++i) {
        const StructuredSet a = convex_hull(gen.set());
        const StructuredSet b = convex_hull(i % 3 == 0 ? minkowski_sum(a, gen.set(true)) : gen.set());
        const bool mutual = contains_leq(a, b) && contains_leq(b, a);
        ASSERT_EQ(mutual, v_embed(a) == v_embed(b));
    }
}

TEST(Invariants, BetaIsOneLipschitz) {
    SetSampler gen(14, 2);
    for (int i = 0; i < 150; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        const HausdorffResult d = hausdorff_distance(a, b);
        ASSERT_LE(std::abs(beta(a) - beta(b)), d.value + d.tolerance + 1e-12);
    }
}

TEST(BoxContains, InflatedBoxContainsOriginal) {
    SetSampler gen(15);
    for (int i = 0; i < 200; ++i) {
        const BoxTail b = gen.box();
        const StructuredSet big = gen.inflate(StructuredSet(b));
        EXPECT_TRUE(box_contains(big.members()[0], b));
    }
    EXPECT_FALSE(box_contains(unit_ball_box(1), BoxTail::uniform(1, {0.5}, {0.75}, 0)));
}
