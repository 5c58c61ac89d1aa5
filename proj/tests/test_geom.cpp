#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "envelopes/error.hpp"
#include "envelopes/geom.hpp"

using namespace envelopes;
using namespace envelopes::intersection;

namespace {

double on_circle(const Circle& c, Point2 p) {
    const Point2 d = p - c.center;
    return dot(d, d) - c.radius * c.radius;
}

}  // namespace

TEST(IntersectCircles, EquilateralConfiguration) {
    const auto res = intersect_circles({{0, 0}, 1}, {{1, 0}, 1});
    const auto* two = std::get_if<TwoPoints>(&res);
    ASSERT_NE(two, nullptr);
    EXPECT_NEAR(two->first.x, 0.5, 1e-15);
    EXPECT_NEAR(two->second.x, 0.5, 1e-15);
    EXPECT_NEAR(std::abs(two->first.y), std::sqrt(3.0) / 2, 1e-15);
    EXPECT_NEAR(two->first.y, -two->second.y, 1e-15);
}

TEST(IntersectCircles, ExternalTangency) {
    const auto res = intersect_circles({{0, 0}, 1}, {{2, 0}, 1});
    const auto* tan = std::get_if<Tangent>(&res);
    ASSERT_NE(tan, nullptr);
    EXPECT_EQ(tan->kind, Tangency::External);
    EXPECT_NEAR(tan->point.x, 1.0, 1e-15);
    EXPECT_NEAR(tan->point.y, 0.0, 1e-15);
}

TEST(IntersectCircles, InternalTangency) {
    const auto res = intersect_circles({{0.25, 0}, 0.75}, {{0.75, 0}, 0.25});
    const auto* tan = std::get_if<Tangent>(&res);
    ASSERT_NE(tan, nullptr);
    EXPECT_EQ(tan->kind, Tangency::Internal);
    EXPECT_NEAR(tan->point.x, 1.0, 1e-15);
    const auto swapped = intersect_circles({{0.75, 0}, 0.25}, {{0.25, 0}, 0.75});
    ASSERT_TRUE(std::holds_alternative<Tangent>(swapped));
    EXPECT_NEAR(std::get<Tangent>(swapped).point.x, 1.0, 1e-15);
}

TEST(IntersectCircles, NestedIsDisjoint) {
    EXPECT_TRUE(std::holds_alternative<Disjoint>(intersect_circles({{0, 0}, 2}, {{0.5, 0}, 1})));
    EXPECT_TRUE(std::holds_alternative<Disjoint>(intersect_circles({{0, 0}, 1}, {{5, 0}, 1})));
}

TEST(IntersectCircles, Coincident) {
    EXPECT_TRUE(std::holds_alternative<Coincident>(intersect_circles({{1, 2}, 3}, {{1, 2}, 3})));
    EXPECT_TRUE(std::holds_alternative<Disjoint>(intersect_circles({{1, 2}, 3}, {{1, 2}, 2})));
}

TEST(IntersectCircles, PointCircles) {
    const auto on = intersect_circles({{1, 0}, 0}, {{0, 0}, 1});
    ASSERT_TRUE(std::holds_alternative<Tangent>(on));
    EXPECT_EQ(std::get<Tangent>(on).point, (Point2{1, 0}));
    EXPECT_TRUE(std::holds_alternative<Disjoint>(intersect_circles({{0, 0}, 1}, {{0.5, 0}, 0})));
    EXPECT_TRUE(std::holds_alternative<Coincident>(intersect_circles({{0.5, 0}, 0}, {{0.5, 0}, 0})));
}

TEST(IntersectCircles, ConstructedTangenciesClassified) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    for (int i = 0; i < 200; ++i) {
        const double rm = u(gen), rn = u(gen), a = ang(gen);
        const Point2 cm{u(gen), u(gen)};
        const Point2 dir{std::cos(a), std::sin(a)};
        const auto ext = intersect_circles({cm, rm}, {cm + (rm + rn) * dir, rn});
        ASSERT_TRUE(std::holds_alternative<Tangent>(ext)) << i;
        EXPECT_EQ(std::get<Tangent>(ext).kind, Tangency::External);
        if (std::abs(rm - rn) < 1e-3) continue;
        const auto in = intersect_circles({cm, rm}, {cm + std::abs(rm - rn) * dir, rn});
        ASSERT_TRUE(std::holds_alternative<Tangent>(in)) << i;
        EXPECT_EQ(std::get<Tangent>(in).kind, Tangency::Internal);
        const Point2 p = std::get<Tangent>(in).point;
        EXPECT_NEAR(distance(p, cm), rm, 1e-9);
    }
}

TEST(IntersectCircles, RandomPairsSatisfyBothEquationsAndSymmetry) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> rad(0.05, 3.0);
    int checked = 0;
    while (checked < 500) {
        const Circle m{{u(gen), u(gen)}, rad(gen)};
        const Circle n{{u(gen), u(gen)}, rad(gen)};
        const auto res = intersect_circles(m, n);
        const auto* two = std::get_if<TwoPoints>(&res);
        if (!two) continue;
        ++checked;
        const double tol = 1e-10 * std::max({1.0, m.radius * m.radius, n.radius * n.radius});
        for (const Point2& p : {two->first, two->second}) {
            EXPECT_LE(std::abs(on_circle(m, p)), tol);
            EXPECT_LE(std::abs(on_circle(n, p)), tol);
        }
        const auto back = intersect_circles(n, m);
        const auto* owt = std::get_if<TwoPoints>(&back);
        ASSERT_NE(owt, nullptr);
        const double direct = std::max(distance(two->first, owt->first), distance(two->second, owt->second));
        const double crossed = std::max(distance(two->first, owt->second), distance(two->second, owt->first));
        EXPECT_LE(std::min(direct, crossed), 1e-9);
    }
}

TEST(EllipseValue, SpecExamples) {
    const EllipseSpec e{{0, 0}, 2, 1};
    EXPECT_DOUBLE_EQ(ellipse_value(e, {0, 0}), -1.0);
    EXPECT_DOUBLE_EQ(ellipse_value(e, {2, 0}), 0.0);
    EXPECT_GT(ellipse_value(e, {2, 1}), 0.0);
    const EllipseSpec ert{{0.5, 0}, std::sqrt(2.0) / 2, 0.5};
    EXPECT_NEAR(ellipse_value(ert, {0.5, 0.5}), 0.0, 1e-15);
    EXPECT_THROW(ellipse_value({{0, 0}, 1, 0}, {0, 0}), InvalidArgument);
}

TEST(PointInDisk, OpenAndClosed) {
    const Circle unit{{0, 0}, 1};
    EXPECT_TRUE(point_in_disk({0, 0}, unit, false));
    EXPECT_FALSE(point_in_disk({1, 0}, unit, false));
    EXPECT_TRUE(point_in_disk({1, 0}, unit, true));
    EXPECT_FALSE(point_in_disk({1.1, 0}, unit, true));
}
