#pragma once

#include <cmath>
#include <variant>

namespace envelopes {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Radius 0 is a point circle.
struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// Axis-aligned ellipse; semi_major runs along x.
struct EllipseSpec {
    Point2 center;
    double semi_major = 0.0;
    double semi_minor = 0.0;
};

namespace intersection {

struct Disjoint {};
struct Coincident {};

enum class Tangency { Internal, External };

struct Tangent {
    Point2 point;
    Tangency kind;
};

struct TwoPoints {
    Point2 first;
    Point2 second;
};

}  // namespace intersection

using IntersectionResult = std::variant<intersection::Disjoint, intersection::Coincident,
                                        intersection::Tangent, intersection::TwoPoints>;

/// Relative band used when comparing d^2 against (r_M -/+ r_N)^2.
inline constexpr double kTangencyTolerance = 1e-12;

/// Intersection of two circles by the closed-form chord construction
/// (d, K and the symmetric (x_j, y_j) pair). Point circles meet another
/// circle only tangentially, when the point lies on it.
IntersectionResult intersect_circles(const Circle& m, const Circle& n);

/// (x-cx)^2/a^2 + (y-cy)^2/b^2 - 1: negative inside, zero on the boundary.
/// Throws InvalidArgument for a zero semi-axis.
double ellipse_value(const EllipseSpec& e, Point2 p);

bool point_in_disk(Point2 p, const Circle& c, bool closed);

}  // namespace envelopes
