#include "envelopes/geom.hpp"

#include <algorithm>

#include "envelopes/error.hpp"

namespace envelopes {

namespace {

using namespace intersection;

bool near(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) <= kTangencyTolerance * std::max(1.0, scale);
}

// One of the circles has radius zero: it meets the other only if the point lies on it.
IntersectionResult intersect_point_circle(const Circle& point, const Circle& other) {
    const double d2 = dot(other.center - point.center, other.center - point.center);
    const double r2 = other.radius * other.radius;
    if (other.radius == 0.0) {
        if (d2 <= kTangencyTolerance) return Coincident{};
        return Disjoint{};
    }
    if (near(d2, r2, std::max(d2, r2))) return Tangent{point.center, Tangency::External};
    return Disjoint{};
}

}  // namespace

IntersectionResult intersect_circles(const Circle& m, const Circle& n) {
    if (m.radius == 0.0) return intersect_point_circle(m, n);
    if (n.radius == 0.0) return intersect_point_circle(n, m);

    const Point2 delta = n.center - m.center;
    const double d2 = dot(delta, delta);
    const double sum2 = (m.radius + n.radius) * (m.radius + n.radius);
    const double diff2 = (m.radius - n.radius) * (m.radius - n.radius);
    const double scale = std::max({d2, sum2});

    if (d2 <= kTangencyTolerance * std::max(1.0, scale) && near(diff2, 0.0, sum2)) return Coincident{};

    if (near(d2, sum2, scale)) {
        const double d = std::sqrt(d2);
        return Tangent{m.center + (m.radius / d) * delta, Tangency::External};
    }
    if (d2 > 0.0 && near(d2, diff2, scale)) {
        const double d = std::sqrt(d2);
        // The smaller circle touches the larger one on the far side of its own center.
        const double sign = m.radius >= n.radius ? 1.0 : -1.0;
        return Tangent{m.center + (sign * m.radius / d) * delta, Tangency::Internal};
    }
    if (d2 > sum2 || d2 < diff2) return Disjoint{};

    const double K = 0.25 * std::sqrt(std::max(0.0, (sum2 - d2) * (d2 - diff2)));
    const double rr = m.radius * m.radius - n.radius * n.radius;
    const double mx = 0.5 * (m.center.x + n.center.x) + delta.x * rr / (2.0 * d2);
    const double my = 0.5 * (m.center.y + n.center.y) + delta.y * rr / (2.0 * d2);
    const double ox = 2.0 * delta.y * K / d2;
    const double oy = 2.0 * delta.x * K / d2;
    // j = 1 takes (+ox, -oy), j = 2 takes (-ox, +oy).
    return TwoPoints{{mx + ox, my - oy}, {mx - ox, my + oy}};
}

double ellipse_value(const EllipseSpec& e, Point2 p) {
    if (!(e.semi_major > 0.0) || !(e.semi_minor > 0.0))
        throw InvalidArgument("degenerate ellipse: semi-axes must be positive");
    const double u = (p.x - e.center.x) / e.semi_major;
    const double v = (p.y - e.center.y) / e.semi_minor;
    return u * u + v * v - 1.0;
}

bool point_in_disk(Point2 p, const Circle& c, bool closed) {
    const Point2 d = p - c.center;
    const double d2 = dot(d, d);
    const double r2 = c.radius * c.radius;
    return closed ? d2 <= r2 : d2 < r2;
}

}  // namespace envelopes
