#include "envelopes/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "envelopes/error.hpp"

namespace envelopes {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_radius(double r) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("pseudohyperbolic radius must lie in (0, 1)");
}

void require_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("horocycle parameter k must be positive");
}

double circle_distance(const Circle& c, Point2 p) { return std::abs(distance(p, c.center) - c.radius); }

}  // namespace

double pseudo_distance(Complex z, Complex w) {
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
        throw InvalidArgument("pseudohyperbolic distance is defined on the open unit disk");
    return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

Circle to_euclidean(const PseudoDisk& d) {
    require_radius(d.rho);
    const double b2 = std::norm(d.beta);
    if (!(b2 < 1.0)) throw InvalidArgument("pseudohyperbolic center must lie in the open unit disk");
    const double r2 = d.rho * d.rho;
    const double denom = 1.0 - r2 * b2;
    const Complex center = (1.0 - r2) * d.beta / denom;
    return {{center.real(), center.imag()}, d.rho * (1.0 - b2) / denom};
}

bool Arc::contains(Point2 p, double tol) const {
    if (circle_distance(circle, p) > tol) return false;
    return half == HalfPlane::ClosedUpper ? p.y >= -tol : p.y <= tol;
}

CircleFamily line_family(double r) {
    require_radius(r);
    return make_family("(1-r^2)*t/(1-r^2*t^2)", "0", "r*(1-t^2)/(1-r^2*t^2)", -1.0, 1.0, {{"r", r}});
}

LineBoundarySpec line_boundary(double r) {
    require_radius(r);
    const double offset = (1.0 - r * r) / (2.0 * r);
    const double radius = (1.0 + r * r) / (2.0 * r);
    const Circle d1{{0.0, -offset}, radius};
    const Circle d2{{0.0, offset}, radius};
    return {r, d1, d2, {d1, HalfPlane::ClosedUpper}, {d2, HalfPlane::ClosedLower}};
}

std::vector<Point2> line_boundary_samples(double r, int n) {
    require_radius(r);
    std::vector<Point2> out;
    const int per_arc = std::max(2, n / 2);
    const double r2 = r * r;
    for (int i = 0; i < per_arc; ++i) {
        const double t = -1.0 + 2.0 * i / (per_arc - 1);
        const double denom = 1.0 + r2 * t * t;
        const double x = (r2 + 1.0) * t / denom;
        const double y = r * (1.0 - t * t) / denom;
        out.push_back({x, y});
        out.push_back({x, -y});
    }
    return out;
}

EnvelopeCheck check_line_envelope(double r, int n) {
    const CircleFamily f = line_family(r);
    const LineBoundarySpec spec = line_boundary(r);
    EnvelopeCheck check;
    for (int i = 0; i < n; ++i) {
        const double t = -1.0 + 2.0 * (i + 0.5) / n;
        const DiscriminantSolution sol = discriminant_envelope(f, t);
        if (sol.kind != EnvelopeKind::Pair) {
            ++check.wrong_side;
            continue;
        }
        for (const Point2& p : sol.points) {
            ++check.samples;
            const Arc& arc = p.y >= 0.0 ? spec.a1 : spec.a2;
            const double d = circle_distance(arc.circle, p);
            check.max_boundary_distance = std::max(check.max_boundary_distance, d);
            if (!arc.contains(p, 1e-9)) ++check.wrong_side;
        }
    }
    return check;
}

Complex horocycle_point(double k, double gamma) {
    require_k(k);
    if (std::fmod(gamma, kTwoPi) == 0.0) return 1.0;
    return 1.0 / (k + 1.0) + (k / (k + 1.0)) * std::polar(1.0, gamma);
}

HorocycleConstants horocycle_constants(double r, double k) {
    require_radius(r);
    require_k(k);
    HorocycleConstants h{};
    h.c1 = (1.0 - r) / ((1.0 - r) + k * (1.0 + r));
    h.R1 = 1.0 - h.c1;
    h.c2 = (1.0 + r) / ((1.0 + r) + k * (1.0 - r));
    h.R2 = 1.0 - h.c2;
    h.a = 0.5 * (h.R1 + h.R2);
    h.b = std::sqrt(h.R1 * h.R2);
    h.c = 0.5 * (h.c1 + h.c2);
    h.half_diff = 0.5 * (h.R1 - h.R2);
    return h;
}

CircleFamily horocycle_family(double r, double k) {
    const HorocycleConstants h = horocycle_constants(r, k);
    return make_family("c + a*cos(t)", "b*sin(t)", "w*(1 - cos(t))", 0.0, kTwoPi,
                       {{"a", h.a}, {"b", h.b}, {"c", h.c}, {"w", h.half_diff}});
}

HorocycleBoundarySpec horocycle_boundary(double r, double k) {
    const HorocycleConstants h = horocycle_constants(r, k);
    return {h, {{h.c1, 0.0}, h.R1}, {{h.c2, 0.0}, h.R2}, {{h.c, 0.0}, h.a, h.b}};
}

std::vector<Point2> horocycle_boundary_samples(double r, double k, int n) {
    const HorocycleBoundarySpec spec = horocycle_boundary(r, k);
    std::vector<Point2> out;
    const int per_circle = std::max(1, n / 2);
    for (const Circle& c : {spec.d1, spec.d2}) {
        for (int i = 0; i < per_circle; ++i) {
            const double phi = kTwoPi * i / per_circle;
            out.push_back({c.center.x + c.radius * std::cos(phi), c.center.y + c.radius * std::sin(phi)});
        }
    }
    return out;
}

HorocycleCheck check_horocycle(double r, double k, int n) {
    const CircleFamily f = horocycle_family(r, k);
    const HorocycleBoundarySpec spec = horocycle_boundary(r, k);
    const HorocycleConstants& h = spec.constants;
    HorocycleCheck check;
    check.min_denominator = INFINITY;
    const double base = 1.0 + k + r * r - k * r * r;
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * (i + 0.5) / n;
        ++check.samples;
        const EnvelopePair env = limiting_envelope(f, t);
        check.max_branch1_distance = std::max(check.max_branch1_distance, circle_distance(spec.d1, env.p1));
        check.max_branch2_distance = std::max(check.max_branch2_distance, circle_distance(spec.d2, env.p2));

        const Circle s = f.circle(t);
        const double dx1 = s.center.x - h.c1;
        const double dx2 = s.center.x - h.c2;
        const double y2 = s.center.y * s.center.y;
        const double inner = h.R1 - s.radius;
        const double outer = h.R2 + s.radius;
        check.max_internal_tangency =
            std::max(check.max_internal_tangency, std::abs(dx1 * dx1 + y2 - inner * inner));
        check.max_external_tangency =
            std::max(check.max_external_tangency, std::abs(dx2 * dx2 + y2 - outer * outer));
        const double to_c1 = distance(s.center, spec.d1.center);
        const double to_c2 = distance(s.center, spec.d2.center);
        check.max_external_distance = std::max(check.max_external_distance, std::abs(to_c2 - outer));
        check.max_focal_residual = std::max(check.max_focal_residual, std::abs(to_c1 + to_c2 - (h.R1 + h.R2)));
        check.min_denominator = std::min({check.min_denominator, base + 2.0 * r * std::cos(t),
                                          base - 2.0 * r * std::cos(t)});
    }
    return check;
}

}  // namespace envelopes
