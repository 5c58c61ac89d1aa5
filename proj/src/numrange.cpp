#include "envelopes/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "envelopes/error.hpp"
#include "numeric.hpp"

namespace envelopes {

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Matrix2 operator*(Complex s, const Matrix2& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Matrix2 tprime_matrix(double m) { return {0.0, m, 0.0, 1.0}; }

std::pair<Complex, Complex> eigenvalues2(const Matrix2& a) {
    const Complex half = 0.5 * a.trace();
    const Complex det = a.det();
    const Complex s = std::sqrt(half * half - det);
    const Complex plus = half + s;
    const Complex minus = half - s;
    // Take the root that avoids cancellation and recover the other from det.
    if (std::abs(plus) >= std::abs(minus)) {
        if (plus == Complex{}) return {plus, minus};
        return {plus, det / plus};
    }
    return {det / minus, minus};
}

SchurForm schur_parameters(const Matrix2& a) {
    const auto [ea, eb] = eigenvalues2(a);
    const double frob2 = a.frobenius2();
    double p2 = frob2 - std::norm(ea) - std::norm(eb);
    if (p2 < 0.0) {
        if (p2 < -1e-10 * std::max(1.0, frob2))
            throw ConsistencyError("tr(A*A) - |a|^2 - |b|^2 is negative beyond roundoff");
        p2 = 0.0;
    }
    SchurForm s{ea, eb, std::sqrt(p2), std::nullopt};
    const double gap = std::abs(eb - ea);
    if (gap > kShapeTolerance) s.m = s.p / gap;
    return s;
}

NumericalRangeShape ert_shape(const Matrix2& a) {
    const SchurForm s = schur_parameters(a);
    const bool same_eigenvalue = std::abs(s.b - s.a) <= kShapeTolerance;
    const bool normal = s.p <= kShapeTolerance;
    if (same_eigenvalue) {
        const Complex mid = 0.5 * (s.a + s.b);
        if (normal) return shape::Point{mid};
        return shape::Ellipse{mid, mid, s.p};
    }
    if (normal) return shape::Segment{s.a, s.b};
    return shape::Ellipse{s.a, s.b, s.p};
}

namespace {

double segment_distance(Complex from, Complex to, Complex z) {
    const Complex d = to - from;
    const double len2 = std::norm(d);
    double u = len2 > 0.0 ? ((z - from) * std::conj(d)).real() / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(z - (from + u * d));
}

}  // namespace

double shape_value(const NumericalRangeShape& s, Complex z) {
    if (const auto* p = std::get_if<shape::Point>(&s)) return std::abs(z - p->z);
    if (const auto* g = std::get_if<shape::Segment>(&s)) return segment_distance(g->from, g->to, z);
    const auto& e = std::get<shape::Ellipse>(s);
    const Complex w = (z - e.center()) * std::polar(1.0, -e.angle());
    return ellipse_value(EllipseSpec{{0.0, 0.0}, e.semi_major(), e.semi_minor()}, {w.real(), w.imag()});
}

std::vector<Point2> shape_boundary(const NumericalRangeShape& s, int n) {
    std::vector<Point2> out;
    if (n < 1) return out;
    if (const auto* p = std::get_if<shape::Point>(&s)) return {{p->z.real(), p->z.imag()}};
    if (const auto* g = std::get_if<shape::Segment>(&s)) {
        for (int i = 0; i < n; ++i) {
            const double u = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            const Complex z = g->from + u * (g->to - g->from);
            out.push_back({z.real(), z.imag()});
        }
        return out;
    }
    const auto& e = std::get<shape::Ellipse>(s);
    const Complex rot = std::polar(1.0, e.angle());
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n;
        const Complex z = e.center() + rot * Complex{e.semi_major() * std::cos(phi), e.semi_minor() * std::sin(phi)};
        out.push_back({z.real(), z.imag()});
    }
    return out;
}

EllipseSpec tprime_ellipse(double m) {
    return {{0.5, 0.0}, 0.5 * std::sqrt(1.0 + m * m), 0.5 * m};
}

Complex quadratic_form(const Matrix2& a, double t, double theta1, double theta2) {
    const Complex z1 = std::polar(t, theta1);
    const Complex z2 = std::polar(std::sqrt(std::max(0.0, 1.0 - t * t)), theta2);
    return std::conj(z1) * (a.a11 * z1 + a.a12 * z2) + std::conj(z2) * (a.a21 * z1 + a.a22 * z2);
}

std::vector<Point2> sample_numerical_range(const Matrix2& a, int n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample count must be at least 1");
    std::mt19937_64 gen(seed);
    auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = unit();
        const double theta1 = kTwoPi * unit();
        const double theta2 = kTwoPi * unit();
        const Complex w = quadratic_form(a, t, theta1, theta2);
        out.push_back({w.real(), w.imag()});
    }
    return out;
}

CircleFamily tprime_family(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("tprime family needs m > 0");
    return make_family("1-t^2", "0", "m*t*sqrt(1-t^2)", 0.0, 1.0, {{"m", m}});
}

std::optional<double> covering_parameter(double m, Point2 p) {
    const double m2 = m * m;
    auto G = [&](double t) {
        const double u = p.x - (1.0 - t * t);
        return u * u + p.y * p.y - m2 * t * t * (1.0 - t * t);
    };
    // C_{t0} is the circle through the two ellipse points with abscissa x.
    const double t0sq = std::clamp((1.0 + 0.5 * m2 - p.x) / (1.0 + m2), 0.0, 1.0);
    const double t0 = std::sqrt(t0sq);
    const double g0 = G(t0);
    if (g0 == 0.0) return t0;
    if (p.x == 0.0 && p.y == 0.0) return 1.0;
    if (g0 > 0.0) return std::nullopt;
    if (!(G(1.0) > 0.0)) return std::nullopt;
    return detail::bisect(G, t0, 1.0, 1e-16);
}

CoverageReport coverage_check(double m, int grid_n, double tol) {
    if (!(m > 0.0)) throw InvalidArgument("coverage check needs m > 0");
    if (grid_n < 2) throw InvalidArgument("coverage grid needs at least 2 points per side");
    const CircleFamily family = tprime_family(m);
    const EllipseSpec e = tprime_ellipse(m);

    CoverageReport report;
    report.grid_n = grid_n;
    for (int i = 0; i < grid_n; ++i) {
        const double x = e.center.x - e.semi_major + 2.0 * e.semi_major * i / (grid_n - 1);
        for (int j = 0; j < grid_n; ++j) {
            const double y = e.center.y - e.semi_minor + 2.0 * e.semi_minor * j / (grid_n - 1);
            const Point2 p{x, y};
            if (ellipse_value(e, p) > 0.0) continue;
            ++report.points_checked;
            const std::optional<double> t = covering_parameter(m, p);
            const double residual = t ? std::abs(family.residual(p, *t)) : INFINITY;
            report.max_residual = std::max(report.max_residual, residual);
            if (residual > tol) {
                ++report.failures;
                if (report.failed_points.size() < 16) report.failed_points.push_back(p);
            }
        }
    }
    return report;
}

}  // namespace envelopes
