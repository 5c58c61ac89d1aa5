#pragma once

// Numerical range W(A) = { <Az, z> : |z| = 1 } of complex 2x2 matrices.

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "envelopes/family.hpp"
#include "envelopes/geom.hpp"

namespace envelopes {

using Complex = std::complex<double>;

struct Matrix2 {
    Complex a11, a12, a21, a22;

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    Complex trace() const { return a11 + a22; }
    Complex det() const { return a11 * a22 - a12 * a21; }
    /// tr(A* A), the squared Frobenius norm.
    double frobenius2() const { return std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22); }
    Matrix2 adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
};

Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator*(Complex s, const Matrix2& a);
Matrix2 operator+(const Matrix2& a, const Matrix2& b);

/// The normalized upper-triangular representative [[0, m], [0, 1]].
Matrix2 tprime_matrix(double m);

/// Roots of the characteristic polynomial, larger-magnitude root of the
/// numerically stable pair first computed, the other from the determinant.
std::pair<Complex, Complex> eigenvalues2(const Matrix2& a);

/// Parameters of the Schur form [[a, p], [0, b]], p >= 0.
struct SchurForm {
    Complex a;
    Complex b;
    double p = 0.0;
    std::optional<double> m;  // p / |b - a| when the eigenvalues are distinct
};

SchurForm schur_parameters(const Matrix2& a);

namespace shape {

struct Point {
    Complex z;
};
struct Segment {
    Complex from;
    Complex to;
};
/// Closed elliptical disk with the given foci and minor-axis length; equal foci give a circular disk.
struct Ellipse {
    Complex f1;
    Complex f2;
    double minor_axis;

    Complex center() const { return 0.5 * (f1 + f2); }
    double semi_minor() const { return 0.5 * minor_axis; }
    double semi_major() const { return 0.5 * std::hypot(std::abs(f2 - f1), minor_axis); }
    /// Direction of the major axis; 0 for a circle.
    double angle() const { return f1 == f2 ? 0.0 : std::arg(f2 - f1); }
};

}  // namespace shape

using NumericalRangeShape = std::variant<shape::Point, shape::Segment, shape::Ellipse>;

inline constexpr double kShapeTolerance = 1e-12;

NumericalRangeShape ert_shape(const Matrix2& a);

/// Signed membership value of z in the closed shape. For an ellipse this is
/// ellipse_value() in the ellipse's own axis frame (<= 0 inside); for points
/// and segments it is the Euclidean distance to the set.
double shape_value(const NumericalRangeShape& s, Complex z);

/// n points spread over the shape's boundary (the set itself for points and segments).
std::vector<Point2> shape_boundary(const NumericalRangeShape& s, int n);

/// Closed elliptical disk (x - 1/2)^2/(1 + m^2) + y^2/m^2 <= 1/4 as an EllipseSpec.
EllipseSpec tprime_ellipse(double m);

/// <Az, z> for z = (t e^{iθ1}, sqrt(1 - t^2) e^{iθ2}).
Complex quadratic_form(const Matrix2& a, double t, double theta1, double theta2);

/// n samples of W(A). The generator is std::mt19937_64 seeded with `seed`;
/// each sample consumes three consecutive 64-bit outputs, in order t, θ1, θ2,
/// each mapped to [0, 1) as (x >> 11) * 2^-53 and then scaled (t in [0,1],
/// θ in [0, 2π)). Identical (seed, n) give identical output on every platform.
std::vector<Point2> sample_numerical_range(const Matrix2& a, int n, std::uint64_t seed);

/// Circles C_t: (x - (1 - t^2))^2 + y^2 = m^2 t^2 (1 - t^2) on [0, 1].
CircleFamily tprime_family(double m);

struct CoverageReport {
    int grid_n = 0;
    int points_checked = 0;
    int failures = 0;
    double max_residual = 0.0;
    std::vector<Point2> failed_points;  // first few only
};

/// Checks that every grid point inside the closed T' ellipse lies on some C_t,
/// by bracketing a sign change of G(t) = F(x, y, t) on [t0, 1] and bisecting.
CoverageReport coverage_check(double m, int grid_n, double tol = 1e-8);

/// One point of W(T') coverage: returns the t with |F(x, y, t)| minimal found
/// by the bracketing argument, or nothing if no sign change exists.
std::optional<double> covering_parameter(double m, Point2 p);

}  // namespace envelopes
