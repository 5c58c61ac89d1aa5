#pragma once

// Pseudohyperbolic disks D(β, r) = { z : |(z - β)/(1 - conj(β) z)| < r } and the
// two families whose unions have closed-form boundaries: centers on a real
// segment (line family) and centers on a horocycle.

#include <complex>
#include <vector>

#include "envelopes/family.hpp"
#include "envelopes/geom.hpp"

namespace envelopes {

using Complex = std::complex<double>;

struct PseudoDisk {
    Complex beta;
    double rho;  // pseudohyperbolic radius, 0 < rho < 1
};

/// |z - w| / |1 - conj(w) z| on the open unit disk.
double pseudo_distance(Complex z, Complex w);

/// A pseudohyperbolic disk is a Euclidean disk with center (1-r^2)β/(1-r^2|β|^2)
/// and radius r(1-|β|^2)/(1-r^2|β|^2).
Circle to_euclidean(const PseudoDisk& d);

// --- centers on [-1, 1] ----------------------------------------------------

enum class HalfPlane { ClosedUpper, ClosedLower };

struct Arc {
    Circle circle;
    HalfPlane half;

    bool contains(Point2 p, double tol) const;
};

struct LineBoundarySpec {
    double r;
    Circle d1;  // center -((1-r^2)/(2r)) i
    Circle d2;  // center +((1-r^2)/(2r)) i
    Arc a1;     // ∂D1 in the closed upper half-plane
    Arc a2;     // ∂D2 in the closed lower half-plane

    bool on_boundary(Point2 p, double tol) const { return a1.contains(p, tol) || a2.contains(p, tol); }
};

/// Boundary circles of the union of D(t, r), t in [-1, 1].
CircleFamily line_family(double r);
LineBoundarySpec line_boundary(double r);

/// n points on A1 ∪ A2, half on each arc, from
/// x(t) = (r^2+1)t/(1+r^2 t^2), y(t) = ±r(1-t^2)/(1+r^2 t^2), t uniform on [-1, 1].
std::vector<Point2> line_boundary_samples(double r, int n);

struct EnvelopeCheck {
    int samples = 0;
    double max_boundary_distance = 0.0;  // envelope point to its predicted circle
    int wrong_side = 0;                  // points on the wrong arc / circle
};

/// Discriminant envelope of the line family at n interior t, measured against A1 ∪ A2.
EnvelopeCheck check_line_envelope(double r, int n);

// --- centers on a horocycle --------------------------------------------------

/// α = 1/(k+1) + (k/(k+1)) e^{iγ} on H(1, k); γ ≡ 0 (mod 2π) returns exactly 1.
Complex horocycle_point(double k, double gamma);

struct HorocycleConstants {
    double c1, R1;  // outer boundary circle ∂D1
    double c2, R2;  // inner boundary circle ∂D2
    double a, b, c; // center ellipse (x - c)^2/a^2 + y^2/b^2 = 1
    double half_diff;  // (R1 - R2) / 2
};

HorocycleConstants horocycle_constants(double r, double k);

struct HorocycleBoundarySpec {
    HorocycleConstants constants;
    Circle d1;
    Circle d2;
    EllipseSpec center_ellipse;
};

/// Euclidean circles S_t of the disks D(α, r), α on H(1, k), parameterized by
/// the center-ellipse angle t in [0, 2π]:
/// x_c = c + a cos t, y_c = b sin t, radius (R1 - R2)/2 (1 - cos t).
CircleFamily horocycle_family(double r, double k);
HorocycleBoundarySpec horocycle_boundary(double r, double k);

/// n points on ∂D1 ∪ ∂D2, half on each circle, uniform in angle.
std::vector<Point2> horocycle_boundary_samples(double r, double k, int n);

struct HorocycleCheck {
    int samples = 0;
    double max_branch1_distance = 0.0;    // limiting envelope branch 1 to ∂D1
    double max_branch2_distance = 0.0;    // branch 2 to ∂D2
    double max_internal_tangency = 0.0;   // |(x_c-c1)^2 + y_c^2 - (R1-r(t))^2|
    double max_external_tangency = 0.0;   // |(x_c-c2)^2 + y_c^2 - (R2+r(t))^2|
    double max_external_distance = 0.0;   // ||center - c2| - (R2 + r(t))|
    double max_focal_residual = 0.0;      // ||center-c1| + |center-c2| - (R1+R2)|
    double min_denominator = 0.0;         // min of 1+k+r^2-kr^2 ± 2r cos t
};

/// Evaluates the boundary and tangency identities at n interior t.
HorocycleCheck check_horocycle(double r, double k, int n);

}  // namespace envelopes
