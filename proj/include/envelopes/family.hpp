#pragma once

// One-parameter families of circles
//
//     F(x, y, t) = (x - x_c(t))^2 + (y - y_c(t))^2 - r(t)^2,   t in [s1, s2]
//
// and their envelopes. Two routes to the envelope are provided and kept
// separate: the limiting-position envelope (closed-form limit of the
// intersection points of C_t and C_{t+h}) and the discriminant envelope
// (solve F = 0 together with F_t = 0).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envelopes/expr.hpp"
#include "envelopes/geom.hpp"

namespace envelopes {

/// Center, radius and their first derivatives at one parameter value.
struct CircleState {
    double t;
    double x, y, r;
    double dx, dy, dr;

    Circle circle() const { return {{x, y}, r}; }
    double speed2() const { return dx * dx + dy * dy; }
    /// x_c'^2 + y_c'^2 - r'^2; positive where neighbouring circles cross.
    double derivative_gap() const { return speed2() - dr * dr; }
};

class CircleFamily {
public:
    const Expr& x_c() const { return x_c_; }
    const Expr& y_c() const { return y_c_; }
    const Expr& r() const { return r_; }
    const Expr& dx_c() const { return dx_c_; }
    const Expr& dy_c() const { return dy_c_; }
    const Expr& dr() const { return dr_; }
    double s1() const { return s1_; }
    double s2() const { return s2_; }
    const Constants& constants() const { return constants_; }

    Point2 center(double t) const { return {x_fn_(t), y_fn_(t)}; }
    double radius(double t) const { return r_fn_(t); }
    Circle circle(double t) const { return {center(t), radius(t)}; }
    /// Includes derivatives; throws DomainError where they are singular (e.g. r = 0 under a sqrt).
    CircleState state(double t) const;
    /// F(p, t).
    double residual(Point2 p, double t) const;

    bool interior(double t) const { return t > s1_ && t < s2_; }

private:
    friend CircleFamily make_family(Expr, Expr, Expr, double, double, Constants);

    Expr x_c_, y_c_, r_;
    Expr dx_c_, dy_c_, dr_;
    CompiledExpr x_fn_, y_fn_, r_fn_, dx_fn_, dy_fn_, dr_fn_;
    double s1_ = 0.0, s2_ = 1.0;
    Constants constants_;
};

/// Builds a family, differentiating symbolically. Validates every expression on
/// a 200-point grid of [s1, s2], rejects r < -1e-12, and checks the symbolic
/// derivatives against central differences at 20 interior points.
CircleFamily make_family(Expr x_c, Expr y_c, Expr r, double s1, double s2, Constants constants);
CircleFamily make_family(std::string_view x_c, std::string_view y_c, std::string_view r, double s1,
                         double s2, Constants constants);

struct HypothesisReport {
    bool radius_positive_interior = true;
    double min_derivative_gap = 0.0;
    double argmin_t = 0.0;
    /// C^2 smoothness is taken for granted; only C^1 is exercised numerically.
    bool smoothness_assumed = true;

    bool satisfied() const { return radius_positive_interior && min_derivative_gap > 0.0; }
};

/// Samples 1000 interior points and refines the smallest derivative gap by golden section.
HypothesisReport check_hypotheses(const CircleFamily& f);

struct EnvelopePair {
    double t;
    Point2 p1;
    Point2 p2;
};

/// Closed-form limit points of C_t ∩ C_{t+h} as h -> 0:
///   p_j = c + r/|c'|^2 (-c' r' ± c'^⊥ sqrt(|c'|^2 - r'^2)).
/// Throws InvalidArgument outside (s1, s2), DomainError for a negative
/// derivative gap (nested neighbours) or zero center velocity.
EnvelopePair limiting_envelope(const CircleFamily& f, double t);

enum class EnvelopeKind {
    Empty,        // F_t = 0 misses C_t
    Single,       // tangent line, or a point circle
    Pair,
    WholeCircle,  // F_t vanishes identically: stationary circle with r r' = 0
};

struct DiscriminantSolution {
    EnvelopeKind kind = EnvelopeKind::Empty;
    std::vector<Point2> points;
};

/// Solves F = 0, F_t = 0 at a fixed t: the line x_c'(x-x_c) + y_c'(y-y_c) = -r r'
/// intersected with C_t.
DiscriminantSolution discriminant_envelope(const CircleFamily& f, double t);

struct Interval {
    double lo;
    double hi;
};

/// Maximal sub-intervals of [s1, s2] where the derivative gap is >= 0, found by
/// 2000-point sign sampling and bisection of every sign change to 1e-12.
std::vector<Interval> envelope_support(const CircleFamily& f);

struct LimitSample {
    double h;
    Point2 q1;  // intersection point matched to p1
    Point2 q2;  // intersection point matched to p2
    double deviation;
};

struct LimitCheckRecord {
    double t = 0.0;
    std::vector<double> h_sequence;
    std::vector<LimitSample> samples;
    std::vector<std::string> notes;
    std::optional<EnvelopePair> target;
    /// Linear extrapolation to h = 0 from the two smallest retained steps.
    std::optional<EnvelopePair> extrapolated;
    double max_deviation = 0.0;
};

/// Intersects C_t with C_{t+h} for each h (|h| strictly decreasing, non-zero)
/// and measures the distance to the closed-form limit points. Steps whose
/// circles do not cross are dropped with a note.
LimitCheckRecord numeric_limit_check(const CircleFamily& f, double t, const std::vector<double>& h_list);

/// min over t of |p - c(t)| - r(t): 2000 samples plus golden-section refinement
/// of the three smallest local minima.
double min_disk_clearance(const CircleFamily& f, Point2 p);

/// Keeps the candidates lying in no open disk D_t (clearance >= -tol).
std::vector<Point2> boundary_filter(const CircleFamily& f, const std::vector<Point2>& candidates, double tol);

}  // namespace envelopes
