#include "envelopes/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "envelopes/error.hpp"
#include "numeric.hpp"

namespace envelopes {

namespace {

constexpr int kValidationSamples = 200;
constexpr int kDerivativeChecks = 20;
constexpr double kDerivativeTolerance = 1e-5;
constexpr double kNegativeRadiusTolerance = 1e-12;
constexpr int kHypothesisSamples = 1000;
constexpr int kSupportSamples = 2000;
constexpr int kClearanceSamples = 2000;

std::string describe(const std::string& what, double t) { return what + " at t=" + std::to_string(t); }

void check_derivative(const CompiledExpr& fn, const CompiledExpr& dfn, double t, double h, const char* name) {
    const double fd = (fn(t + h) - fn(t - h)) / (2.0 * h);
    const double sym = dfn(t);
    const double scale = std::max({1.0, std::abs(fd), std::abs(sym)});
    if (std::abs(fd - sym) > kDerivativeTolerance * scale)
        throw ConsistencyError(describe(std::string("derivative of ") + name + " disagrees with finite differences", t));
}

}  // namespace

CircleState CircleFamily::state(double t) const {
    return {t, x_fn_(t), y_fn_(t), r_fn_(t), dx_fn_(t), dy_fn_(t), dr_fn_(t)};
}

double CircleFamily::residual(Point2 p, double t) const {
    const Point2 d = p - center(t);
    const double r = radius(t);
    return dot(d, d) - r * r;
}

CircleFamily make_family(Expr x_c, Expr y_c, Expr r, double s1, double s2, Constants constants) {
    if (!std::isfinite(s1) || !std::isfinite(s2) || !(s1 < s2))
        throw InvalidArgument("family interval must satisfy s1 < s2");

    CircleFamily f;
    f.dx_c_ = differentiate(x_c);
    f.dy_c_ = differentiate(y_c);
    f.dr_ = differentiate(r);
    f.x_c_ = std::move(x_c);
    f.y_c_ = std::move(y_c);
    f.r_ = std::move(r);
    f.s1_ = s1;
    f.s2_ = s2;
    f.constants_ = std::move(constants);

    f.x_fn_ = CompiledExpr(f.x_c_, f.constants_);
    f.y_fn_ = CompiledExpr(f.y_c_, f.constants_);
    f.r_fn_ = CompiledExpr(f.r_, f.constants_);
    f.dx_fn_ = CompiledExpr(f.dx_c_, f.constants_);
    f.dy_fn_ = CompiledExpr(f.dy_c_, f.constants_);
    f.dr_fn_ = CompiledExpr(f.dr_, f.constants_);

    const double len = s2 - s1;
    for (int i = 0; i < kValidationSamples; ++i) {
        const double t = i + 1 == kValidationSamples ? s2 : s1 + len * i / (kValidationSamples - 1);
        double radius = 0.0;
        try {
            f.x_fn_(t);
            f.y_fn_(t);
            radius = f.r_fn_(t);
        } catch (const DomainError& e) {
            throw DomainError(describe(e.what(), t));
        }
        if (radius < -kNegativeRadiusTolerance)
            throw InvalidArgument(describe("negative radius", t));
    }

    const double h = std::min(1e-5, len / (4.0 * (kDerivativeChecks + 1)));
    for (int i = 1; i <= kDerivativeChecks; ++i) {
        const double t = s1 + len * i / (kDerivativeChecks + 1);
        check_derivative(f.x_fn_, f.dx_fn_, t, h, "x_c");
        check_derivative(f.y_fn_, f.dy_fn_, t, h, "y_c");
        check_derivative(f.r_fn_, f.dr_fn_, t, h, "r");
    }
    return f;
}

CircleFamily make_family(std::string_view x_c, std::string_view y_c, std::string_view r, double s1,
                         double s2, Constants constants) {
    return make_family(parse(x_c), parse(y_c), parse(r), s1, s2, std::move(constants));
}

HypothesisReport check_hypotheses(const CircleFamily& f) {
    HypothesisReport report;
    const double len = f.s2() - f.s1();
    auto sample_t = [&](int i) { return f.s1() + len * (i + 0.5) / kHypothesisSamples; };
    auto gap_at = [&](double t) {
        try {
            return f.state(t).derivative_gap();
        } catch (const DomainError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    int best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kHypothesisSamples; ++i) {
        const double t = sample_t(i);
        const CircleState st = f.state(t);
        if (!(st.r > 0.0)) report.radius_positive_interior = false;
        const double gap = st.derivative_gap();
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    const double lo = best > 0 ? sample_t(best - 1) : 0.5 * (f.s1() + sample_t(0));
    const double hi = best + 1 < kHypothesisSamples ? sample_t(best + 1)
                                                    : 0.5 * (f.s2() + sample_t(kHypothesisSamples - 1));
    const detail::Minimum refined = detail::golden_section(gap_at, lo, hi);
    report.min_derivative_gap = best_gap;
    report.argmin_t = sample_t(best);
    if (refined.value < best_gap) {
        report.min_derivative_gap = refined.value;
        report.argmin_t = refined.t;
    }
    return report;
}

EnvelopePair limiting_envelope(const CircleFamily& f, double t) {
    if (!f.interior(t)) throw InvalidArgument("limiting envelope needs an interior parameter");
    const CircleState st = f.state(t);
    const double speed2 = st.speed2();
    if (speed2 == 0.0) throw DomainError(describe("zero center velocity", t));
    double gap = st.derivative_gap();
    if (gap < 0.0) {
        if (gap < -1e-12 * speed2) throw DomainError(describe("negative derivative gap (nested circles)", t));
        gap = 0.0;
    }
    const double root = std::sqrt(gap);
    const double k = st.r / speed2;
    const Point2 c{st.x, st.y};
    const Point2 p1 = c + k * Point2{-st.dx * st.dr + st.dy * root, -st.dy * st.dr - st.dx * root};
    const Point2 p2 = c + k * Point2{-st.dx * st.dr - st.dy * root, -st.dy * st.dr + st.dx * root};
    return {t, p1, p2};
}

DiscriminantSolution discriminant_envelope(const CircleFamily& f, double t) {
    if (!(t >= f.s1() && t <= f.s2())) throw InvalidArgument("parameter outside the family interval");
    const CircleState st = f.state(t);
    const Point2 c{st.x, st.y};
    const Point2 v{st.dx, st.dy};
    const double vv = dot(v, v);
    const double rhs = -st.r * st.dr;  // F_t = 0  <=>  v . (p - c) = -r r'

    if (st.r == 0.0) return {EnvelopeKind::Single, {c}};
    if (vv < 1e-28) {
        if (std::abs(rhs) <= 1e-14 * std::max(1.0, st.r * st.r)) return {EnvelopeKind::WholeCircle, {}};
        return {EnvelopeKind::Empty, {}};
    }

    // Foot of the perpendicular from the center onto the line, then the chord.
    const Point2 foot = c + (rhs / vv) * v;
    const double offset2 = rhs * rhs / vv;
    const double half_chord2 = st.r * st.r - offset2;
    const double tol = 1e-14 * st.r * st.r;
    if (half_chord2 < -tol) return {EnvelopeKind::Empty, {}};
    if (half_chord2 <= tol) return {EnvelopeKind::Single, {foot}};

    const double s = std::sqrt(half_chord2 / vv);
    const Point2 along{st.dy * s, -st.dx * s};
    return {EnvelopeKind::Pair, {foot + along, foot - along}};
}

std::vector<Interval> envelope_support(const CircleFamily& f) {
    const double len = f.s2() - f.s1();
    auto sample_t = [&](int i) { return f.s1() + len * (i + 0.5) / kSupportSamples; };
    auto gap = [&](double t) { return f.state(t).derivative_gap(); };

    std::vector<Interval> out;
    double prev_t = sample_t(0);
    bool prev_in = gap(prev_t) >= 0.0;
    double open_lo = f.s1();
    for (int i = 1; i < kSupportSamples; ++i) {
        const double t = sample_t(i);
        const bool in = gap(t) >= 0.0;
        if (in != prev_in) {
            const double root = detail::bisect(gap, prev_t, t, 1e-12);
            if (in) {
                open_lo = root;
            } else {
                out.push_back({open_lo, root});
            }
        }
        prev_t = t;
        prev_in = in;
    }
    if (prev_in) out.push_back({open_lo, f.s2()});
    return out;
}

LimitCheckRecord numeric_limit_check(const CircleFamily& f, double t, const std::vector<double>& h_list) {
    if (h_list.empty()) throw InvalidArgument("empty step list");
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        const double h = h_list[i];
        if (h == 0.0 || !std::isfinite(h)) throw InvalidArgument("steps must be finite and non-zero");
        if (i > 0 && !(std::abs(h) < std::abs(h_list[i - 1])))
            throw InvalidArgument("step magnitudes must strictly decrease");
        if (!(t + h >= f.s1() && t + h <= f.s2())) throw InvalidArgument("t + h leaves the family interval");
    }
    if (!f.interior(t)) throw InvalidArgument("limit check needs an interior parameter");

    LimitCheckRecord rec;
    rec.t = t;
    rec.h_sequence = h_list;
    try {
        rec.target = limiting_envelope(f, t);
    } catch (const DomainError& e) {
        rec.notes.push_back(std::string("no closed-form limit: ") + e.what());
    }

    const Circle base = f.circle(t);
    for (const double h : h_list) {
        const IntersectionResult hit = intersect_circles(base, f.circle(t + h));
        const auto* two = std::get_if<intersection::TwoPoints>(&hit);
        if (!two) {
            rec.notes.push_back("h=" + std::to_string(h) + " dropped: circles do not cross");
            continue;
        }
        LimitSample s{h, two->first, two->second, std::numeric_limits<double>::quiet_NaN()};
        if (rec.target) {
            const EnvelopePair& p = *rec.target;
            const double direct = std::max(distance(s.q1, p.p1), distance(s.q2, p.p2));
            const double swapped = std::max(distance(s.q2, p.p1), distance(s.q1, p.p2));
            if (swapped < direct) std::swap(s.q1, s.q2);
            s.deviation = std::min(direct, swapped);
            rec.max_deviation = std::max(rec.max_deviation, s.deviation);
        }
        rec.samples.push_back(s);
    }

    if (rec.target && rec.samples.size() >= 2) {
        const LimitSample& a = rec.samples[rec.samples.size() - 2];
        const LimitSample& b = rec.samples.back();
        const double w = b.h / (a.h - b.h);
        rec.extrapolated = EnvelopePair{t, b.q1 + w * (b.q1 - a.q1), b.q2 + w * (b.q2 - a.q2)};
    }
    return rec;
}

double min_disk_clearance(const CircleFamily& f, Point2 p) {
    const double len = f.s2() - f.s1();
    auto sample_t = [&](int i) {
        return i + 1 == kClearanceSamples ? f.s2() : f.s1() + len * i / (kClearanceSamples - 1);
    };
    auto clearance = [&](double t) { return distance(p, f.center(t)) - f.radius(t); };

    std::vector<double> values(kClearanceSamples);
    for (int i = 0; i < kClearanceSamples; ++i) values[i] = clearance(sample_t(i));

    std::vector<int> minima;
    for (int i = 0; i < kClearanceSamples; ++i) {
        const bool left = i == 0 || values[i] <= values[i - 1];
        const bool right = i + 1 == kClearanceSamples || values[i] <= values[i + 1];
        if (left && right) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(), [&](int a, int b) { return values[a] < values[b]; });
    if (minima.size() > 3) minima.resize(3);

    double best = *std::min_element(values.begin(), values.end());
    for (const int i : minima) {
        const double lo = sample_t(std::max(0, i - 1));
        const double hi = sample_t(std::min(kClearanceSamples - 1, i + 1));
        best = std::min(best, detail::golden_section(clearance, lo, hi).value);
    }
    return best;
}

std::vector<Point2> boundary_filter(const CircleFamily& f, const std::vector<Point2>& candidates, double tol) {
    std::vector<Point2> kept;
    for (const Point2& p : candidates)
        if (min_disk_clearance(f, p) >= -tol) kept.push_back(p);
    return kept;
}

}  // namespace envelopes
