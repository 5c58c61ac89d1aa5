#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "envelopes/envelopes.hpp"

using namespace envelopes;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s  %2d  %-34s %s  [%.3fs, budget %.1fs]\n", out.pass ? "PASS" : "FAIL", id, name,
                out.detail.c_str(), secs, budget_s);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Parameters spread over the interiors of the support intervals.
std::vector<double> support_parameters(const CircleFamily& f, int count) {
    const std::vector<Interval> support = envelope_support(f);
    double total = 0.0;
    for (const Interval& iv : support) total += iv.hi - iv.lo;
    std::vector<double> ts;
    for (int i = 0; i < count; ++i) {
        double s = total * (i + 0.5) / count;
        for (const Interval& iv : support) {
            if (s <= iv.hi - iv.lo) {
                ts.push_back(iv.lo + s);
                break;
            }
            s -= iv.hi - iv.lo;
        }
    }
    return ts;
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Matrix2 random_matrix(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix2 a;
    for (Complex* z : {&a.a11, &a.a12, &a.a21, &a.a22}) *z = {n(gen), n(gen)};
    return a;
}

Outcome raster_check(const CircleFamily& f, const BBox& box, const std::vector<Point2>& truth,
                     std::vector<Point2>* cells_out = nullptr) {
    const int n = 1200;
    const OracleGrid g = rasterize_union(f, box, n, 4000);
    const std::vector<Point2> cells = extract_boundary(g);
    if (cells_out) *cells_out = cells;
    const double forward = directed_hausdorff(cells, truth);
    const double backward = directed_hausdorff(truth, cells);
    const double h = std::max(forward, backward);
    const double tol = 2.0 * g.cell_size;
    return {h <= tol, fmt("hausdorff=%.3e (cells->truth %.3e, truth->cells %.3e)", h, forward, backward) +
                          fmt(" tol=%.3e", tol)};
}

}  // namespace

int main() {
    std::printf("acceptance criteria\n");

    criterion(1, "envelope-ellipse identity", 1.0, [] {
        double worst = 0.0;
        int points = 0;
        for (const double m : {0.5, 1.0, 2.0}) {
            const CircleFamily f = tprime_family(m);
            for (const double t : support_parameters(f, 1000)) {
                for (const Point2& p : discriminant_envelope(f, t).points) {
                    const double u = p.x - 0.5;
                    const double v = u * u / (1.0 + m * m) + p.y * p.y / (m * m) - 0.25;
                    worst = std::max(worst, std::abs(v));
                    ++points;
                }
            }
        }
        return Outcome{worst <= 1e-10 && points >= 3000, fmt("max residual=%.3e over %g points tol=1e-10", worst, points)};
    });

    criterion(2, "support-interval roots", 0.1, [] {
        const std::vector<Interval> support = envelope_support(tprime_family(1.0));
        auto quartic = [](double t) { return 8.0 * t * t * t * t - 8.0 * t * t + 1.0; };
        const double r1 = bisect_root(quartic, 0.0, 0.5);
        const double r2 = bisect_root(quartic, 0.5, 1.0);
        if (support.size() != 1) return Outcome{false, fmt("expected one interval, got %g", support.size())};
        const double e1 = std::abs(support[0].lo - std::sin(std::numbers::pi / 8));
        const double e2 = std::abs(support[0].hi - std::cos(std::numbers::pi / 8));
        const double o1 = std::abs(support[0].lo - r1), o2 = std::abs(support[0].hi - r2);
        return Outcome{std::max({e1, e2, o1, o2}) <= 1e-9,
                       fmt("|t1-sin(pi/8)|=%.2e |t2-cos(pi/8)|=%.2e vs bisection %.2e", e1, e2, std::max(o1, o2))};
    });

    criterion(3, "forward containment", 1.0, [] {
        const EllipseSpec e = tprime_ellipse(1.0);
        double worst = -INFINITY;
        for (const Point2& p : sample_numerical_range(tprime_matrix(1.0), 100000, 20240601))
            worst = std::max(worst, ellipse_value(e, p));
        return Outcome{worst <= 1e-12, fmt("max ellipse_value=%.3e over 1e5 samples tol=1e-12", worst)};
    });

    criterion(4, "backward coverage", 5.0, [] {
        const CoverageReport r = coverage_check(1.0, 50, 1e-8);
        return Outcome{r.failures == 0 && r.points_checked > 0,
                       fmt("failures=%g of %g points, max residual=%.3e", r.failures, r.points_checked, r.max_residual)};
    });

    criterion(5, "elliptical range theorem", 30.0, [] {
        std::mt19937_64 gen(7);
        double worst_inside = -INFINITY, worst_fill = 0.0;
        for (int k = 0; k < 20; ++k) {
            const Matrix2 a = random_matrix(gen);
            const NumericalRangeShape s = ert_shape(a);
            const std::vector<Point2> cloud = sample_numerical_range(a, 200000, 1000 + k);
            for (const Point2& p : cloud) worst_inside = std::max(worst_inside, shape_value(s, {p.x, p.y}));
            worst_fill = std::max(worst_fill, directed_hausdorff(shape_boundary(s, 1000), cloud));
        }
        return Outcome{worst_inside <= 1e-9 && worst_fill <= 5e-2,
                       fmt("max ellipse_value=%.3e (tol 1e-9), boundary->cloud=%.3e (tol 5e-2)", worst_inside, worst_fill)};
    });

    criterion(6, "E2 = E3 agreement", 1.0, [] {
        const std::vector<CircleFamily> families{tprime_family(1.0), line_family(0.5), horocycle_family(0.5, 1.0)};
        double worst = 0.0;
        int mismatched = 0;
        for (const CircleFamily& f : families) {
            for (const double t : support_parameters(f, 1000)) {
                const EnvelopePair e2 = limiting_envelope(f, t);
                const DiscriminantSolution e3 = discriminant_envelope(f, t);
                if (e3.kind != EnvelopeKind::Pair) {
                    ++mismatched;
                    continue;
                }
                worst = std::max({worst, distance(e2.p1, e3.points[0]), distance(e2.p2, e3.points[1])});
            }
        }
        return Outcome{mismatched == 0 && worst <= 1e-9,
                       fmt("max |E2-E3|=%.3e tol=1e-9, non-pair solutions=%g", worst, mismatched)};
    });

    criterion(7, "line family boundary", 60.0, [] {
        return raster_check(line_family(0.5), {-1.3, 1.3, -1.3, 1.3}, line_boundary_samples(0.5, 4000));
    });

    criterion(8, "horocycle boundary", 60.0, [] {
        const HorocycleConstants h = horocycle_constants(0.5, 1.0);
        const double err = std::max({std::abs(h.c1 - 0.25), std::abs(h.R1 - 0.75), std::abs(h.c2 - 0.75),
                                     std::abs(h.R2 - 0.25)});
        const std::vector<Point2> truth = horocycle_boundary_samples(0.5, 1.0, 4000);
        std::vector<Point2> cells;
        Outcome out = raster_check(horocycle_family(0.5, 1.0), {-0.6, 1.1, -0.85, 0.85}, truth, &cells);
        out.pass = out.pass && err <= 1e-15;
        out.detail = fmt("constants err=%.1e; ", err) + out.detail;
        // Diagnostic only: near the tangency point (1, 0) the region between
        // the two circles is narrower than a cell.
        std::vector<Point2> away;
        for (const Point2& p : truth)
            if (distance(p, {1.0, 0.0}) > 0.05) away.push_back(p);
        out.detail += fmt("; info: truth->cells beyond 0.05 of (1,0)=%.3e", directed_hausdorff(away, cells));
        return out;
    });

    criterion(9, "derivative-gap identities", 0.1, [] {
        const double r = 0.5;
        const CircleFamily line = line_family(r);
        const CircleFamily horo = horocycle_family(0.5, 1.0);
        const HorocycleConstants h = horocycle_constants(0.5, 1.0);
        double line_err = 0.0, horo_err = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double t = -1.0 + 2.0 * (i + 0.5) / 1000;
            const double q = 1.0 - r * r * t * t;
            const double expected = (1.0 - r * r) * (1.0 - r * r) / (q * q);
            line_err = std::max(line_err, std::abs(line.state(t).derivative_gap() - expected));
            const double s = 2.0 * std::numbers::pi * (i + 0.5) / 1000;
            horo_err = std::max(horo_err, std::abs(horo.state(s).derivative_gap() - h.R1 * h.R2));
        }
        return Outcome{std::max(line_err, horo_err) <= 1e-10 && std::abs(h.R1 * h.R2 - 0.1875) <= 1e-15,
                       fmt("line err=%.2e horocycle err=%.2e tol=1e-10", line_err, horo_err)};
    });

    criterion(10, "tangency suite", 0.5, [] {
        const HorocycleCheck c = check_horocycle(0.5, 1.0, 1000);
        const double inner = c.max_internal_tangency, outer = c.max_external_tangency, focal = c.max_focal_residual;
        return Outcome{std::max({inner, outer, focal}) <= 1e-9 && c.samples == 1000,
                       fmt("internal=%.2e external=%.2e focal=%.2e tol=1e-9", inner, outer, focal)};
    });

    criterion(11, "limit-check convergence", 0.1, [] {
        const LimitCheckRecord rec = numeric_limit_check(line_family(0.5), 0.0, {1e-1, 1e-2, 1e-3, 1e-4});
        if (rec.samples.size() != 4) return Outcome{false, fmt("only %g of 4 steps retained", rec.samples.size())};
        bool monotone = true;
        for (std::size_t i = 1; i < rec.samples.size(); ++i)
            monotone = monotone && rec.samples[i].deviation < rec.samples[i - 1].deviation;
        const double last = rec.samples.back().deviation;
        return Outcome{monotone && last <= 1e-3,
                       fmt("deviations %.2e -> %.2e, monotone=%g tol=1e-3", rec.samples.front().deviation, last,
                           monotone ? 1.0 : 0.0)};
    });

    criterion(12, "parser/differentiation suite", 0.1, [] {
        const std::vector<CircleFamily> families{tprime_family(1.0), line_family(0.5), horocycle_family(0.5, 1.0)};
        std::mt19937_64 gen(12);
        double worst = 0.0;
        const double h = 1e-5;
        for (const CircleFamily& f : families) {
            std::uniform_real_distribution<double> pick(f.s1() + h, f.s2() - h);
            const std::pair<Expr, Expr> pairs[] = {{f.x_c(), f.dx_c()}, {f.y_c(), f.dy_c()}, {f.r(), f.dr()}};
            for (const auto& [e, de] : pairs) {
                const Expr reparsed = parse(to_string(e));
                const Expr derivative = differentiate(reparsed);
                for (int i = 0; i < 100; ++i) {
                    const double t = pick(gen);
                    const double sym = eval(derivative, t, f.constants());
                    const double fd =
                        (eval(reparsed, t + h, f.constants()) - eval(reparsed, t - h, f.constants())) / (2.0 * h);
                    const double scale = std::max(std::abs(sym), std::abs(fd));
                    const double rel = scale == 0.0 ? 0.0 : std::abs(sym - fd) / scale;
                    worst = std::max(worst, rel);
                    if (std::abs(eval(de, t, f.constants()) - sym) > 1e-12 * std::max(1.0, std::abs(sym)))
                        return Outcome{false, "family derivative differs from re-parsed derivative"};
                }
            }
        }
        return Outcome{worst <= 1e-6, fmt("max relative error=%.2e tol=1e-6 (900 checks)", worst)};
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
