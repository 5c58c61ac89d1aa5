#include "envelopes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "envelopes/error.hpp"
#include "numeric.hpp"

namespace envelopes {

std::size_t OracleGrid::occupied_count() const {
    return static_cast<std::size_t>(std::count(occupancy.begin(), occupancy.end(), std::uint8_t{1}));
}

namespace {

// Circle centers and radii tabulated at the sample parameters, plus for each
// sample how far the clearance can drift inside its bracket [t_{i-1}, t_{i+1}].
struct SampleTable {
    std::vector<double> t, cx, cy, r, slack;
    double max_slack = 0.0;
};

SampleTable tabulate(const CircleFamily& f, int count) {
    SampleTable tab;
    tab.t.resize(count);
    tab.cx.resize(count);
    tab.cy.resize(count);
    tab.r.resize(count);
    tab.slack.assign(count, 0.0);
    const double len = f.s2() - f.s1();
    for (int i = 0; i < count; ++i) {
        const double t = i + 1 == count ? f.s2() : f.s1() + len * i / (count - 1);
        const Circle c = f.circle(t);
        tab.t[i] = t;
        tab.cx[i] = c.center.x;
        tab.cy[i] = c.center.y;
        tab.r[i] = c.radius;
    }
    for (int i = 0; i + 1 < count; ++i) {
        const double step = std::hypot(tab.cx[i + 1] - tab.cx[i], tab.cy[i + 1] - tab.cy[i]) +
                            std::abs(tab.r[i + 1] - tab.r[i]);
        tab.slack[i] += step;
        tab.slack[i + 1] += step;
    }
    tab.max_slack = *std::max_element(tab.slack.begin(), tab.slack.end());
    return tab;
}

void rasterize_rows(const CircleFamily& f, const SampleTable& tab, OracleGrid& g, int row_begin, int row_end) {
    const int count = static_cast<int>(tab.t.size());
    std::vector<int> candidates;
    candidates.reserve(count);
    for (int j = row_begin; j < row_end; ++j) {
        const double y = g.bbox.y_min + (j + 0.5) * g.cell_height;
        // Samples whose disk stays farther than max_slack from this row can
        // never make a cell occupied, even after refinement.
        candidates.clear();
        for (int k = 0; k < count; ++k)
            if (std::abs(y - tab.cy[k]) - tab.r[k] < tab.max_slack) candidates.push_back(k);
        if (candidates.empty()) continue;

        for (int i = 0; i < g.n; ++i) {
            const double x = g.bbox.x_min + (i + 0.5) * g.cell_size;
            double best = std::numeric_limits<double>::infinity();
            int arg = -1;
            for (const int k : candidates) {
                const double dx = x - tab.cx[k];
                const double dy = y - tab.cy[k];
                const double v = std::sqrt(dx * dx + dy * dy) - tab.r[k];
                if (v < best) {
                    best = v;
                    arg = k;
                }
            }
            bool inside = best < kOccupancyThreshold;
            if (!inside && best - tab.slack[arg] < kOccupancyThreshold) {
                const Point2 p{x, y};
                auto clearance = [&](double t) { return distance(p, f.center(t)) - f.radius(t); };
                const double lo = tab.t[std::max(0, arg - 1)];
                const double hi = tab.t[std::min(count - 1, arg + 1)];
                inside = detail::golden_section(clearance, lo, hi).value < kOccupancyThreshold;
            }
            if (inside) g.occupancy[static_cast<std::size_t>(j) * g.n + i] = 1;
        }
    }
}

}  // namespace

OracleGrid rasterize_union(const CircleFamily& f, const BBox& bbox, int n, int t_samples, unsigned threads) {
    if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0)) throw InvalidArgument("degenerate bounding box");
    if (n < 16) throw InvalidArgument("oracle grid needs n >= 16");
    if (t_samples < 500) throw InvalidArgument("oracle needs at least 500 parameter samples");

    OracleGrid g;
    g.bbox = bbox;
    g.n = n;
    g.cell_size = bbox.width() / n;
    g.cell_height = bbox.height() / n;
    g.occupancy.assign(static_cast<std::size_t>(n) * n, 0);

    const SampleTable tab = tabulate(f, t_samples);

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    if (workers == 1) {
        rasterize_rows(f, tab, g, 0, n);
        return g;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long>(n) * w / workers);
        const int end = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
        pool.emplace_back([&, begin, end] { rasterize_rows(f, tab, g, begin, end); });
    }
    for (auto& th : pool) th.join();
    return g;
}

std::vector<Point2> extract_boundary(const OracleGrid& g) {
    const std::size_t occupied = g.occupied_count();
    if (occupied == 0) throw InvalidArgument("grid has no occupied cells");
    if (occupied == g.occupancy.size()) throw InvalidArgument("grid has no empty cells");

    auto filled = [&](int i, int j) { return i >= 0 && j >= 0 && i < g.n && j < g.n && g.occupied(i, j); };
    std::vector<Point2> out;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (filled(i, j) && !(filled(i - 1, j) && filled(i + 1, j) && filled(i, j - 1) && filled(i, j + 1)))
                out.push_back(g.cell_center(i, j));
    return out;
}

namespace {

// Uniform bucket grid over a point set for exact nearest-neighbour queries.
class BucketIndex {
public:
    explicit BucketIndex(const std::vector<Point2>& pts) : pts_(pts) {
        x0_ = y0_ = std::numeric_limits<double>::infinity();
        double x1 = -x0_, y1 = -y0_;
        for (const Point2& p : pts) {
            x0_ = std::min(x0_, p.x);
            y0_ = std::min(y0_, p.y);
            x1 = std::max(x1, p.x);
            y1 = std::max(y1, p.y);
        }
        const double w = x1 - x0_, h = y1 - y0_;
        const double extent = std::max({w, h, 1e-9});
        // Roughly one point per bucket, never more than 2048 buckets per side.
        side_ = std::max(extent / 2048.0, std::sqrt(std::max(w * h, extent * extent * 1e-6) / pts.size()));
        nx_ = static_cast<int>(w / side_) + 1;
        ny_ = static_cast<int>(h / side_) + 1;
        start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
        for (const Point2& p : pts) ++start_[bucket(p) + 1];
        for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
        order_.resize(pts.size());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < pts.size(); ++i) order_[fill[bucket(pts[i])]++] = i;
    }

    double nearest2(Point2 q) const {
        const double fx = std::floor((q.x - x0_) / side_), fy = std::floor((q.y - y0_) / side_);
        if (!(std::abs(fx) < 1e15 && std::abs(fy) < 1e15)) return brute_nearest2(q);
        const long qx = static_cast<long>(fx), qy = static_cast<long>(fy);
        const long gap_x = qx < 0 ? -qx : (qx >= nx_ ? qx - nx_ + 1 : 0);
        const long gap_y = qy < 0 ? -qy : (qy >= ny_ ? qy - ny_ + 1 : 0);
        const long max_ring = std::max({qx, static_cast<long>(nx_) - 1 - qx, qy, static_cast<long>(ny_) - 1 - qy,
                                        gap_x, gap_y});
        double best = std::numeric_limits<double>::infinity();
        auto scan = [&](long bx, long by) {
            if (bx < 0 || bx >= nx_ || by < 0 || by >= ny_) return;
            const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
            for (std::size_t s = start_[b]; s < start_[b + 1]; ++s) {
                const Point2& p = pts_[order_[s]];
                const double dx = p.x - q.x, dy = p.y - q.y;
                best = std::min(best, dx * dx + dy * dy);
            }
        };
        for (long k = std::max(gap_x, gap_y); k <= max_ring; ++k) {
            const long x_lo = std::max(0L, qx - k), x_hi = std::min(static_cast<long>(nx_) - 1, qx + k);
            const long y_lo = std::max(0L, qy - k + 1), y_hi = std::min(static_cast<long>(ny_) - 1, qy + k - 1);
            for (long bx = x_lo; bx <= x_hi; ++bx) {
                scan(bx, qy - k);
                if (k > 0) scan(bx, qy + k);
            }
            for (long by = y_lo; by <= y_hi; ++by) {
                scan(qx - k, by);
                if (k > 0) scan(qx + k, by);
            }
            const double reach = k * side_;
            if (best <= reach * reach) break;
        }
        return best;
    }

private:
    double brute_nearest2(Point2 q) const {
        double best = std::numeric_limits<double>::infinity();
        for (const Point2& p : pts_) {
            const double dx = p.x - q.x, dy = p.y - q.y;
            best = std::min(best, dx * dx + dy * dy);
        }
        return best;
    }

    std::size_t bucket(Point2 p) const {
        const int bx = std::min(nx_ - 1, static_cast<int>((p.x - x0_) / side_));
        const int by = std::min(ny_ - 1, static_cast<int>((p.y - y0_) / side_));
        return static_cast<std::size_t>(by) * nx_ + bx;
    }

    const std::vector<Point2>& pts_;
    double x0_, y0_, side_;
    int nx_, ny_;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> order_;
};

}  // namespace

double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("Hausdorff distance of an empty set");
    const BucketIndex index(b);
    double worst = 0.0;
    for (const Point2& p : a) worst = std::max(worst, index.nearest2(p));
    return std::sqrt(worst);
}

double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace envelopes
