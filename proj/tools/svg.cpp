#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "envelopes/error.hpp"

namespace envelopes::cli {

namespace {

constexpr double kSize = 1000.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(const BBox& world) : world_(world) {
    if (!(world.width() > 0.0) || !(world.height() > 0.0)) throw InvalidArgument("degenerate SVG frame");
    scale_ = kSize / std::max(world.width(), world.height());
}

Point2 SvgCanvas::map(Point2 p) const {
    return {(p.x - world_.x_min) * scale_, kSize - (p.y - world_.y_min) * scale_};
}

void SvgCanvas::circle(const Circle& c, const std::string& stroke, double width) {
    const Point2 q = map(c.center);
    body_ += "<circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"" + num(c.radius * scale_) +
             "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgCanvas::polyline(const std::vector<Point2>& pts, const std::string& stroke, double width) {
    if (pts.empty()) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2 q = map(pts[i]);
        if (i) body_ += ' ';
        body_ += num(q.x) + "," + num(q.y);
    }
    body_ += "\"/>\n";
}

void SvgCanvas::dots(const std::vector<Point2>& pts, const std::string& fill, double radius) {
    for (const Point2& p : pts) {
        const Point2 q = map(p);
        body_ += "<circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"" + num(radius) + "\" fill=\"" +
                 fill + "\"/>\n";
    }
}

std::string SvgCanvas::str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
           "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n" +
           body_ + "</svg>\n";
}

void SvgCanvas::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open " + path + " for writing");
    out << str();
}

}  // namespace envelopes::cli
