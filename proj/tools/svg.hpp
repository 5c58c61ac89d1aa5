#pragma once

#include <string>
#include <vector>

#include "envelopes/geom.hpp"
#include "envelopes/oracle.hpp"

namespace envelopes::cli {

/// 1000x1000 drawing with y pointing up in world coordinates.
class SvgCanvas {
public:
    explicit SvgCanvas(const BBox& world);

    void circle(const Circle& c, const std::string& stroke, double width = 1.0);
    void polyline(const std::vector<Point2>& pts, const std::string& stroke, double width = 1.5);
    void dots(const std::vector<Point2>& pts, const std::string& fill, double radius = 1.0);

    std::string str() const;
    void save(const std::string& path) const;

private:
    Point2 map(Point2 p) const;

    BBox world_;
    double scale_;
    std::string body_;
};

}  // namespace envelopes::cli
