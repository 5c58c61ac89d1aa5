#pragma once

// Brute-force stand-in for Ω = ∪ D_t: rasterize the union on a cell grid,
// pull out the occupied cells that touch empty ones, and compare point sets
// by Hausdorff distance.

#include <cstdint>
#include <vector>

#include "envelopes/family.hpp"
#include "envelopes/geom.hpp"

namespace envelopes {

struct BBox {
    double x_min, x_max, y_min, y_max;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
};

struct OracleGrid {
    BBox bbox{};
    int n = 0;                           // cells per side
    double cell_size = 0.0;              // (x_max - x_min) / n
    double cell_height = 0.0;            // (y_max - y_min) / n
    std::vector<std::uint8_t> occupancy; // row-major, row j covers y_min + (j, j+1) * cell_height

    bool occupied(int i, int j) const { return occupancy[static_cast<std::size_t>(j) * n + i] != 0; }
    Point2 cell_center(int i, int j) const {
        return {bbox.x_min + (i + 0.5) * cell_size, bbox.y_min + (j + 0.5) * cell_height};
    }
    std::size_t occupied_count() const;
};

inline constexpr double kOccupancyThreshold = -1e-12;

/// Marks cell (i, j) when min_t |center - c(t)| - r(t) < -1e-12, the minimum
/// taken over t_samples equispaced parameters (endpoints included) and refined
/// by golden section on the bracket around the best sample. Rows are split
/// across `threads` workers (0 = hardware concurrency); output does not depend
/// on the thread count.
OracleGrid rasterize_union(const CircleFamily& f, const BBox& bbox, int n, int t_samples, unsigned threads = 0);

/// Centers of occupied cells with at least one empty 4-neighbour; cells
/// beyond the frame count as empty. Throws if the grid is all-occupied or all-empty.
std::vector<Point2> extract_boundary(const OracleGrid& g);

/// sup_{a in A} inf_{b in B} |a - b|, exact, bucket-accelerated.
double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b);

/// max of the two directed distances. Throws InvalidArgument on empty input.
double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b);

}  // namespace envelopes
