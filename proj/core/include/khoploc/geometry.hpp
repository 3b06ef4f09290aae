#pragma once

#include <cmath>
#include <vector>

#include "khoploc/rng.hpp"

namespace khoploc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Deployment region: an axis-aligned square [0,s]^2, or a C shape obtained by
/// removing the open rectangle [w,s] x [w,s-w] from the square (left arm plus
/// top and bottom arms of width w).
class Region {
public:
    enum class Kind { Square, CShape };

    static Region square(double side);
    static Region cshape(double outer_side, double arm_width);

    Kind kind() const { return kind_; }
    double side() const { return side_; }
    double arm_width() const { return arm_width_; }

private:
    Region(Kind kind, double side, double arm_width)
        : kind_(kind), side_(side), arm_width_(arm_width) {}
    Kind kind_;
    double side_;
    double arm_width_;
};

enum class AnchorMode { FixedLayout, Random };

struct DeploymentConfig {
    Region region;
    int n_total = 0;
    int n_anchors = 0;
    AnchorMode anchor_mode = AnchorMode::FixedLayout;
    std::uint64_t seed = 0;
};

/// Exact analytic area of the region.
double region_area(const Region& region);

bool region_contains(const Region& region, Point p);

/// n points i.i.d. uniform on the region, by rejection from the bounding box.
std::vector<Point> sample_points(const Region& region, int n, Rng& rng);

/// Deterministic anchor layout: 13 anchors for Square(10), 14 anchors evenly
/// spaced along the arm centerlines for CShape(10,2). Other regions are not
/// supported.
std::vector<Point> fixed_anchor_layout(const Region& region);

} // namespace khoploc
