#include "khoploc/geometry.hpp"

#include <cmath>

#include "khoploc/errors.hpp"

namespace khoploc {

Region Region::square(double side) {
    if (!(side > 0.0) || !std::isfinite(side))
        throw ParameterError("Region::square: side must be positive");
    return Region(Kind::Square, side, 0.0);
}

Region Region::cshape(double outer_side, double arm_width) {
    if (!(outer_side > 0.0) || !std::isfinite(outer_side))
        throw ParameterError("Region::cshape: outer side must be positive");
    if (!(arm_width > 0.0) || !(arm_width < outer_side / 2.0))
        throw ParameterError("Region::cshape: arm width must be in (0, side/2)");
    return Region(Kind::CShape, outer_side, arm_width);
}

double region_area(const Region& region) {
    const double s = region.side();
    switch (region.kind()) {
    case Region::Kind::Square:
        return s * s;
    case Region::Kind::CShape: {
        const double w = region.arm_width();
        return s * s - (s - w) * (s - 2.0 * w);
    }
    }
    throw ParameterError("region_area: unknown region kind");
}

bool region_contains(const Region& region, Point p) {
    const double s = region.side();
    const bool in_square = p.x >= 0.0 && p.x <= s && p.y >= 0.0 && p.y <= s;
    if (region.kind() == Region::Kind::Square) return in_square;
    if (!in_square) return false;
    const double w = region.arm_width();
    // The cut rectangle is open, so its boundary still belongs to the C.
    const bool in_cut = p.x > w && p.y > w && p.y < s - w;
    return !in_cut;
}

std::vector<Point> sample_points(const Region& region, int n, Rng& rng) {
    if (n < 0) throw ParameterError("sample_points: n must be nonnegative");
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    const double s = region.side();
    while (static_cast<int>(points.size()) < n) {
        Point p{rng.uniform(0.0, s), rng.uniform(0.0, s)};
        if (region_contains(region, p)) points.push_back(p);
    }
    return points;
}

std::vector<Point> fixed_anchor_layout(const Region& region) {
    const double s = region.side();
    if (region.kind() == Region::Kind::Square) {
        if (s != 10.0)
            throw ParameterError("fixed_anchor_layout: only Square(10) has a fixed layout");
        // 4 corners inset by 1, 4 edge midpoints inset by 1, 4 points offset
        // (+-2.5, +-2.5) from the center, and the center itself: 13 anchors.
        return {
            {1.0, 1.0}, {9.0, 1.0}, {1.0, 9.0}, {9.0, 9.0},
            {5.0, 1.0}, {5.0, 9.0}, {1.0, 5.0}, {9.0, 5.0},
            {2.5, 2.5}, {7.5, 2.5}, {2.5, 7.5}, {7.5, 7.5},
            {5.0, 5.0},
        };
    }
    if (s != 10.0 || region.arm_width() != 2.0)
        throw ParameterError("fixed_anchor_layout: only CShape(10,2) has a fixed layout");
    // 14 anchors evenly spaced along the C arm centerline polyline
    // (9,1) -> (1,1) -> (1,9) -> (9,9), total length 24.
    std::vector<Point> anchors;
    anchors.reserve(14);
    const double total = 24.0;
    for (int i = 0; i < 14; ++i) {
        const double t = total * static_cast<double>(i) / 13.0;
        Point p;
        if (t <= 8.0) {
            p = {9.0 - t, 1.0};
        } else if (t <= 16.0) {
            p = {1.0, 1.0 + (t - 8.0)};
        } else {
            p = {1.0 + (t - 16.0), 9.0};
        }
        anchors.push_back(p);
    }
    return anchors;
}

} // namespace khoploc
