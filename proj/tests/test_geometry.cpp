#include <doctest.h>

#include <cmath>
#include <set>

#include "khoploc/errors.hpp"
#include "khoploc/geometry.hpp"

using namespace khoploc;

TEST_CASE("geometry: region area is analytic") {
    CHECK(region_area(Region::square(10.0)) == doctest::Approx(100.0));
    CHECK(region_area(Region::cshape(10.0, 2.0)) == doctest::Approx(52.0));
    CHECK(region_area(Region::square(1.0)) == doctest::Approx(1.0));
}

TEST_CASE("geometry: invalid dimensions are rejected") {
    CHECK_THROWS_AS(Region::square(0.0), ParameterError);
    CHECK_THROWS_AS(Region::square(-3.0), ParameterError);
    CHECK_THROWS_AS(Region::cshape(10.0, 0.0), ParameterError);
    CHECK_THROWS_AS(Region::cshape(10.0, 5.0), ParameterError);
    CHECK_THROWS_AS(Region::cshape(10.0, 7.0), ParameterError);
}

TEST_CASE("geometry: containment") {
    const Region square = Region::square(10.0);
    const Region cshape = Region::cshape(10.0, 2.0);
    CHECK(region_contains(square, {5.0, 5.0}));
    CHECK_FALSE(region_contains(square, {10.5, 5.0}));
    // inside the cut rectangle [2,10] x [2,8]
    CHECK_FALSE(region_contains(cshape, {5.0, 5.0}));
    // left arm
    CHECK(region_contains(cshape, {1.0, 5.0}));
    // bottom and top arms
    CHECK(region_contains(cshape, {5.0, 1.0}));
    CHECK(region_contains(cshape, {5.0, 9.0}));
    // cut boundary belongs to the C
    CHECK(region_contains(cshape, {5.0, 2.0}));
    CHECK(region_contains(cshape, {2.0, 5.0}));
}

TEST_CASE("geometry: rejection-sampled area matches analytic area within 1%") {
    for (const Region& region : {Region::square(10.0), Region::cshape(10.0, 2.0)}) {
        Rng rng(12345);
        const int samples = 1'000'000;
        const double s = region.side();
        int inside = 0;
        for (int i = 0; i < samples; ++i) {
            Point p{rng.uniform(0.0, s), rng.uniform(0.0, s)};
            if (region_contains(region, p)) ++inside;
        }
        const double estimate = s * s * static_cast<double>(inside) / samples;
        CHECK(estimate == doctest::Approx(region_area(region)).epsilon(0.01));
    }
}

TEST_CASE("geometry: sampled points lie in the region") {
    Rng rng(7);
    CHECK(sample_points(Region::square(10.0), 0, rng).empty());
    const Region cshape = Region::cshape(10.0, 2.0);
    for (const Region& region : {Region::square(10.0), cshape}) {
        Rng r(11);
        for (const Point& p : sample_points(region, 1000, r)) CHECK(region_contains(region, p));
    }
}

TEST_CASE("geometry: C-shape sampling puts the right mass in the left arm") {
    const Region cshape = Region::cshape(10.0, 2.0);
    Rng rng(99);
    const int n = 100'000;
    int left_arm = 0;
    for (const Point& p : sample_points(cshape, n, rng))
        if (p.x <= 2.0) ++left_arm;
    const double expected = 20.0 / 52.0;
    // +-0.01 absolute
    CHECK(std::abs(static_cast<double>(left_arm) / n - expected) < 0.01);
}

TEST_CASE("geometry: sampling is seed-deterministic") {
    const Region region = Region::cshape(10.0, 2.0);
    Rng a(42), b(42), c(43);
    const auto pa = sample_points(region, 200, a);
    const auto pb = sample_points(region, 200, b);
    const auto pc = sample_points(region, 200, c);
    REQUIRE(pa.size() == pb.size());
    bool identical = true;
    for (std::size_t i = 0; i < pa.size(); ++i)
        identical = identical && pa[i].x == pb[i].x && pa[i].y == pb[i].y;
    CHECK(identical);
    bool differs = false;
    for (std::size_t i = 0; i < pa.size(); ++i)
        differs = differs || pa[i].x != pc[i].x || pa[i].y != pc[i].y;
    CHECK(differs);
}

TEST_CASE("geometry: fixed anchor layouts") {
    const auto square_anchors = fixed_anchor_layout(Region::square(10.0));
    CHECK(square_anchors.size() == 13);
    const auto cshape_anchors = fixed_anchor_layout(Region::cshape(10.0, 2.0));
    CHECK(cshape_anchors.size() == 14);

    for (const auto& [region, anchors] :
         {std::pair{Region::square(10.0), square_anchors},
          std::pair{Region::cshape(10.0, 2.0), cshape_anchors}}) {
        std::set<std::pair<double, double>> seen;
        for (const Point& p : anchors) {
            CHECK(region_contains(region, p));
            seen.insert({p.x, p.y});
        }
        CHECK(seen.size() == anchors.size()); // no two anchors coincide
    }

    CHECK_THROWS_AS(fixed_anchor_layout(Region::square(5.0)), ParameterError);
    CHECK_THROWS_AS(fixed_anchor_layout(Region::cshape(10.0, 3.0)), ParameterError);
}
