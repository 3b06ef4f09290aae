#include <doctest.h>

#include <cmath>
#include <vector>

#include "khoploc/connectivity.hpp"
#include "khoploc/errors.hpp"

using namespace khoploc;

TEST_CASE("connectivity: rayleigh connection probability") {
    const auto model = ConnectionModel::rayleigh(1.0, 2.0);
    CHECK(connect_prob(model, 0.0) == doctest::Approx(1.0));
    CHECK(connect_prob(model, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK_THROWS_AS(connect_prob(model, -0.1), ParameterError);
}

TEST_CASE("connectivity: qudg connection probability") {
    const auto model = ConnectionModel::qudg(1.0, 1.5);
    CHECK(connect_prob(model, 0.5) == doctest::Approx(1.0));  // below d_max/DOI = 2/3
    CHECK(connect_prob(model, 0.8) == doctest::Approx(0.6));  // 1.5*(1-0.8)/0.5
    CHECK(connect_prob(model, 1.2) == doctest::Approx(0.0));
    // continuity at both branch points
    CHECK(connect_prob(model, 2.0 / 3.0) == doctest::Approx(1.0));
    CHECK(connect_prob(model, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("connectivity: connection probability is nonincreasing") {
    for (const auto& model :
         {ConnectionModel::rayleigh(1.0, 2.0), ConnectionModel::rayleigh(2.0, 3.0),
          ConnectionModel::qudg(1.0, 1.5), ConnectionModel::qudg(2.0, 4.0)}) {
        double prev = connect_prob(model, 0.0);
        CHECK(prev == doctest::Approx(1.0));
        for (int i = 1; i <= 2000; ++i) {
            const double d = 0.002 * i * model.effective_range() * 2.0;
            const double h = connect_prob(model, d);
            CHECK(h <= prev + 1e-15);
            CHECK(h >= 0.0);
            CHECK(h <= 1.0);
            prev = h;
        }
    }
}

TEST_CASE("connectivity: invalid model parameters") {
    CHECK_THROWS_AS(ConnectionModel::rayleigh(0.0, 2.0), ParameterError);
    CHECK_THROWS_AS(ConnectionModel::rayleigh(1.0, 0.5), ParameterError);
    CHECK_THROWS_AS(ConnectionModel::qudg(0.0, 1.5), ParameterError);
    CHECK_THROWS_AS(ConnectionModel::qudg(1.0, 1.0), ParameterError);
}

TEST_CASE("connectivity: effective area matches analytic oracles") {
    // Rayleigh: 2*pi*Gamma(2/eta) / (eta * beta^(2/eta))
    const auto rayleigh_area = [](double beta, double eta) {
        return 2.0 * M_PI * std::tgamma(2.0 / eta) / (eta * std::pow(beta, 2.0 / eta));
    };
    CHECK(effective_area(ConnectionModel::rayleigh(1.0, 2.0)) == doctest::Approx(M_PI).epsilon(1e-9));
    CHECK(effective_area(ConnectionModel::rayleigh(2.0, 3.0)) ==
          doctest::Approx(rayleigh_area(2.0, 3.0)).epsilon(1e-9));
    CHECK(effective_area(ConnectionModel::rayleigh(0.5, 4.0)) ==
          doctest::Approx(rayleigh_area(0.5, 4.0)).epsilon(1e-9));

    // QUDG(1, 1.5): piecewise integration gives 2*pi*(2/9 + 7/54) = 19*pi/27.
    CHECK(effective_area(ConnectionModel::qudg(1.0, 1.5)) ==
          doctest::Approx(19.0 * M_PI / 27.0).epsilon(1e-9));

    // DOI -> 1 degenerates to the unit disk.
    CHECK(std::abs(effective_area(ConnectionModel::qudg(1.0, 1.000001)) - M_PI) < 1e-4);
}

TEST_CASE("connectivity: region effective area accounts for borders") {
    // Square side l, Rayleigh(1,2): closed form from the separable integral,
    //   A_region = I(l)^2 / l^2 with I(l) = l*sqrt(pi)*erf(l) - 1 + exp(-l^2).
    const double l = 10.0;
    const double integral = l * std::sqrt(M_PI) * std::erf(l) - 1.0 + std::exp(-l * l);
    const double expected = integral * integral / (l * l);
    const double estimate =
        region_effective_area(ConnectionModel::rayleigh(1.0, 2.0), Region::square(l));
    CHECK(estimate == doctest::Approx(expected).epsilon(0.01));
    CHECK(estimate < effective_area(ConnectionModel::rayleigh(1.0, 2.0)));
}

TEST_CASE("connectivity: realized links respect degenerate distances") {
    const std::vector<Point> coincident{{3.0, 3.0}, {3.0, 3.0}};
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed));
        const auto adj = realize_links(coincident, ConnectionModel::rayleigh(1.0, 2.0), rng);
        CHECK(adj.edge_count == 1); // H(0) = 1 and zeta < 1 always
    }
    const std::vector<Point> far{{0.0, 0.0}, {2.0, 0.0}};
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed));
        const auto adj = realize_links(far, ConnectionModel::qudg(1.0, 1.5), rng);
        CHECK(adj.edge_count == 0); // H = 0 beyond d_max
    }
}

TEST_CASE("connectivity: link frequency concentrates on H(d)") {
    Rng rng(2024);
    const auto model = ConnectionModel::rayleigh(1.0, 2.0);
    int linked = 0;
    const int pairs = 10'000;
    for (int i = 0; i < pairs; ++i) {
        const std::vector<Point> pts{{0.0, 0.0}, {1.0, 0.0}};
        Rng pair_rng(rng.next_u64());
        linked += static_cast<int>(realize_links(pts, model, pair_rng).edge_count);
    }
    CHECK(std::abs(static_cast<double>(linked) / pairs - std::exp(-1.0)) < 0.015);
}

TEST_CASE("connectivity: empirical frequency tracks H at several distances") {
    const auto model = ConnectionModel::qudg(1.0, 1.5);
    Rng rng(555);
    for (const double d : {0.3, 0.75, 0.9}) {
        const double h = connect_prob(model, d);
        int linked = 0;
        const int pairs = 20'000;
        for (int i = 0; i < pairs; ++i)
            if (rng.uniform01() < h) ++linked;
        const double freq = static_cast<double>(linked) / pairs;
        const double sigma = std::sqrt(h * (1.0 - h) / pairs);
        CHECK(std::abs(freq - h) < 5.0 * sigma + 1e-9);
    }
}

TEST_CASE("connectivity: adjacency is symmetric and irreflexive") {
    Rng rng(31);
    const auto points = sample_points(Region::square(10.0), 120, rng);
    const auto adj = realize_links(points, ConnectionModel::rayleigh(1.0, 2.0), rng);
    std::size_t directed = 0;
    for (int u = 0; u < adj.n; ++u) {
        for (int v : adj.neighbors[static_cast<std::size_t>(u)]) {
            CHECK(v != u);
            CHECK(adj.has_edge(v, u));
            ++directed;
        }
    }
    CHECK(directed == 2 * adj.edge_count);
}
