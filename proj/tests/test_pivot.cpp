#include "doctest.h"

#include "sawlab/enumerate.hpp"
#include "sawlab/pivot.hpp"

#include <cmath>
#include <set>

using namespace sawlab;

TEST_CASE("lattice point group") {
    const Point e1{1, 0}, e2{0, 1};
    CHECK(apply_symmetry(1, e1) == Point{0, 1}); // quarter turn
    CHECK(apply_symmetry(2, e1) == Point{-1, 0});
    CHECK(apply_symmetry(4, e1) == Point{-1, 0}); // x-reflection
    CHECK(apply_symmetry(4, e2) == Point{0, 1});
    // Every element is a norm-preserving bijection on a small ball.
    for (int g = 0; g < 8; ++g) {
        std::set<Point> image;
        for (int x = -2; x <= 2; ++x)
            for (int y = -2; y <= 2; ++y) {
                const Point q = apply_symmetry(g, {x, y});
                CHECK(q.x * q.x + q.y * q.y == x * x + y * y);
                image.insert(q);
            }
        CHECK(image.size() == 25);
    }
}

TEST_CASE("deterministic pivot moves on a rod") {
    PivotChain chain(4, 1);
    const auto rod = chain.vertices();

    SUBCASE("identity is always accepted and changes nothing") {
        CHECK(chain.attempt(2, 0));
        CHECK(chain.vertices() == rod);
        CHECK(chain.accepted() == 1);
        CHECK(chain.attempted() == 1);
    }
    SUBCASE("quarter turn at the midpoint gives an L-shape") {
        CHECK(chain.attempt(2, 1));
        const std::vector<Point> expected{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}};
        CHECK(chain.vertices() == expected);
        CHECK(chain.self_avoiding());
    }
    SUBCASE("half turn folds the tail onto the head and is rejected") {
        CHECK_FALSE(chain.attempt(1, 2));
        CHECK(chain.vertices() == rod); // rejected move leaves the walk alone
        CHECK(chain.accepted() == 0);
        CHECK(chain.attempted() == 1);
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(chain.attempt(-1, 0), DomainError);
        CHECK_THROWS_AS(chain.attempt(4, 0), DomainError);
        CHECK_THROWS_AS(chain.attempt(0, 8), DomainError);
    }
    CHECK_THROWS_AS(PivotChain(1, 0), DomainError);
}

TEST_CASE("long random runs preserve the walk invariants") {
    PivotChain chain(20, 42);
    for (int i = 0; i < 10000; ++i) {
        chain.step();
        if (i % 500 == 0) {
            REQUIRE(chain.self_avoiding());
            const auto& v = chain.vertices();
            REQUIRE(v.size() == 21);
            CHECK(v.front() == Point{0, 0});
            for (std::size_t j = 1; j < v.size(); ++j) {
                const Point d = v[j] - v[j - 1];
                CHECK(std::abs(d.x) + std::abs(d.y) == 1);
            }
        }
    }
    CHECK(chain.self_avoiding());
    CHECK(chain.attempted() == 10000);
    // The pivot chain should mix; acceptance is far above the 1% floor.
    CHECK(double(chain.accepted()) / double(chain.attempted()) > 0.3);
}

TEST_CASE("monte carlo mean matches the exact n=12 value within 3 sigma") {
    const double exact = exact_mean_square_end_distance(12);
    const NuDatum d = sample_mean_square(12, 40000, 7, 1);
    REQUIRE(d.se > 0.0);
    CHECK(std::abs(d.mean_r2 - exact) < 3 * d.se);
    // The error bar itself should be sane: a few percent at this sample size.
    CHECK(d.se < 0.05 * exact);
}

TEST_CASE("runs are bit-reproducible under a fixed seed") {
    const NuDatum a = sample_mean_square(30, 5000, 123, 2);
    const NuDatum b = sample_mean_square(30, 5000, 123, 2);
    CHECK(a.mean_r2 == b.mean_r2);
    CHECK(a.se == b.se);
    const NuDatum c = sample_mean_square(30, 5000, 124, 2);
    CHECK(a.mean_r2 != c.mean_r2); // seed actually matters
}

TEST_CASE("fit recovers a planted power law exactly") {
    std::vector<NuDatum> data;
    for (int n : {10, 20, 40, 80, 160})
        data.push_back({n, 2.5 * std::pow(double(n), 1.5), 0.0});
    const NuEstimate est = fit_nu(data);
    CHECK(est.nu == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(est.intercept == doctest::Approx(std::log(2.5)).epsilon(1e-10));
    REQUIRE(est.data.size() == 5);
    for (std::size_t i = 0; i < est.data.size(); ++i) {
        CHECK(est.data[i].mean_r2 == data[i].mean_r2); // inputs pass through
        CHECK(std::abs(est.fit_residuals[i]) < 1e-10);
    }
    CHECK_THROWS_AS(fit_nu({{10, 100.0, 0.0}}), InsufficientDataError);
}

TEST_CASE("short pipeline gives a plausible exponent") {
    const NuEstimate est = estimate_nu({20, 40, 80}, 3000, 2024);
    CHECK(est.nu > 0.6);
    CHECK(est.nu < 0.9);
    CHECK(est.nu_se > 0.0);
    CHECK(est.data.size() == 3);
    CHECK_THROWS_AS(estimate_nu({20}, 100, 1), InsufficientDataError);
}

TEST_CASE("acceptance floor raises a convergence error") {
    PivotPlan plan;
    plan.min_acceptance = 2.0; // unattainable on purpose
    CHECK_THROWS_AS(sample_mean_square(16, 200, 5, 1, plan), ConvergenceError);
}
