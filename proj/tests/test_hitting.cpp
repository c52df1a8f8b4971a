#include "doctest.h"

#include "sawlab/hitting.hpp"
#include "sawlab/quadrature.hpp"

#include <cmath>

using namespace sawlab;
using namespace sawlab::hitting;

TEST_CASE("tanh-sinh quadrature on smooth and singular integrands") {
    // smooth: int_0^1 x^2 = 1/3
    auto r1 = tanh_sinh<double>([](double x, double, double) { return x * x; },
                                0.0, 1.0, 1e-13);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // endpoint singularity: int_0^1 1/sqrt(x) = 2, using the distance argument
    auto r2 = tanh_sinh<double>(
        [](double, double lo, double) { return 1.0 / std::sqrt(lo); }, 0.0, 1.0,
        1e-13);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));

    // both endpoints: int_-1^1 1/sqrt(1-x^2) = pi
    auto r3 = tanh_sinh<double>(
        [](double, double lo, double hi) { return 1.0 / std::sqrt(lo * hi); }, -1.0,
        1.0, 1e-13);
    CHECK(r3.value == doctest::Approx(std::acos(-1.0)).epsilon(1e-12));

    CHECK(r1.error_estimate >= 0.0);
    CHECK_THROWS_AS(tanh_sinh<double>([](double, double, double) { return 1.0; },
                                      1.0, 0.0, 1e-13),
                    DomainError);
}

TEST_CASE("quadrature converges geometrically and reports failure honestly") {
    // A hard singularity that tanh-sinh cannot fix within 3 levels at 1e-15.
    CHECK_THROWS_AS(tanh_sinh<double>(
                        [](double, double lo, double) { return 1.0 / std::pow(lo, 0.99); },
                        0.0, 1.0, 1e-15, 3),
                    ToleranceError);
}

TEST_CASE("elliptic K basics") {
    const double pi = std::acos(-1.0);
    CHECK(elliptic_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(elliptic_K(1.0), DomainError);

    // Self-dual point: K'(1/sqrt2) = K(1/sqrt2).
    const double k = 1.0 / std::sqrt(2.0);
    const double kp = std::sqrt(1.0 - k * k);
    CHECK(elliptic_K(k) == doctest::Approx(elliptic_K(kp)).epsilon(1e-15));

    // Direct quadrature of the defining integral at k = 0.5.
    const double k2 = 0.25;
    auto direct = tanh_sinh<double>(
        [&](double th, double, double) {
            const double s = std::sin(th);
            return 1.0 / std::sqrt(1.0 - k2 * s * s);
        },
        0.0, pi / 2, 1e-13);
    CHECK(elliptic_K(0.5) == doctest::Approx(direct.value).epsilon(1e-12));
}

TEST_CASE("jacobi theta functions") {
    CHECK(jacobi_theta(3, 1e-12) == doctest::Approx(1.0 + 2e-12).epsilon(1e-15));
    const double q = 1e-8;
    CHECK(jacobi_theta(2, q) / (2 * std::pow(q, 0.25)) ==
          doctest::Approx(1.0).epsilon(1e-7));
    // Jacobi identity theta3^4 = theta2^4 + theta4^4 at q = 0.3.
    const double t2 = jacobi_theta(2, 0.3);
    const double t3 = jacobi_theta(3, 0.3);
    const double t4 = jacobi_theta(4, 0.3);
    CHECK(std::pow(t3, 4) ==
          doctest::Approx(std::pow(t2, 4) + std::pow(t4, 4)).epsilon(1e-12));
    CHECK_THROWS_AS(jacobi_theta(3, 0.0), DomainError);
    CHECK_THROWS_AS(jacobi_theta(5, 0.5), DomainError);
}

TEST_CASE("alpha from aspect ratio") {
    const auto p = alpha_from_r(10.0);
    // Reference value, 23 digits; double precision must nail alpha-1.
    CHECK(p.alpha_m1 ==
          doctest::Approx(1.20561454706472212e-6).epsilon(1e-13));
    CHECK(p.d == doctest::Approx(std::sqrt(p.alpha)).epsilon(1e-15));
    CHECK_THROWS_AS(alpha_from_r(1.0), DomainError);

    // Inversion series agreement to its stated error order O(e^{-3 pi r/2}).
    for (double r : {6.0, 8.0, 10.0, 12.0}) {
        const auto pr = alpha_from_r(r);
        const double series = alpha_series_m1(r);
        // The true next term is 96 e^{-3 pi r/2}.
        CHECK(std::abs(pr.alpha_m1 - series) < 150.0 * std::exp(-3 * std::acos(-1.0) * r / 2));
    }

    // Round trip through r = 2K(1/alpha)/K(sqrt(alpha^2-1)/alpha).
    for (double r : {2.0, 5.0, 10.0}) {
        const auto pr = alpha_from_r(r);
        CHECK(aspect_from_params(pr) == doctest::Approx(r).epsilon(1e-10));
    }
    // Plain-alpha entry point for moderate aspect ratios.
    const auto p2 = alpha_from_r(2.0);
    CHECK(aspect_from_alpha(p2.alpha) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("extended-precision alpha matches the 23-digit reference") {
    const auto p = alpha_from_r(Real50(10));
    const Real50 ref("1.00000120561454706472212");
    CHECK(static_cast<double>(abs(p.alpha - ref) / (ref - 1)) < 1e-18);
}

TEST_CASE("brownian ratio") {
    CHECK(std::abs(brownian_ratio(1.0 + 1e-15)) < 1e-14);
    CHECK_THROWS_AS(brownian_ratio(1.0), DomainError);

    const auto p = alpha_from_r(10.0);
    // 13 printed digits; our value matches the 50-digit reference ...519599.
    CHECK(brownian_ratio(p) ==
          doctest::Approx(3.8375894519594e-7).epsilon(2e-13));

    // Asymptotic cross-check (8/pi) e^{-pi r/2} + (64/pi^2) e^{-pi r}.
    const double pi = std::acos(-1.0);
    const double asym = (8 / pi) * std::exp(-pi * 5.0) +
                        (64 / (pi * pi)) * std::exp(-pi * 10.0);
    CHECK(brownian_ratio(p) == doctest::Approx(asym).epsilon(1e-12));
}

TEST_CASE("hitting ratio by quadrature") {
    auto p = alpha_from_r(10.0, 1.0);
    CHECK(hitting_ratio(p) ==
          doctest::Approx(brownian_ratio(p)).epsilon(1e-10));

    p.b = 5.0 / 8.0;
    CHECK(hitting_ratio(p) == doctest::Approx(6.682989935e-5).epsilon(5e-9));

    // Denominator closed form in the alpha -> 1 limit.
    HittingParams<double> near1;
    near1.alpha = 1.0 + 1e-9;
    near1.alpha_m1 = 1e-9;
    near1.d = std::sqrt(near1.alpha);
    near1.b = 5.0 / 8.0;
    CHECK(side_integral(near1, 1e-12) ==
          doctest::Approx(side_integral_limit(5.0 / 8.0)).epsilon(1e-6));

    HittingParams<double> bad = p;
    bad.b = 0.2;
    CHECK_THROWS_AS(hitting_ratio(bad), DomainError);
}

TEST_CASE("hitting ratio monotonicity") {
    // Decreasing in r at fixed b; SAW exponent gives a larger ratio than
    // Brownian at every aspect ratio.
    double prev_b58 = 1e9, prev_b1 = 1e9;
    for (double r : {2.0, 5.0, 10.0}) {
        auto p = alpha_from_r(r, 5.0 / 8.0);
        const double r58 = hitting_ratio(p);
        p.b = 1.0;
        const double r1 = hitting_ratio(p);
        CHECK(r58 < prev_b58);
        CHECK(r1 < prev_b1);
        CHECK(r58 > r1);
        prev_b58 = r58;
        prev_b1 = r1;
    }
    // Decreasing in b at fixed r (consistent with ~ e^{-pi b r/2}).
    auto p = alpha_from_r(5.0);
    double prev = 1e9;
    for (double b : {0.4, 0.625, 0.8, 1.0}) {
        p.b = b;
        const double v = hitting_ratio(p);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("asymptotic ratio") {
    const double pi = std::acos(-1.0);
    const double pref = asymptotic_ratio(10.0, 5.0 / 8.0) *
                        std::exp(pi * (5.0 / 8.0) * 10.0 / 2);
    CHECK(pref == doctest::Approx(1.2263431442).epsilon(1e-10));
    CHECK(asymptotic_ratio(10.0, 5.0 / 8.0) ==
          doctest::Approx(6.6824528e-5).epsilon(1e-7));
    // b = 1 prefactor collapses to 8/pi, matching the Brownian expansion.
    const double pref1 = asymptotic_ratio(10.0, 1.0) * std::exp(pi * 5.0);
    CHECK(pref1 == doctest::Approx(8.0 / pi).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_ratio(2.0, 0.5), DomainError);
}

TEST_CASE("refined ratio") {
    CHECK(refined_ratio(10.0, 5.0 / 8.0) ==
          doctest::Approx(6.682989679e-5).epsilon(1e-9));
    CHECK_THROWS_AS(refined_ratio(10.0, 1.0), DomainError);
    CHECK_THROWS_AS(refined_ratio(2.0, 0.5), DomainError);

    // Leading term is algebraically identical to asymptotic_ratio.
    const double b = 5.0 / 8.0;
    const double lg = std::tgamma((1 + b) / 2) / std::tgamma(b / 2);
    const double lambda = lg * lg;
    const double pi = std::acos(-1.0);
    CHECK(std::pow(2.0, 2 * b + 1) * lambda / b * std::exp(-b * pi * 10.0 / 2) ==
          doctest::Approx(asymptotic_ratio(10.0, b)).epsilon(1e-12));

    // Large-r agreement with quadrature needs extended precision because
    // alpha - 1 ~ 4e-28 at r = 40.
    auto p = alpha_from_r(Real50(40), Real50(5) / 8);
    const Real50 quad = hitting_ratio(p, Real50(1e-25), 14);
    const Real50 refined = refined_ratio(Real50(40), Real50(5) / 8);
    CHECK(static_cast<double>(abs(quad - refined) / quad) < 1e-8);
}

TEST_CASE("trefethen closed form") {
    const double pe = trefethen_pe<double>();
    CHECK(pe == doctest::Approx(0.000000383758797925).epsilon(1e-12));
    const Real50 pe50 = trefethen_pe<Real50>();
    const Real50 ratio = pe50 / (1 - pe50);
    const Real50 ref("0.00000038375894519599411176841999126970034234598936");
    CHECK(static_cast<double>(abs(ratio - ref) / ref) < 1e-40);
    // Cross-module: matches the Brownian ratio at r = 10.
    CHECK(static_cast<double>(ratio) ==
          doctest::Approx(brownian_ratio(alpha_from_r(10.0))).epsilon(1e-13));
}

TEST_CASE("extended-precision hitting ratio sharpens the golden value") {
    auto p = alpha_from_r(Real50(10), Real50(5) / 8);
    const Real50 R = hitting_ratio(p, Real50(1e-20), 14);
    CHECK(static_cast<double>(abs(R - Real50("6.682989935e-5")) /
                              R) < 5e-9);
}
