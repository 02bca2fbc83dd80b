#include <doctest.h>

#include <cmath>

#include "pgfem/quadrature.hpp"

using namespace pgfem;

namespace {

// int over the reference triangle of x^a y^b = a! b! / (a+b+2)!
double monomial_integral(int a, int b) {
    double v = 1.0;
    for (int k = 1; k <= a; ++k) v *= k;
    for (int k = 1; k <= b; ++k) v *= k;
    for (int k = 1; k <= a + b + 2; ++k) v /= k;
    return v;
}

} // namespace

TEST_CASE("triangle rules: weight sums and polynomial exactness") {
    for (int order = 1; order <= 10; ++order) {
        const quad_rule& qr = gauss_triangle(order);
        double wsum = 0.0;
        for (double w : qr.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(wsum == doctest::Approx(0.5).epsilon(1e-14));
        for (int a = 0; a + 0 <= order; ++a) {
            for (int b = 0; a + b <= order; ++b) {
                double s = 0.0;
                for (std::size_t q = 0; q < qr.points.size(); ++q)
                    s += qr.weights[q] * std::pow(qr.points[q].x, a) * std::pow(qr.points[q].y, b);
                CHECK(s == doctest::Approx(monomial_integral(a, b)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("triangle rule order 1 is the barycenter rule") {
    const quad_rule& qr = gauss_triangle(1);
    REQUIRE(qr.points.size() == 1);
    CHECK(qr.points[0].x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(qr.points[0].y == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(qr.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("int x^2 y over the reference triangle is 1/60") {
    for (int order = 3; order <= 10; ++order) {
        const quad_rule& qr = gauss_triangle(order);
        double s = 0.0;
        for (std::size_t q = 0; q < qr.points.size(); ++q)
            s += qr.weights[q] * qr.points[q].x * qr.points[q].x * qr.points[q].y;
        CHECK(s == doctest::Approx(1.0 / 60.0).epsilon(1e-13));
    }
}

TEST_CASE("segment rules") {
    SUBCASE("order 1 is the midpoint rule") {
        const quad_rule_1d& r = gauss_segment(1);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("order 3 uses 2 points and integrates cubics") {
        const quad_rule_1d& r = gauss_segment(3);
        REQUIRE(r.points.size() == 2);
        double s = 0.0;
        for (std::size_t q = 0; q < r.points.size(); ++q)
            s += r.weights[q] * std::pow(r.points[q], 3);
        CHECK(s == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("int t^4 = 1/5 from order 4 on") {
        for (int order = 4; order <= 12; ++order) {
            const quad_rule_1d& r = gauss_segment(order);
            double s = 0.0;
            for (std::size_t q = 0; q < r.points.size(); ++q)
                s += r.weights[q] * std::pow(r.points[q], 4);
            CHECK(s == doctest::Approx(0.2).epsilon(1e-14));
        }
    }
    SUBCASE("exactness across orders") {
        for (int order = 1; order <= 21; ++order) {
            const quad_rule_1d& r = gauss_segment(order);
            for (int k = 0; k <= order; ++k) {
                double s = 0.0;
                for (std::size_t q = 0; q < r.points.size(); ++q)
                    s += r.weights[q] * std::pow(r.points[q], k);
                CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("unsupported orders are rejected") {
    CHECK_THROWS(gauss_triangle(0));
    CHECK_THROWS(gauss_triangle(11));
    CHECK_THROWS(gauss_segment(0));
}
