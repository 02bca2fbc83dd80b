#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "pgfem/cut_geometry.hpp"
#include "pgfem/level_set.hpp"
#include "pgfem/mesh.hpp"

using namespace pgfem;

TEST_CASE("level set normals and closest points") {
    level_set line = level_set::line(-1.0, 0.0, -0.51); // phi = 0.51 - x, region 1 left
    level_set circ = level_set::circle({0, 0}, 0.75);

    SUBCASE("unit gradients") {
        CHECK(line.gradient({0.3, 0.7}).norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(circ.gradient({0.4, 0.2}).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("line projection") {
        point p = line.closest_point({0.3, 0.7});
        CHECK(p.x == doctest::Approx(0.51).epsilon(1e-14));
        CHECK(p.y == doctest::Approx(0.7).epsilon(1e-14));
    }
    SUBCASE("circle projection") {
        point p = circ.closest_point({1.0, 1.0});
        CHECK(p.x == doctest::Approx(0.75 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(p.y == doctest::Approx(0.75 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK_THROWS(circ.closest_point({0.0, 0.0}));
    }
    SUBCASE("closest point lies on the zero set and |x - x_gamma| = |phi|") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-0.95, 0.95);
        for (int k = 0; k < 200; ++k) {
            point x{u(rng), u(rng)};
            for (const level_set* ls : {&line, &circ}) {
                if (ls == &circ && x.norm() < 1e-3) continue;
                point cp = ls->closest_point(x);
                CHECK(std::abs(ls->value(cp)) <= 1e-12);
                CHECK((x - cp).norm() == doctest::Approx(std::abs(ls->value(x))).epsilon(1e-12));
            }
        }
    }
    SUBCASE("normal points out of region 1") {
        vec2 n = line.unit_normal({0.2, 0.5});
        CHECK(n.x == doctest::Approx(1.0));
        CHECK(n.y == doctest::Approx(0.0));
        vec2 nc = circ.unit_normal({0.5, 0.0});
        CHECK(nc.x == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("cut of the reference-like triangle by x = 0.5") {
    triangle t{{point{0, 0}, point{1, 0}, point{0, 1}}};
    // phi = 0.5 - x: region 1 is x < 0.5
    cell_cut cc = cut_triangle(t, {0.5, -0.5, 0.5});
    CHECK(cc.kappa1 == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(cc.kappa2 == doctest::Approx(0.25).epsilon(1e-14));
    // segment endpoints are (0.5, 0) and (0.5, 0.5)
    double ymin = std::min(cc.segment[0].y, cc.segment[1].y);
    double ymax = std::max(cc.segment[0].y, cc.segment[1].y);
    CHECK(cc.segment[0].x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cc.segment[1].x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ymin == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ymax == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cc.normal.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cc.normal.y == doctest::Approx(0.0).epsilon(1e-14));
    double a1 = 0.0, a2 = 0.0;
    for (const triangle& s : cc.sub1) a1 += signed_area(s);
    for (const triangle& s : cc.sub2) a2 += signed_area(s);
    CHECK(a1 + a2 == doctest::Approx(signed_area(t)).epsilon(1e-14));
}

TEST_CASE("classification of uncut cells") {
    mesh m = build_uniform_mesh(4);
    level_set phi = level_set::line(-1.0, 0.0, -0.51);
    cut_geometry cg = classify_and_cut(m, phi);
    for (int c = 0; c < m.num_cells(); ++c) {
        triangle t = m.cell_triangle(c);
        double xmax = std::max({t[0].x, t[1].x, t[2].x});
        double xmin = std::min({t[0].x, t[1].x, t[2].x});
        if (xmax < 0.51) {
            CHECK(cg.classification(c) == cell_class::inside1);
            CHECK(cg.kappa(c).first == doctest::Approx(1.0));
        } else if (xmin > 0.51) {
            CHECK(cg.classification(c) == cell_class::inside2);
        } else {
            CHECK(cg.classification(c) == cell_class::cut);
        }
    }
}

TEST_CASE("random cut cells conserve area and kappa weights") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 1000) {
        triangle t{{point{u(rng), u(rng)}, point{u(rng), u(rng)}, point{u(rng), u(rng)}}};
        if (signed_area(t) < 1e-3) continue;
        std::array<double, 3> v{u(rng), u(rng), u(rng)};
        bool pos = false, neg = false;
        for (double x : v) {
            if (x > 1e-6) pos = true;
            if (x < -1e-6) neg = true;
        }
        if (!pos || !neg) continue;
        cell_cut cc = cut_triangle(t, v);
        CHECK(cc.kappa1 + cc.kappa2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cc.kappa1 >= 0.0);
        CHECK(cc.kappa2 >= 0.0);
        double a = 0.0;
        for (const triangle& s : cc.sub1) a += signed_area(s);
        for (const triangle& s : cc.sub2) a += signed_area(s);
        CHECK(a == doctest::Approx(signed_area(t)).epsilon(1e-12));
        // the segment endpoints satisfy the linear interpolant of phi = 0
        for (const point& p : cc.segment) {
            point r{0, 0};
            vec2 e1 = t[1] - t[0], e2 = t[2] - t[0], d = p - t[0];
            double det = e1.x * e2.y - e1.y * e2.x;
            r = {(e2.y * d.x - e2.x * d.y) / det, (-e1.y * d.x + e1.x * d.y) / det};
            double interp = v[0] * (1 - r.x - r.y) + v[1] * r.x + v[2] * r.y;
            CHECK(std::abs(interp) <= 1e-12 * (std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2])));
        }
        ++done;
    }
}

TEST_CASE("interface length of the circle converges at second order") {
    double exact = 2.0 * M_PI * 0.75;
    std::vector<double> errs;
    for (int n : {16, 32, 64, 128}) {
        mesh m = build_uniform_mesh(n, rect{-1, -1, 1, 1});
        cut_geometry cg = classify_and_cut(m, level_set::circle({0, 0}, 0.75));
        double len = 0.0;
        for (int c : cg.cut_cells()) {
            const cell_cut& cc = cg.cut(c);
            len += (cc.segment[1] - cc.segment[0]).norm();
        }
        errs.push_back(std::abs(len - exact));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        double rate = std::log2(errs[i - 1] / errs[i]);
        CHECK(rate > 1.7);
    }
    CHECK(errs.back() < 1e-3);
}

TEST_CASE("degenerate level set values are rejected") {
    mesh m = build_uniform_mesh(2);
    level_set zero = level_set::custom([](point) { return 0.0; }, [](point) { return vec2{1, 0}; });
    CHECK_THROWS(classify_and_cut(m, zero));
    CHECK_THROWS(cut_triangle({{point{0, 0}, point{1, 0}, point{0, 1}}}, {1.0, 1.0, 1.0}));
    CHECK_THROWS(cut_triangle({{point{0, 0}, point{1, 0}, point{0, 1}}}, {0.0, 1.0, -1.0}));
}

TEST_CASE("vertex hits are perturbed deterministically") {
    // interface through mesh vertices at x = 0.5
    mesh m = build_uniform_mesh(4);
    level_set phi = level_set::line(-1.0, 0.0, -0.5);
    cut_geometry cg = classify_and_cut(m, phi);
    // cells left of the line are uncut region-1 cells; the line itself shows up
    // as slivers in the cells to the right
    for (int c = 0; c < m.num_cells(); ++c) {
        triangle t = m.cell_triangle(c);
        double xmax = std::max({t[0].x, t[1].x, t[2].x});
        if (xmax <= 0.5 + 1e-12) CHECK(cg.classification(c) == cell_class::inside1);
    }
    double len = 0.0;
    for (int c : cg.cut_cells()) len += (cg.cut(c).segment[1] - cg.cut(c).segment[0]).norm();
    CHECK(len == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("regularized delta and heaviside") {
    SUBCASE("delta at zero") {
        CHECK(delta_eps(0.0, 0.1) == doctest::Approx(std::sqrt(M_PI) / 0.3).epsilon(1e-14));
    }
    SUBCASE("heaviside at zero is a half") {
        for (double eps : {0.01, 0.1, 1.0}) CHECK(heaviside_eps(0.0, eps) == doctest::Approx(0.5));
    }
    SUBCASE("unit mass via adaptive quadrature") {
        // adaptive Simpson on [-6 eps, 6 eps]
        std::function<double(double, double, double, double, double, double, int)> simpson =
            [&](double a, double b, double fa, double fb, double fm, double whole, int depth) {
                double m = 0.5 * (a + b);
                double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
                double flm = delta_eps(lm, 0.1), frm = delta_eps(rm, 0.1);
                double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
                double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
                if (depth > 30 || std::abs(left + right - whole) < 1e-12)
                    return left + right + (left + right - whole) / 15.0;
                return simpson(a, m, fa, fm, flm, left, depth + 1) +
                       simpson(m, b, fm, fb, frm, right, depth + 1);
            };
        double a = -0.6, b = 0.6;
        double fa = delta_eps(a, 0.1), fb = delta_eps(b, 0.1), fm = delta_eps(0.0, 0.1);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        double mass = simpson(a, b, fa, fb, fm, whole, 0);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("heaviside is strictly increasing and matches its derivative") {
        // sample within ~4 eps of the interface; beyond that erf saturates in
        // double precision and strictness is lost to rounding
        double eps = 0.05;
        double prev = heaviside_eps(-0.2, eps);
        for (int i = 1; i <= 100; ++i) {
            double t = -0.2 + i * 0.004;
            double h = heaviside_eps(t, eps);
            CHECK(h > prev);
            prev = h;
        }
        for (double t : {-0.04, 0.0, 0.03}) {
            double fd = (heaviside_eps(t + 1e-6, eps) - heaviside_eps(t - 1e-6, eps)) / 2e-6;
            CHECK(fd == doctest::Approx(delta_eps(t, eps)).epsilon(1e-6));
        }
    }
    SUBCASE("invalid eps") {
        CHECK_THROWS(delta_eps(0.0, 0.0));
        CHECK_THROWS(heaviside_eps(0.0, -1.0));
    }
}
