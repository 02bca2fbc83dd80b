#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "pgfem/fe_space.hpp"
#include "pgfem/level_set.hpp"
#include "pgfem/mesh.hpp"
#include "pgfem/quadrature.hpp"

using namespace pgfem;

namespace {

submesh full_submesh(const mesh& m) {
    level_set far_line = level_set::line(-1.0, 0.0, -100.0);
    return select_submesh(m, far_line, 1, 0.0);
}

} // namespace

TEST_CASE("dof counts") {
    mesh m = build_uniform_mesh(2);
    submesh s = full_submesh(m);
    SUBCASE("p=1 has one dof per vertex") {
        fe_space sp = build_space(s, 1);
        CHECK(sp.num_dofs() == 9);
    }
    SUBCASE("p=2 adds one dof per edge") {
        fe_space sp = build_space(s, 2);
        CHECK(sp.num_dofs() == 9 + static_cast<int>(m.faces.size()));
        CHECK(sp.num_dofs() == 25);
    }
    SUBCASE("p=3 adds two per edge and one per cell") {
        fe_space sp = build_space(s, 3);
        CHECK(sp.num_dofs() == 9 + 2 * static_cast<int>(m.faces.size()) + m.num_cells());
    }
}

TEST_CASE("dof count on a cut submesh equals the active vertex count for p=1") {
    mesh m = build_uniform_mesh(128);
    level_set phi = level_set::line(-1.0, 0.0, -0.51);
    submesh s = select_submesh(m, phi, 1, 0.0);
    fe_space sp = build_space(s, 1);
    std::set<int> verts;
    for (int c : s.active_cells)
        for (int v : m.cells[c]) verts.insert(v);
    CHECK(sp.num_dofs() == static_cast<int>(verts.size()));
}

TEST_CASE("basis is nodal, a partition of unity, and linearly complete") {
    mesh m = build_uniform_mesh(3);
    submesh s = full_submesh(m);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int p : {1, 2, 3}) {
        fe_space sp = build_space(s, p);
        const std::vector<point>& nodes = local_node_coords(p);
        std::vector<double> vals;
        std::vector<vec2> grads;
        // Kronecker property at the local nodes
        for (std::size_t l = 0; l < nodes.size(); ++l) {
            sp.eval_basis(4, nodes[l], vals, grads);
            for (std::size_t j = 0; j < vals.size(); ++j)
                CHECK(vals[j] == doctest::Approx(l == j ? 1.0 : 0.0).epsilon(1e-12));
        }
        // partition of unity and exact gradient of x at random points
        std::vector<double> xcoef = interpolate(sp, [](point q) { return q.x; });
        for (int k = 0; k < 50; ++k) {
            double a = u(rng), b = u(rng) * (1.0 - a);
            point ref{a, b};
            int cell = 2 * (rng() % 9);
            sp.eval_basis(cell, ref, vals, grads);
            double sum = 0.0;
            vec2 gx{0, 0};
            for (std::size_t j = 0; j < vals.size(); ++j) {
                sum += vals[j];
                gx += grads[j] * xcoef[sp.cell_dofs[cell][j]];
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(gx.x == doctest::Approx(1.0).epsilon(1e-11));
            CHECK(gx.y == doctest::Approx(0.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("interpolation basics") {
    mesh m = build_uniform_mesh(4);
    submesh s = full_submesh(m);
    fe_space sp = build_space(s, 1);
    SUBCASE("constants give the all-ones vector") {
        std::vector<double> u = interpolate(sp, [](point) { return 1.0; });
        for (double v : u) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("f = x gives the node x-coordinates") {
        std::vector<double> u = interpolate(sp, [](point q) { return q.x; });
        for (int d = 0; d < sp.num_dofs(); ++d)
            CHECK(u[d] == doctest::Approx(sp.dof_coords[d].x));
    }
}

TEST_CASE("interpolation error of the smooth parabola decays at rate p+1") {
    auto f = [](point q) { return (q.x - 0.01) * (1.01 - q.x); };
    std::vector<double> errs;
    for (int n : {8, 16, 32, 64}) {
        mesh m = build_uniform_mesh(n);
        submesh s = full_submesh(m);
        fe_space sp = build_space(s, 1);
        std::vector<double> u = interpolate(sp, f);
        // exact quadrature: the squared error is quartic per cell
        const quad_rule& qr = gauss_triangle(4);
        double e2 = 0.0;
        std::vector<double> vals;
        std::vector<vec2> grads;
        for (int c = 0; c < m.num_cells(); ++c) {
            double det = 2.0 * m.cell_area(c);
            for (std::size_t q = 0; q < qr.points.size(); ++q) {
                sp.eval_basis(c, qr.points[q], vals, grads);
                double uh = 0.0;
                for (std::size_t j = 0; j < vals.size(); ++j)
                    uh += vals[j] * u[sp.cell_dofs[c][j]];
                double diff = uh - f(m.map_from_reference(c, qr.points[q]));
                e2 += qr.weights[q] * det * diff * diff;
            }
        }
        errs.push_back(std::sqrt(e2));
    }
    for (std::size_t i = 1; i < errs.size(); ++i)
        CHECK(std::log2(errs[i - 1] / errs[i]) == doctest::Approx(2.0).epsilon(0.05));

    // p = 2 reproduces the parabola exactly
    mesh m = build_uniform_mesh(8);
    submesh s = full_submesh(m);
    fe_space sp = build_space(s, 2);
    std::vector<double> u = interpolate(sp, f);
    std::vector<double> vals;
    std::vector<vec2> grads;
    sp.eval_basis(5, {0.21, 0.37}, vals, grads);
    double uh = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) uh += vals[j] * u[sp.cell_dofs[5][j]];
    CHECK(uh == doctest::Approx(f(m.map_from_reference(5, {0.21, 0.37}))).epsilon(1e-13));
}

TEST_CASE("dof numbering is deterministic") {
    mesh m = build_uniform_mesh(6);
    level_set phi = level_set::circle({0.5, 0.5}, 0.3);
    submesh s = select_submesh(m, phi, 1, 2.0 / 6.0);
    fe_space a = build_space(s, 2);
    fe_space b = build_space(s, 2);
    REQUIRE(a.num_dofs() == b.num_dofs());
    for (int d = 0; d < a.num_dofs(); ++d) {
        CHECK(a.dof_coords[d].x == b.dof_coords[d].x);
        CHECK(a.dof_coords[d].y == b.dof_coords[d].y);
    }
    for (int c : s.active_cells) CHECK(a.cell_dofs[c] == b.cell_dofs[c]);
}

TEST_CASE("dirichlet dofs live on the requested boundary part") {
    mesh m = build_uniform_mesh(4);
    submesh s = full_submesh(m);
    dirichlet_bc bc;
    bc.on_boundary = [](point p) { return p.x < 1e-12; }; // left side only
    bc.data = [](point p) { return p.y; };
    fe_space sp = build_space(s, 2, &bc);
    CHECK(!sp.dirichlet_dofs.empty());
    for (std::size_t i = 0; i < sp.dirichlet_dofs.size(); ++i) {
        const point& p = sp.dof_coords[sp.dirichlet_dofs[i]];
        CHECK(p.x == doctest::Approx(0.0));
        CHECK(sp.dirichlet_values[i] == doctest::Approx(p.y));
    }
}

TEST_CASE("point location") {
    mesh m = build_uniform_mesh(4);
    point_locator loc(m);
    SUBCASE("barycenter of cell 7") {
        triangle t = m.cell_triangle(7);
        point bary = (t[0] + t[1] + t[2]) / 3.0;
        point_locator::result r = loc.locate(bary);
        CHECK(r.cell == 7);
        CHECK(r.ref.x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(r.ref.y == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("points on shared edges pick the lowest cell index") {
        // the diagonal of the first square is shared by cells 0 and 1
        point p{0.1, 0.1};
        point_locator::result r = loc.locate(p);
        CHECK(r.cell == 0);
    }
    SUBCASE("round trip of random points") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 10000; ++k) {
            point p{u(rng), u(rng)};
            point_locator::result r = loc.locate(p);
            point back = m.map_from_reference(r.cell, r.ref);
            CHECK(std::abs(back.x - p.x) <= 1e-12);
            CHECK(std::abs(back.y - p.y) <= 1e-12);
        }
    }
    SUBCASE("outside points are rejected, boundary points snap inward") {
        CHECK_THROWS(loc.locate({1.5, 0.5}));
        point_locator::result r = loc.locate({1.0, 0.5});
        CHECK(r.cell >= 0);
    }
}

TEST_CASE("empty submesh and bad degree are rejected") {
    mesh m = build_uniform_mesh(2);
    level_set phi = level_set::line(-1.0, 0.0, -100.0);
    submesh s2 = select_submesh(m, phi, 2, 0.0); // region 2 is empty
    CHECK(s2.active_cells.empty());
    CHECK_THROWS(build_space(s2, 1));
    submesh s1 = select_submesh(m, phi, 1, 0.0);
    CHECK_THROWS(build_space(s1, 4));
}
