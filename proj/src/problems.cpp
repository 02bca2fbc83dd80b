#include "pgfem/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "pgfem/quadrature.hpp"

namespace pgfem {

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

problem_spec smooth1d() {
    problem_spec s;
    s.name = "smooth1d";
    s.domain = {0, 0, 1, 1};
    s.phi = level_set::line(-1.0, 0.0, -0.51); // phi = 0.51 - x, region 1 is x < 0.51
    s.mu1 = 1e-8;
    s.mu2 = 1.0;
    s.f1 = [](point) { return 2e-8; };
    s.f2 = [](point) { return 2.0; };
    s.has_exact = true;
    auto u = [](point p) { return (p.x - 0.01) * (1.01 - p.x); };
    auto du = [](point p) { return vec2{1.02 - 2.0 * p.x, 0.0}; };
    s.exact_u1 = s.exact_u2 = u;
    s.exact_grad1 = s.exact_grad2 = du;
    s.dirichlet = [](point p) { return near(p.x, 0.0) || near(p.x, 1.0); };
    s.dirichlet_data = [u](point p, int) { return u(p); };
    s.quasi_uniform_ok = true;
    return s;
}

problem_spec kink1d() {
    problem_spec s;
    s.name = "kink1d";
    s.domain = {0, 0, 1, 1};
    s.phi = level_set::line(-1.0, 0.0, -0.51);
    s.mu1 = 0.5;
    s.mu2 = 3.0;
    s.f1 = s.f2 = [](point) { return 1.0; };
    s.has_exact = true;
    auto u1 = [](point p) {
        double t = p.x - 0.01;
        return 9.0 / 14.0 * t - t * t;
    };
    auto u2 = [](point p) {
        double t = p.x - 0.01;
        return 5.0 / 84.0 + 9.0 / 84.0 * t - t * t / 6.0;
    };
    s.exact_u1 = u1;
    s.exact_u2 = u2;
    s.exact_grad1 = [](point p) { return vec2{9.0 / 14.0 - 2.0 * (p.x - 0.01), 0.0}; };
    s.exact_grad2 = [](point p) { return vec2{9.0 / 84.0 - (p.x - 0.01) / 3.0, 0.0}; };
    s.dirichlet = [](point p) { return near(p.x, 0.0) || near(p.x, 1.0); };
    s.dirichlet_data = [u1, u2](point p, int field) { return field == 1 ? u1(p) : u2(p); };
    s.quasi_uniform_ok = true;
    return s;
}

problem_spec circle() {
    problem_spec s;
    s.name = "circle";
    s.domain = {-1, -1, 1, 1};
    s.phi = level_set::circle({0, 0}, 0.75);
    s.mu1 = 1.0;
    s.mu2 = 1e3;
    s.f1 = s.f2 = [](point) { return 4.0; };
    s.has_exact = true;
    // -div(mu grad u) = 4 with u continuous and flux-continuous at r = 0.75
    auto u1 = [](point p) { return -(p.x * p.x + p.y * p.y); };
    auto u2 = [](point p) { return -(p.x * p.x + p.y * p.y - 0.5625) / 1000.0 - 0.5625; };
    s.exact_u1 = u1;
    s.exact_u2 = u2;
    s.exact_grad1 = [](point p) { return vec2{-2.0 * p.x, -2.0 * p.y}; };
    s.exact_grad2 = [](point p) { return vec2{-2.0 * p.x / 1000.0, -2.0 * p.y / 1000.0}; };
    s.dirichlet = [](point) { return true; };
    s.dirichlet_data = [u1, u2](point p, int field) { return field == 1 ? u1(p) : u2(p); };
    return s;
}

problem_spec quartic() {
    problem_spec s;
    s.name = "quartic";
    s.domain = {0, 0, 1, 1};
    s.phi = level_set::line(-1.0, 0.0, -0.51);
    s.mu1 = 0.5;
    s.mu2 = 2.0;
    s.f1 = [](point p) {
        double t = p.x - 0.01;
        return 4.0 * t * t;
    };
    s.f2 = [](point p) {
        double t = p.x - 0.01;
        return 108.0 / 11.0 * t * t;
    };
    s.has_exact = true;
    auto u1 = [](point p) {
        double t = p.x - 0.01;
        return 7.0 / 12.0 * t - 2.0 / 3.0 * t * t * t * t;
    };
    auto u2 = [](point p) {
        double t = p.x - 0.01;
        return 25.0 / 176.0 + 47.0 / 176.0 * t - 9.0 / 22.0 * t * t * t * t;
    };
    s.exact_u1 = u1;
    s.exact_u2 = u2;
    s.exact_grad1 = [](point p) {
        double t = p.x - 0.01;
        return vec2{7.0 / 12.0 - 8.0 / 3.0 * t * t * t, 0.0};
    };
    s.exact_grad2 = [](point p) {
        double t = p.x - 0.01;
        return vec2{47.0 / 176.0 - 18.0 / 11.0 * t * t * t, 0.0};
    };
    s.dirichlet = [](point p) { return near(p.x, 0.0) || near(p.x, 1.0); };
    s.dirichlet_data = [u1, u2](point p, int field) { return field == 1 ? u1(p) : u2(p); };
    return s;
}

problem_spec convection() {
    problem_spec s;
    s.name = "convection";
    s.domain = {0, 0, 1, 1};
    // interface through (0, 0.7) parallel to the velocity; region 1 holds the
    // larger diffusion coefficient
    double vx = std::cos(-M_PI / 3.0), vy = std::sin(-M_PI / 3.0);
    s.phi = level_set::line(-vy, vx, -vy * 0.0 + vx * 0.7);
    s.mu1 = 1e-3;
    s.mu2 = 1e-8;
    s.f1 = s.f2 = [](point) { return 0.0; };
    s.velocity = vec2{vx, vy};
    s.dirichlet = [](point) { return true; };
    s.dirichlet_data = [](point p, int) {
        // discontinuous at (0, 0.7); the node exactly there takes the
        // one-sided value 1
        if (near(p.x, 0.0) && near(p.y, 0.7)) return 1.0;
        if (near(p.x, 1.0) || p.y <= 0.7) return 0.0;
        return 1.0;
    };
    return s;
}

} // namespace

problem_spec catalog(const std::string& name) {
    if (name == "smooth1d") return smooth1d();
    if (name == "kink1d") return kink1d();
    if (name == "circle") return circle();
    if (name == "quartic") return quartic();
    if (name == "convection") return convection();
    throw std::invalid_argument("catalog: unknown problem '" + name + "'");
}

dirichlet_bc make_bc(const problem_spec& spec, int field) {
    dirichlet_bc bc;
    bc.on_boundary = spec.dirichlet;
    if (spec.dirichlet_data) {
        auto data = spec.dirichlet_data;
        bc.data = [data, field](point p) { return data(p, field); };
    }
    return bc;
}

double l2_error(const fe_space& space1, const std::vector<double>& u1,
                const fe_space& space2, const std::vector<double>& u2,
                const problem_spec& spec, const cut_geometry& geo) {
    if (!spec.has_exact) throw std::invalid_argument("l2_error: no exact solution");
    const mesh& m = geo.parent();
    const int order = 2 * std::max(space1.degree, space2.degree) + 2;
    const quad_rule& qr = gauss_triangle(order);

    std::vector<double> vals;
    std::vector<vec2> grads;
    auto field_error2 = [&](const fe_space& space, const std::vector<double>& u,
                            const std::function<double(point)>& exact, int cell,
                            const triangle& tri) {
        double acc = 0.0;
        double det = 2.0 * signed_area(tri);
        for (std::size_t q = 0; q < qr.points.size(); ++q) {
            point x = tri[0] + (tri[1] - tri[0]) * qr.points[q].x +
                      (tri[2] - tri[0]) * qr.points[q].y;
            point ref = m.map_to_reference(cell, x);
            space.eval_basis(cell, ref, vals, grads);
            double uh = 0.0;
            const std::vector<int>& dofs = space.cell_dofs[cell];
            for (std::size_t j = 0; j < vals.size(); ++j) uh += vals[j] * u[dofs[j]];
            double d = uh - exact(x);
            acc += qr.weights[q] * det * d * d;
        }
        return acc;
    };

    double err2 = 0.0, comp = 0.0;
    auto accumulate = [&err2, &comp](double v) {
        double y = v - comp;
        double t = err2 + y;
        comp = (t - err2) - y;
        err2 = t;
    };
    for (int c = 0; c < m.num_cells(); ++c) {
        switch (geo.classification(c)) {
        case cell_class::inside1:
            accumulate(field_error2(space1, u1, spec.exact_u1, c, m.cell_triangle(c)));
            break;
        case cell_class::inside2:
            accumulate(field_error2(space2, u2, spec.exact_u2, c, m.cell_triangle(c)));
            break;
        case cell_class::cut: {
            const cell_cut& cc = geo.cut(c);
            for (const triangle& t : cc.sub1)
                accumulate(field_error2(space1, u1, spec.exact_u1, c, t));
            for (const triangle& t : cc.sub2)
                accumulate(field_error2(space2, u2, spec.exact_u2, c, t));
            break;
        }
        }
    }
    return std::sqrt(err2);
}

std::vector<double> eoc(const std::vector<std::pair<double, double>>& h_and_error) {
    std::vector<double> rates;
    for (std::size_t i = 1; i < h_and_error.size(); ++i) {
        if (h_and_error[i].first >= h_and_error[i - 1].first)
            throw std::invalid_argument("eoc: h must be strictly decreasing");
        rates.push_back(std::log2(h_and_error[i - 1].second / h_and_error[i].second));
    }
    return rates;
}

} // namespace pgfem
