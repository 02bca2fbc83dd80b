#include "pgfem/cut_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace pgfem {

namespace {

double polygon_area(const std::vector<point>& p) {
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const point& u = p[i];
        const point& v = p[(i + 1) % p.size()];
        a += u.x * v.y - v.x * u.y;
    }
    return 0.5 * a;
}

void fan_triangulate(const std::vector<point>& poly, std::vector<triangle>& out) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        out.push_back({poly[0], poly[i], poly[i + 1]});
}

} // namespace

cell_cut cut_triangle(const triangle& t, const std::array<double, 3>& v) {
    bool has_pos = false, has_neg = false;
    for (double x : v) {
        if (x > 0.0) has_pos = true;
        else if (x < 0.0) has_neg = true;
        else throw std::invalid_argument("cut_triangle: zero vertex value");
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument("cut_triangle: vertex values do not change sign");

    // walk the boundary in cell order, splitting edges at the interpolant zero
    std::vector<point> poly1, poly2;
    std::array<point, 2> seg;
    int nseg = 0;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        (v[i] > 0.0 ? poly1 : poly2).push_back(t[i]);
        if ((v[i] > 0.0) != (v[j] > 0.0)) {
            double s = v[i] / (v[i] - v[j]);
            point cutp = t[i] + (t[j] - t[i]) * s;
            poly1.push_back(cutp);
            poly2.push_back(cutp);
            if (nseg < 2) seg[nseg] = cutp;
            ++nseg;
        }
    }
    if (nseg != 2) throw std::runtime_error("cut_triangle: degenerate cut");

    cell_cut cc;
    cc.segment = seg;
    fan_triangulate(poly1, cc.sub1);
    fan_triangulate(poly2, cc.sub2);
    double area = signed_area(t);
    cc.kappa1 = polygon_area(poly1) / area;
    cc.kappa2 = 1.0 - cc.kappa1;

    // gradient of the linear interpolant gives the cell-wise normal
    vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
    double det = e1.x * e2.y - e1.y * e2.x;
    double dv1 = v[1] - v[0], dv2 = v[2] - v[0];
    vec2 grad{(e2.y * dv1 - e1.y * dv2) / det, (-e2.x * dv1 + e1.x * dv2) / det};
    double gn = grad.norm();
    if (gn == 0.0) throw std::runtime_error("cut_triangle: vanishing interpolant gradient");
    cc.normal = {-grad.x / gn, -grad.y / gn};
    return cc;
}

cut_geometry::cut_geometry(const mesh& m, const level_set& phi) : mesh_(&m) {
    std::vector<char> perturbed;
    std::vector<double> vertex_phi = perturbed_vertex_values(m, phi, &perturbed);

    classes_.resize(m.num_cells());
    cut_index_.assign(m.num_cells(), -1);
    for (int c = 0; c < m.num_cells(); ++c) {
        const auto& cv = m.cells[c];
        if (perturbed[cv[0]] && perturbed[cv[1]] && perturbed[cv[2]])
            throw std::runtime_error("classify_and_cut: phi vanishes on an entire cell");
        std::array<double, 3> v{vertex_phi[cv[0]], vertex_phi[cv[1]], vertex_phi[cv[2]]};
        int pos = (v[0] > 0) + (v[1] > 0) + (v[2] > 0);
        if (pos == 3) {
            classes_[c] = cell_class::inside1;
        } else if (pos == 0) {
            classes_[c] = cell_class::inside2;
        } else {
            classes_[c] = cell_class::cut;
            cut_index_[c] = static_cast<int>(cuts_.size());
            cut_cells_.push_back(c);
            cuts_.push_back(cut_triangle(m.cell_triangle(c), v));
        }
    }
}

const cell_cut& cut_geometry::cut(int cell) const {
    int i = cut_index_[cell];
    if (i < 0) throw std::invalid_argument("cut_geometry::cut: cell is not cut");
    return cuts_[i];
}

std::pair<double, double> cut_geometry::kappa(int cell) const {
    switch (classes_[cell]) {
    case cell_class::inside1: return {1.0, 0.0};
    case cell_class::inside2: return {0.0, 1.0};
    case cell_class::cut: {
        const cell_cut& cc = cuts_[cut_index_[cell]];
        return {cc.kappa1, cc.kappa2};
    }
    }
    throw std::logic_error("cut_geometry::kappa");
}

} // namespace pgfem
