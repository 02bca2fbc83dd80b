#include "pgfem/fe_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pgfem {

namespace {

constexpr int edge_pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
const point ref_vertex[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};

} // namespace

void eval_shape(int degree, const point& ref, std::vector<double>& values) {
    double l0 = 1.0 - ref.x - ref.y, l1 = ref.x, l2 = ref.y;
    double l[3] = {l0, l1, l2};
    values.resize(local_dof_count(degree));
    switch (degree) {
    case 1:
        for (int i = 0; i < 3; ++i) values[i] = l[i];
        return;
    case 2:
        for (int i = 0; i < 3; ++i) values[i] = l[i] * (2.0 * l[i] - 1.0);
        for (int e = 0; e < 3; ++e)
            values[3 + e] = 4.0 * l[edge_pairs[e][0]] * l[edge_pairs[e][1]];
        return;
    case 3:
        for (int i = 0; i < 3; ++i)
            values[i] = 0.5 * l[i] * (3.0 * l[i] - 1.0) * (3.0 * l[i] - 2.0);
        for (int e = 0; e < 3; ++e) {
            double li = l[edge_pairs[e][0]], lj = l[edge_pairs[e][1]];
            values[3 + 2 * e] = 4.5 * li * lj * (3.0 * li - 1.0);
            values[3 + 2 * e + 1] = 4.5 * li * lj * (3.0 * lj - 1.0);
        }
        values[9] = 27.0 * l0 * l1 * l2;
        return;
    default:
        throw std::invalid_argument("eval_shape: degree must be 1, 2 or 3");
    }
}

void eval_shape_grad(int degree, const point& ref, std::vector<vec2>& ref_grads) {
    double l0 = 1.0 - ref.x - ref.y, l1 = ref.x, l2 = ref.y;
    double l[3] = {l0, l1, l2};
    const vec2 dl[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
    ref_grads.resize(local_dof_count(degree));
    switch (degree) {
    case 1:
        for (int i = 0; i < 3; ++i) ref_grads[i] = dl[i];
        return;
    case 2:
        for (int i = 0; i < 3; ++i) ref_grads[i] = dl[i] * (4.0 * l[i] - 1.0);
        for (int e = 0; e < 3; ++e) {
            int i = edge_pairs[e][0], j = edge_pairs[e][1];
            ref_grads[3 + e] = 4.0 * (dl[i] * l[j] + dl[j] * l[i]);
        }
        return;
    case 3:
        for (int i = 0; i < 3; ++i)
            ref_grads[i] = dl[i] * (0.5 * (27.0 * l[i] * l[i] - 18.0 * l[i] + 2.0));
        for (int e = 0; e < 3; ++e) {
            int i = edge_pairs[e][0], j = edge_pairs[e][1];
            double li = l[i], lj = l[j];
            ref_grads[3 + 2 * e] =
                4.5 * (dl[i] * (lj * (6.0 * li - 1.0)) + dl[j] * (li * (3.0 * li - 1.0)));
            ref_grads[3 + 2 * e + 1] =
                4.5 * (dl[i] * (lj * (3.0 * lj - 1.0)) + dl[j] * (li * (6.0 * lj - 1.0)));
        }
        ref_grads[9] = 27.0 * (dl[0] * (l1 * l2) + dl[1] * (l0 * l2) + dl[2] * (l0 * l1));
        return;
    default:
        throw std::invalid_argument("eval_shape_grad: degree must be 1, 2 or 3");
    }
}

const std::vector<point>& local_node_coords(int degree) {
    static const std::vector<point> p1 = {{0, 0}, {1, 0}, {0, 1}};
    static const std::vector<point> p2 = {{0, 0}, {1, 0}, {0, 1},
                                          {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
    static const std::vector<point> p3 = [] {
        std::vector<point> n = {{0, 0}, {1, 0}, {0, 1}};
        for (int e = 0; e < 3; ++e) {
            point a = ref_vertex[edge_pairs[e][0]], b = ref_vertex[edge_pairs[e][1]];
            n.push_back(a + (b - a) * (1.0 / 3.0));
            n.push_back(a + (b - a) * (2.0 / 3.0));
        }
        n.push_back({1.0 / 3.0, 1.0 / 3.0});
        return n;
    }();
    switch (degree) {
    case 1: return p1;
    case 2: return p2;
    case 3: return p3;
    default: throw std::invalid_argument("local_node_coords: degree must be 1, 2 or 3");
    }
}

void fe_space::eval_basis(int cell, const point& ref, std::vector<double>& values,
                          std::vector<vec2>& gradients) const {
    if (cell_dofs[cell].empty())
        throw std::invalid_argument("fe_space::eval_basis: cell not active");
    eval_shape(degree, ref, values);
    static thread_local std::vector<vec2> ref_grads;
    eval_shape_grad(degree, ref, ref_grads);
    triangle t = parent().cell_triangle(cell);
    vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
    double det = e1.x * e2.y - e1.y * e2.x;
    // J^{-T} columns
    gradients.resize(ref_grads.size());
    for (std::size_t i = 0; i < ref_grads.size(); ++i) {
        const vec2& g = ref_grads[i];
        gradients[i] = {(e2.y * g.x - e1.y * g.y) / det, (-e2.x * g.x + e1.x * g.y) / det};
    }
}

fe_space build_space(const submesh& sub, int degree, const dirichlet_bc* bc) {
    if (degree < 1 || degree > 3)
        throw std::invalid_argument("build_space: degree must be 1, 2 or 3");
    if (sub.active_cells.empty()) throw std::invalid_argument("build_space: empty submesh");

    const mesh& m = *sub.parent;
    fe_space space;
    space.sub = &sub;
    space.degree = degree;
    space.cell_dofs.assign(m.num_cells(), {});

    // structural identification first: vertex dofs by vertex id, edge dofs by
    // (face id, position from the lower vertex id), interior dofs per cell
    std::vector<int> vertex_dof(m.num_vertices(), -1);
    std::map<std::pair<int, int>, int> edge_dof; // (face, k) -> dof
    std::vector<point> coords;
    auto add_dof = [&coords](const point& p) {
        coords.push_back(p);
        return static_cast<int>(coords.size()) - 1;
    };

    for (int c : sub.active_cells) {
        std::vector<int>& dofs = space.cell_dofs[c];
        dofs.reserve(local_dof_count(degree));
        for (int i = 0; i < 3; ++i) {
            int v = m.cells[c][i];
            if (vertex_dof[v] < 0) vertex_dof[v] = add_dof(m.vertices[v]);
            dofs.push_back(vertex_dof[v]);
        }
        for (int e = 0; e < 3 && degree >= 2; ++e) {
            int a = m.cells[c][edge_pairs[e][0]];
            int b = m.cells[c][edge_pairs[e][1]];
            int face = m.cell_faces[c][(e + 2) % 3]; // face opposite the remaining vertex
            for (int k = 1; k < degree; ++k) {
                int pos = a < b ? k : degree - k; // position counted from min(a,b)
                auto key = std::make_pair(face, pos);
                auto it = edge_dof.find(key);
                int d;
                if (it == edge_dof.end()) {
                    const point& p0 = m.vertices[std::min(a, b)];
                    const point& p1 = m.vertices[std::max(a, b)];
                    d = add_dof(p0 + (p1 - p0) * (static_cast<double>(pos) / degree));
                    edge_dof.emplace(key, d);
                } else {
                    d = it->second;
                }
                dofs.push_back(d);
            }
        }
        if (degree == 3) dofs.push_back(add_dof(m.map_from_reference(c, {1.0 / 3.0, 1.0 / 3.0})));
    }

    // lexicographic renumbering by coordinate
    std::vector<int> order(coords.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&coords](int a, int b) {
        if (coords[a].x != coords[b].x) return coords[a].x < coords[b].x;
        return coords[a].y < coords[b].y;
    });
    std::vector<int> renum(coords.size());
    space.dof_coords.resize(coords.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        renum[order[i]] = static_cast<int>(i);
        space.dof_coords[i] = coords[order[i]];
    }
    for (int c : sub.active_cells)
        for (int& d : space.cell_dofs[c]) d = renum[d];

    if (bc && bc->on_boundary) {
        const rect& dom = m.domain;
        double tol = 1e-12 * std::max(dom.width(), dom.height());
        for (int d = 0; d < space.num_dofs(); ++d) {
            const point& p = space.dof_coords[d];
            bool on_rect = std::abs(p.x - dom.xmin) < tol || std::abs(p.x - dom.xmax) < tol ||
                           std::abs(p.y - dom.ymin) < tol || std::abs(p.y - dom.ymax) < tol;
            if (on_rect && bc->on_boundary(p)) {
                space.dirichlet_dofs.push_back(d);
                space.dirichlet_values.push_back(bc->data ? bc->data(p) : 0.0);
            }
        }
    }
    return space;
}

std::vector<double> interpolate(const fe_space& space, const std::function<double(point)>& f) {
    std::vector<double> u(space.num_dofs());
    for (int d = 0; d < space.num_dofs(); ++d) u[d] = f(space.dof_coords[d]);
    return u;
}

point_locator::point_locator(const mesh& m) : mesh_(&m) {
    int n = std::max(1, static_cast<int>(std::sqrt(m.num_cells() / 2.0)));
    nx_ = ny_ = n;
    bins_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    const rect& d = m.domain;
    for (int c = 0; c < m.num_cells(); ++c) {
        triangle t = m.cell_triangle(c);
        double x0 = std::min({t[0].x, t[1].x, t[2].x}), x1 = std::max({t[0].x, t[1].x, t[2].x});
        double y0 = std::min({t[0].y, t[1].y, t[2].y}), y1 = std::max({t[0].y, t[1].y, t[2].y});
        int i0 = std::clamp(static_cast<int>((x0 - d.xmin) / d.width() * nx_), 0, nx_ - 1);
        int i1 = std::clamp(static_cast<int>((x1 - d.xmin) / d.width() * nx_), 0, nx_ - 1);
        int j0 = std::clamp(static_cast<int>((y0 - d.ymin) / d.height() * ny_), 0, ny_ - 1);
        int j1 = std::clamp(static_cast<int>((y1 - d.ymin) / d.height() * ny_), 0, ny_ - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                bins_[static_cast<std::size_t>(j) * nx_ + i].push_back(c);
    }
}

point_locator::result point_locator::locate(const point& x) const {
    return locate_impl(x, nullptr);
}

point_locator::result point_locator::locate(const point& x,
                                            const std::vector<char>& cell_filter) const {
    return locate_impl(x, &cell_filter);
}

point_locator::result point_locator::locate_impl(const point& x,
                                                 const std::vector<char>* filter) const {
    const rect& d = mesh_->domain;
    double tol = 1e-12 * std::max(d.width(), d.height());
    if (!d.contains(x, tol)) throw std::invalid_argument("locate_point: point outside domain");
    point q{std::clamp(x.x, d.xmin, d.xmax), std::clamp(x.y, d.ymin, d.ymax)};

    int bi = std::clamp(static_cast<int>((q.x - d.xmin) / d.width() * nx_), 0, nx_ - 1);
    int bj = std::clamp(static_cast<int>((q.y - d.ymin) / d.height() * ny_), 0, ny_ - 1);
    const double bary_tol = 1e-12;

    // search the home bin first, then grow a ring for robustness at bin edges
    for (int ring = 0; ring < std::max(nx_, ny_); ++ring) {
        int best = -1;
        point best_ref;
        for (int j = std::max(0, bj - ring); j <= std::min(ny_ - 1, bj + ring); ++j) {
            for (int i = std::max(0, bi - ring); i <= std::min(nx_ - 1, bi + ring); ++i) {
                if (ring > 0 && std::abs(i - bi) != ring && std::abs(j - bj) != ring) continue;
                for (int c : bins_[static_cast<std::size_t>(j) * nx_ + i]) {
                    if (best >= 0 && c >= best) continue;
                    if (filter && !(*filter)[c]) continue;
                    point ref = mesh_->map_to_reference(c, q);
                    if (ref.x >= -bary_tol && ref.y >= -bary_tol &&
                        ref.x + ref.y <= 1.0 + bary_tol) {
                        best = c;
                        best_ref = ref;
                    }
                }
            }
        }
        if (best >= 0) return {best, best_ref};
    }
    throw std::runtime_error("locate_point: no containing cell found");
}

} // namespace pgfem
