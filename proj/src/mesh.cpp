#include "pgfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "pgfem/level_set.hpp"

namespace pgfem {

point mesh::map_from_reference(int c, const point& ref) const {
    triangle t = cell_triangle(c);
    return t[0] + (t[1] - t[0]) * ref.x + (t[2] - t[0]) * ref.y;
}

point mesh::map_to_reference(int c, const point& x) const {
    triangle t = cell_triangle(c);
    vec2 e1 = t[1] - t[0], e2 = t[2] - t[0], d = x - t[0];
    double det = e1.x * e2.y - e1.y * e2.x;
    return {(e2.y * d.x - e2.x * d.y) / det, (-e1.y * d.x + e1.x * d.y) / det};
}

void mesh::build_connectivity() {
    vertex_to_cells.assign(vertices.size(), {});
    for (int c = 0; c < num_cells(); ++c)
        for (int v : cells[c]) vertex_to_cells[v].push_back(c);

    // face i of a cell is opposite local vertex i
    std::map<std::pair<int, int>, int> face_of;
    faces.clear();
    cell_faces.assign(cells.size(), {-1, -1, -1});
    for (int c = 0; c < num_cells(); ++c) {
        for (int i = 0; i < 3; ++i) {
            int a = cells[c][(i + 1) % 3];
            int b = cells[c][(i + 2) % 3];
            auto key = std::minmax(a, b);
            auto it = face_of.find(key);
            if (it == face_of.end()) {
                face_of.emplace(key, static_cast<int>(faces.size()));
                cell_faces[c][i] = static_cast<int>(faces.size());
                faces.push_back({key.first, key.second, c, -1});
            } else {
                mesh_face& f = faces[it->second];
                if (f.cell1 != -1) throw std::runtime_error("mesh: face shared by >2 cells");
                f.cell1 = c;
                cell_faces[c][i] = it->second;
            }
        }
    }

    boundary_faces.clear();
    double tol = 1e-12 * std::max(domain.width(), domain.height());
    for (int c = 0; c < num_cells(); ++c) {
        for (int i = 0; i < 3; ++i) {
            const mesh_face& f = faces[cell_faces[c][i]];
            if (f.cell1 != -1 || f.cell0 != c) continue;
            point mid = (vertices[f.v0] + vertices[f.v1]) / 2.0;
            boundary_side tag;
            if (std::abs(mid.x - domain.xmin) < tol) tag = boundary_side::left;
            else if (std::abs(mid.x - domain.xmax) < tol) tag = boundary_side::right;
            else if (std::abs(mid.y - domain.ymin) < tol) tag = boundary_side::bottom;
            else if (std::abs(mid.y - domain.ymax) < tol) tag = boundary_side::top;
            else throw std::runtime_error("mesh: boundary face not on the rectangle");
            boundary_faces.push_back({c, i, tag});
        }
    }
}

namespace {

mesh build_grid(int nx, int ny, const rect& domain, bool flip_diagonal) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("mesh: cells-per-side must be positive");
    if (domain.width() <= 0.0 || domain.height() <= 0.0)
        throw std::invalid_argument("mesh: degenerate rectangle");

    mesh m;
    m.domain = domain;
    double dx = domain.width() / nx;
    double dy = domain.height() / ny;
    m.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            m.vertices.push_back({i == nx ? domain.xmax : domain.xmin + i * dx,
                                  j == ny ? domain.ymax : domain.ymin + j * dy});
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.cells.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            if (!flip_diagonal) {
                m.cells.push_back({v00, v10, v11});
                m.cells.push_back({v00, v11, v01});
            } else {
                m.cells.push_back({v00, v10, v01});
                m.cells.push_back({v10, v11, v01});
            }
        }
    }
    m.h_max = std::hypot(dx, dy);
    m.build_connectivity();
    return m;
}

} // namespace

mesh build_uniform_mesh(int n, const rect& domain, bool flip_diagonal) {
    if (n < 1) throw std::invalid_argument("build_uniform_mesh: n must be >= 1");
    if (std::abs(domain.width() - domain.height()) > 1e-12 * domain.width())
        throw std::invalid_argument("build_uniform_mesh: domain must be square");
    mesh m = build_grid(n, n, domain, flip_diagonal);
    m.spacing = domain.width() / n;
    return m;
}

mesh build_quasi_uniform_mesh(int level) {
    if (level < 0) throw std::invalid_argument("build_quasi_uniform_mesh: level must be >= 0");
    int nx = 10 << level;
    int ny = 50 << level;
    mesh m = build_grid(nx, ny, rect{0, 0, 1, 1}, false);
    m.spacing = 1.0 / nx;
    return m;
}

void mesh::write_text(std::ostream& os) const {
    os << num_vertices() << " " << num_cells() << "\n";
    os.precision(17);
    for (const point& v : vertices) os << v.x << " " << v.y << "\n";
    for (const auto& c : cells) os << c[0] << " " << c[1] << " " << c[2] << "\n";
}

void mesh::write_text(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_text(os);
}

std::vector<double> perturbed_vertex_values(const mesh& m, const level_set& phi,
                                            std::vector<char>* perturbed) {
    const double tol = 1e-12 * m.h_max;
    std::vector<double> values(m.num_vertices());
    if (perturbed) perturbed->assign(m.num_vertices(), 0);
    for (int i = 0; i < m.num_vertices(); ++i) {
        double v = phi.value(m.vertices[i]);
        if (std::abs(v) < tol) {
            v = tol;
            if (perturbed) (*perturbed)[i] = 1;
        }
        values[i] = v;
    }
    return values;
}

submesh select_submesh(const mesh& m, const level_set& phi, int region, double delta) {
    if (region != 1 && region != 2) throw std::invalid_argument("select_submesh: region must be 1 or 2");
    if (delta < 0.0) throw std::invalid_argument("select_submesh: delta must be >= 0");
    submesh s;
    s.parent = &m;
    s.region = region;
    s.delta = delta;
    s.is_active.assign(m.num_cells(), 0);
    bool everything = delta >= m.domain.diam();
    std::vector<double> pv;
    if (!everything) pv = perturbed_vertex_values(m, phi);
    for (int c = 0; c < m.num_cells(); ++c) {
        bool active;
        if (everything) {
            active = true;
        } else {
            triangle t = m.cell_triangle(c);
            const auto& cv = m.cells[c];
            if (region == 1) {
                // K intersects the delta-neighborhood of region 1 iff phi
                // reaches above -delta somewhere in K; max_over is exact for
                // the line and circle level sets
                double reach = std::max({phi.max_over(t), pv[cv[0]], pv[cv[1]], pv[cv[2]]});
                active = reach >= -delta;
            } else {
                // phi is linear or concave for the shipped level sets, so its
                // minimum sits at a vertex; midpoints and barycenter guard the
                // custom case
                double low = std::min({pv[cv[0]], pv[cv[1]], pv[cv[2]],
                                       phi.value((t[0] + t[1]) / 2.0),
                                       phi.value((t[1] + t[2]) / 2.0),
                                       phi.value((t[2] + t[0]) / 2.0),
                                       phi.value((t[0] + t[1] + t[2]) / 3.0)});
                active = low <= delta;
            }
        }
        if (active) {
            s.is_active[c] = 1;
            s.active_cells.push_back(c);
        }
    }
    return s;
}

} // namespace pgfem
