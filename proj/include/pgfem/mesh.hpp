#ifndef PGFEM_MESH_HPP
#define PGFEM_MESH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgfem/types.hpp"

namespace pgfem {

class level_set;

/// Sides of the rectangular domain, used as boundary tags.
enum class boundary_side : int { left = 0, right = 1, bottom = 2, top = 3 };

struct mesh_face {
    int v0, v1;          // vertex indices, v0 < v1
    int cell0, cell1;    // cell1 = -1 on the boundary
};

struct boundary_face {
    int cell;
    int local_face;      // face i is opposite local vertex i
    boundary_side tag;
};

/// Conforming triangulation of an axis-aligned rectangle.
/// Immutable after construction.
class mesh {
public:
    std::vector<point> vertices;
    std::vector<std::array<int, 3>> cells; // counter-clockwise vertex triples
    rect domain;
    double spacing = 0.0;                  // square spacing; the h of the tables
    double h_max = 0.0;                    // max cell diameter

    std::vector<std::vector<int>> vertex_to_cells;
    std::vector<mesh_face> faces;
    std::vector<boundary_face> boundary_faces;
    std::vector<std::array<int, 3>> cell_faces;

    int num_cells() const { return static_cast<int>(cells.size()); }
    int num_vertices() const { return static_cast<int>(vertices.size()); }

    triangle cell_triangle(int c) const {
        return {vertices[cells[c][0]], vertices[cells[c][1]], vertices[cells[c][2]]};
    }
    double cell_area(int c) const { return signed_area(cell_triangle(c)); }
    double cell_diameter(int c) const { return diameter(cell_triangle(c)); }

    point map_from_reference(int c, const point& ref) const;
    point map_to_reference(int c, const point& x) const;

    void write_text(std::ostream& os) const; // "nv nc" header, vertices, cells
    void write_text(const std::string& path) const;

    void build_connectivity();
};

/// n x n squares, each split into two triangles; the default diagonal runs
/// from the lower-left to the upper-right corner of the square.
mesh build_uniform_mesh(int n, const rect& domain = {0, 0, 1, 1}, bool flip_diagonal = false);

/// Level 0 has dx = 0.1, dy = 0.02 on the unit square; each level halves both.
mesh build_quasi_uniform_mesh(int level);

/// Active part of a triangulation: cells intersecting a delta-neighborhood of
/// region 1 (phi > 0) or region 2 (phi < 0).
struct submesh {
    const mesh* parent = nullptr;
    int region = 1;
    double delta = 0.0;
    std::vector<int> active_cells;  // ascending
    std::vector<char> is_active;    // by parent cell index
};

submesh select_submesh(const mesh& m, const level_set& phi, int region, double delta);

/// Level-set values at the mesh vertices with the near-zero perturbation
/// applied: |phi| < 1e-12 * h_max is replaced by +1e-12 * h_max. Submesh
/// selection and cut classification share this convention, so a cut cell is
/// always active in both submeshes.
std::vector<double> perturbed_vertex_values(const mesh& m, const level_set& phi,
                                            std::vector<char>* perturbed = nullptr);

} // namespace pgfem

#endif
