#ifndef PGFEM_CUT_GEOMETRY_HPP
#define PGFEM_CUT_GEOMETRY_HPP

#include <array>
#include <utility>
#include <vector>

#include "pgfem/level_set.hpp"
#include "pgfem/mesh.hpp"
#include "pgfem/types.hpp"

namespace pgfem {

enum class cell_class : char { inside1, inside2, cut };

/// Decomposition of one cut cell against the linear interpolant of phi.
struct cell_cut {
    std::array<point, 2> segment;   // zero set of the interpolant inside K
    vec2 normal;                    // unit, pointing out of region 1
    double kappa1 = 0.0, kappa2 = 0.0;
    std::vector<triangle> sub1;     // fan triangulation of K cap Omega_1
    std::vector<triangle> sub2;
};

/// Clip a single triangle against the linear interpolant with the given
/// vertex values; the values must be nonzero and of mixed sign.
cell_cut cut_triangle(const triangle& t, const std::array<double, 3>& phi_vertex);

class cut_geometry {
public:
    cut_geometry(const mesh& m, const level_set& phi);

    cell_class classification(int cell) const { return classes_[cell]; }
    bool is_cut(int cell) const { return classes_[cell] == cell_class::cut; }
    const cell_cut& cut(int cell) const;
    const std::vector<int>& cut_cells() const { return cut_cells_; }
    std::pair<double, double> kappa(int cell) const;
    const mesh& parent() const { return *mesh_; }

private:
    const mesh* mesh_;
    std::vector<cell_class> classes_;
    std::vector<int> cut_index_; // per cell, -1 if uncut
    std::vector<int> cut_cells_;
    std::vector<cell_cut> cuts_;
};

/// Builds the per-cell classification and cut decomposition. Vertex values
/// with |phi| < 1e-12 * h_max are replaced by +1e-12 * h_max before
/// classification so that no cut degenerates to a vertex.
inline cut_geometry classify_and_cut(const mesh& m, const level_set& phi) {
    return cut_geometry(m, phi);
}

} // namespace pgfem

#endif
