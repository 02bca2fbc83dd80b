#ifndef PGFEM_FE_SPACE_HPP
#define PGFEM_FE_SPACE_HPP

#include <functional>
#include <vector>

#include "pgfem/mesh.hpp"
#include "pgfem/types.hpp"

namespace pgfem {

/// Dirichlet part of the domain boundary: a predicate on boundary points and
/// the prescribed nodal data.
struct dirichlet_bc {
    std::function<bool(point)> on_boundary;
    std::function<double(point)> data;
};

inline int local_dof_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Values and reference gradients of all local Lagrange shape functions.
void eval_shape(int degree, const point& ref, std::vector<double>& values);
void eval_shape_grad(int degree, const point& ref, std::vector<vec2>& ref_grads);

/// Reference coordinates of the local nodes (vertices, edge nodes, interior).
const std::vector<point>& local_node_coords(int degree);

/// Continuous Lagrange space on the active cells of a submesh.
/// Dof numbering is lexicographic by node coordinate, hence deterministic.
class fe_space {
public:
    const submesh* sub = nullptr;
    int degree = 1;
    std::vector<point> dof_coords;
    std::vector<std::vector<int>> cell_dofs; // by parent cell index; empty if inactive
    std::vector<int> dirichlet_dofs;
    std::vector<double> dirichlet_values;

    int num_dofs() const { return static_cast<int>(dof_coords.size()); }
    const mesh& parent() const { return *sub->parent; }

    /// Shape values and physical gradients of the local dofs at a reference point.
    void eval_basis(int cell, const point& ref, std::vector<double>& values,
                    std::vector<vec2>& gradients) const;
};

fe_space build_space(const submesh& sub, int degree, const dirichlet_bc* bc = nullptr);

std::vector<double> interpolate(const fe_space& space, const std::function<double(point)>& f);

/// Background-grid accelerated point location with a lowest-cell-index tie rule.
class point_locator {
public:
    explicit point_locator(const mesh& m);

    struct result {
        int cell;
        point ref;
    };

    result locate(const point& x) const;
    /// Restrict the candidates to cells accepted by the filter.
    result locate(const point& x, const std::vector<char>& cell_filter) const;

private:
    result locate_impl(const point& x, const std::vector<char>* filter) const;
    const mesh* mesh_;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> bins_;
};

} // namespace pgfem

#endif
