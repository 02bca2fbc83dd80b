#ifndef PGFEM_NITSCHE_HPP
#define PGFEM_NITSCHE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "pgfem/cut_geometry.hpp"
#include "pgfem/fe_space.hpp"
#include "pgfem/pg_stabilization.hpp"
#include "pgfem/problems.hpp"
#include "pgfem/sparse.hpp"

namespace pgfem {

enum class delta_kind { zero, multiple_of_h, domain_diameter };

/// Extension width in units of the mesh spacing, or the whole domain.
struct delta_spec {
    delta_kind kind = delta_kind::zero;
    double factor = 6.0;

    double physical(const mesh& m) const {
        switch (kind) {
        case delta_kind::zero: return 0.0;
        case delta_kind::multiple_of_h: return factor * m.spacing;
        case delta_kind::domain_diameter: return m.domain.diam();
        }
        return 0.0;
    }
};

struct assembly_options {
    double alpha0 = 20.0;           // penalty scale; alpha = alpha0 (k1 mu1 + k2 mu2) p^2 / h_K
    delta_spec delta;
    bool stabilized = true;
    std::optional<projector_mode> pg_mode; // default: lumped for p=1, nodal average otherwise
    double beta1 = 1.0, beta2 = 1.0;       // per-field stabilization multipliers
    std::optional<vec2> velocity;
    int volume_order = 0, cut_order = 0, interface_order = 0; // 0 = derive from p
};

/// Assembled two-field linear system after symmetric Dirichlet elimination
/// with lifting. Field 1 occupies dofs [0, n1), field 2 [n1, n1 + n2).
struct coupled_system {
    sparse_matrix matrix;           // free dofs only
    std::vector<double> rhs;
    int n1 = 0, n2 = 0;
    std::vector<index_t> free_of_dof; // full dof -> free index, -1 if eliminated
    std::vector<index_t> dof_of_free;
    std::vector<double> dirichlet_full; // prescribed values on eliminated dofs
    bool symmetric = false;

    int total_dofs() const { return n1 + n2; }

    /// Solution split into the two fields' full coefficient vectors.
    std::pair<std::vector<double>, std::vector<double>>
    solve(const solve_options& opts, solve_stats* stats = nullptr) const;

    /// Embed full-ordering dof values (Dirichlet on eliminated dofs).
    std::vector<double> expand(const std::vector<double>& free_values) const;
};

coupled_system assemble_sharp(const problem_spec& spec, const mesh& m, const cut_geometry& geo,
                              const fe_space& space1, const fe_space& space2,
                              const assembly_options& opts);

/// Compress, eliminate Dirichlet dofs symmetrically with lifting, and verify
/// the symmetry claim. Shared by the sharp and diffuse assemblers.
coupled_system finalize_coupled_system(const fe_space& space1, const fe_space& space2,
                                       const triplet_buffer& buf, const std::vector<double>& rhs,
                                       bool symmetric_claim);

/// The unstabilized baseline: assemble_sharp with stabilized = false, delta = 0.
coupled_system assemble_h2(const problem_spec& spec, const mesh& m, const cut_geometry& geo,
                           const fe_space& space1, const fe_space& space2,
                           assembly_options opts);

} // namespace pgfem

#endif
