#ifndef PGFEM_PG_STABILIZATION_HPP
#define PGFEM_PG_STABILIZATION_HPP

#include <vector>

#include "pgfem/fe_space.hpp"
#include "pgfem/sparse.hpp"

namespace pgfem {

enum class projector_mode {
    lumped_l2,               // g_j = int(phi_j grad u) / int(phi_j); p = 1
    weighted_nodal_average   // |K|-weighted one-sided limits at the node; any p
};

/// Nodal gradient projection. Gx, Gy map scalar dof vectors to the nodal
/// values of the projected gradient components. For p = 1 the lumped mode
/// satisfies G = Mtilde^{-1} B componentwise.
struct gradient_projector {
    const fe_space* space = nullptr;
    projector_mode mode = projector_mode::lumped_l2;
    sparse_matrix Gx, Gy;
    sparse_matrix Bx, By;        // (phi_i, d_c phi_j) pairing on the submesh
    sparse_matrix L;             // stiffness on the whole submesh
    std::vector<double> lumped;  // int(phi_i); the lumped mass of the basis
};

gradient_projector build_projector(const fe_space& space, projector_mode mode);

void project_gradient(const gradient_projector& proj, const std::vector<double>& u,
                      std::vector<double>& gx, std::vector<double>& gy);

/// Stabilization matrix beta * mu * (L - B^T G); symmetric PSD for p = 1 in
/// lumped mode, where it equals beta * mu * (L - B^T Mtilde^{-1} B).
sparse_matrix assemble_pg_matrix(const gradient_projector& proj, double mu, double beta = 1.0);

/// Convection scaling max(1, |v| h / (2 mu)).
double beta_h(double velocity_norm, double h, double mu);

} // namespace pgfem

#endif
