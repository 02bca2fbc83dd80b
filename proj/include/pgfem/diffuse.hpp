#ifndef PGFEM_DIFFUSE_HPP
#define PGFEM_DIFFUSE_HPP

#include <optional>
#include <utility>

#include "pgfem/nitsche.hpp"

namespace pgfem {

/// Diffuse-interface options. Interface and cut-cell integrals are replaced
/// by volume quadrature against delta_eps(phi)|grad phi| with closest-point
/// extended integrands.
struct diffuse_options {
    double eps_factor = 1.0;         // eps = eps_factor * mesh spacing
    double eps_absolute = 0.0;       // > 0 overrides the factor rule
    double band_factor = 4.0;        // integrate where min|phi| <= band_factor * eps
    int band_order = 6;              // quadrature order in the band and on sign-change cells
    double alpha0 = 20.0;
    delta_spec delta{delta_kind::multiple_of_h, 6.0};
    std::optional<projector_mode> pg_mode;
    double beta1 = 1.0, beta2 = 1.0;
    std::optional<vec2> velocity;
    bool smoothed_stiffness_heaviside = false; // H_eps instead of sharp H in the factors
    bool omit_band_terms = false;              // debugging aid for consistency probes

    double eps(const mesh& m) const {
        if (eps_absolute > 0.0) return eps_absolute;
        if (eps_factor <= 0.0 || band_factor < 3.0)
            throw std::invalid_argument("diffuse_options: eps > 0 and band_factor >= 3 required");
        return eps_factor * m.spacing;
    }
};

coupled_system assemble_diffuse(const problem_spec& spec, const mesh& m, const cut_geometry& geo,
                                const fe_space& space1, const fe_space& space2,
                                const level_set& phi, const diffuse_options& opts);

/// kappa of the cut cell containing x_gamma; (1/2, 1/2) when that cell is
/// uncut (points snapped onto cell boundaries).
std::pair<double, double> kappa_at_closest_point(const cut_geometry& geo, int cell_containing);
std::pair<double, double> kappa_at_closest_point(const cut_geometry& geo,
                                                 const point_locator& locator,
                                                 const point& x_gamma);

} // namespace pgfem

#endif
