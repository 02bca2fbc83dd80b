#ifndef PGFEM_PROBLEMS_HPP
#define PGFEM_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgfem/cut_geometry.hpp"
#include "pgfem/fe_space.hpp"
#include "pgfem/level_set.hpp"
#include "pgfem/types.hpp"

namespace pgfem {

/// One of the shipped interface test problems. Exact solutions, when present,
/// are global analytic formulas: the restriction to region k solves the PDE
/// there and the pair satisfies both interface conditions.
struct problem_spec {
    std::string name;
    rect domain;
    level_set phi;
    double mu1 = 1.0, mu2 = 1.0;
    std::function<double(point)> f1, f2;
    bool has_exact = false;
    std::function<double(point)> exact_u1, exact_u2;
    std::function<vec2(point)> exact_grad1, exact_grad2;
    std::function<bool(point)> dirichlet;          // predicate on boundary points
    std::function<double(point, int)> dirichlet_data; // field 1 or 2
    std::optional<vec2> velocity;
    bool quasi_uniform_ok = false;
};

/// name in {smooth1d, kink1d, circle, quartic, convection}
problem_spec catalog(const std::string& name);

dirichlet_bc make_bc(const problem_spec& spec, int field);

/// sqrt(int (H(phi) u_h1 + (1 - H(phi)) u_h2 - u)^2) with cut-aware quadrature
/// of order 2p+2 on cut cells.
double l2_error(const fe_space& space1, const std::vector<double>& u1,
                const fe_space& space2, const std::vector<double>& u2,
                const problem_spec& spec, const cut_geometry& geo);

/// rate_i = log2(e_{i-1} / e_i) for factor-2 refinements; h must decrease.
std::vector<double> eoc(const std::vector<std::pair<double, double>>& h_and_error);

} // namespace pgfem

#endif
