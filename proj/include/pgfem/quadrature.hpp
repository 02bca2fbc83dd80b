#ifndef PGFEM_QUADRATURE_HPP
#define PGFEM_QUADRATURE_HPP

#include <vector>

#include "pgfem/types.hpp"

namespace pgfem {

/// Quadrature on the reference triangle (0,0)-(1,0)-(0,1); weights sum to 1/2.
struct quad_rule {
    std::vector<point> points;
    std::vector<double> weights;
};

/// Quadrature on [0,1]; weights sum to 1.
struct quad_rule_1d {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Rule with positive weights, exact for polynomials of total degree <= order.
/// Supported orders: 1..10.
const quad_rule& gauss_triangle(int order);

/// Gauss-Legendre on [0,1], exact for polynomials of degree <= order (1..21).
const quad_rule_1d& gauss_segment(int order);

/// Gauss-Legendre nodes/weights on [0,1] for a given point count.
quad_rule_1d gauss_legendre_01(int npoints);

} // namespace pgfem

#endif
