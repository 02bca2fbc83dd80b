#ifndef PGFEM_LEVEL_SET_HPP
#define PGFEM_LEVEL_SET_HPP

#include <functional>
#include <optional>

#include "pgfem/types.hpp"

namespace pgfem {

/// Signed implicit description of the interface: phi > 0 in region 1,
/// phi < 0 in region 2. The unit normal -grad(phi)/|grad(phi)| points out of
/// region 1. Line and circle level sets are signed distances.
class level_set {
public:
    /// phi(x,y) = a*x + b*y - c with a^2 + b^2 = 1; interface {a*x + b*y = c}.
    static level_set line(double a, double b, double c);
    static level_set circle(const point& center, double radius);
    static level_set custom(std::function<double(point)> value,
                            std::function<vec2(point)> gradient,
                            std::function<point(point)> closest = {});

    double value(const point& p) const { return value_(p); }
    vec2 gradient(const point& p) const { return gradient_(p); }
    vec2 unit_normal(const point& p) const;

    /// Foot point on {phi = 0}. For a circle the center has no projection.
    point closest_point(const point& p) const;

    /// Exact range of phi over a triangle for line/circle; for custom level
    /// sets the range is estimated from vertex, edge-midpoint and barycenter
    /// samples.
    double min_over(const triangle& t) const;
    double max_over(const triangle& t) const;

private:
    enum class kind { line, circle, custom };
    kind kind_ = kind::custom;
    double a_ = 0, b_ = 0, c_ = 0;       // line
    point center_;                        // circle
    double radius_ = 0;
    std::function<double(point)> value_;
    std::function<vec2(point)> gradient_;
    std::function<point(point)> closest_;
};

/// Gaussian regularized delta: (1/eps) sqrt(pi/9) exp(-pi^2 t^2 / (9 eps^2)).
double delta_eps(double phi_value, double eps);

/// Smoothed Heaviside (1 + erf(pi t / (3 eps))) / 2; its derivative is delta_eps.
double heaviside_eps(double phi_value, double eps);

} // namespace pgfem

#endif
