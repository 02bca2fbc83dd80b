#include "pgfem/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgfem {

namespace {

double point_segment_distance(const point& p, const point& a, const point& b) {
    vec2 ab = b - a;
    double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + t * ab)).norm();
}

bool triangle_contains(const triangle& t, const point& p) {
    double s = signed_area(t) >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) {
        const point& a = t[i];
        const point& b = t[(i + 1) % 3];
        double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (s * cross < 0.0) return false;
    }
    return true;
}

} // namespace

level_set level_set::line(double a, double b, double c) {
    double n = std::hypot(a, b);
    if (n == 0.0) throw std::invalid_argument("level_set::line: zero normal");
    level_set ls;
    ls.kind_ = kind::line;
    ls.a_ = a / n;
    ls.b_ = b / n;
    ls.c_ = c / n;
    double la = ls.a_, lb = ls.b_, lc = ls.c_;
    ls.value_ = [la, lb, lc](point p) { return la * p.x + lb * p.y - lc; };
    ls.gradient_ = [la, lb](point) { return vec2{la, lb}; };
    return ls;
}

level_set level_set::circle(const point& center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("level_set::circle: nonpositive radius");
    level_set ls;
    ls.kind_ = kind::circle;
    ls.center_ = center;
    ls.radius_ = radius;
    point c = center;
    double r = radius;
    ls.value_ = [c, r](point p) { return r - (p - c).norm(); };
    ls.gradient_ = [c](point p) {
        double d = (p - c).norm();
        if (d == 0.0) throw std::invalid_argument("level_set: gradient undefined at circle center");
        return (c - p) / d;
    };
    return ls;
}

level_set level_set::custom(std::function<double(point)> value,
                            std::function<vec2(point)> gradient,
                            std::function<point(point)> closest) {
    level_set ls;
    ls.kind_ = kind::custom;
    ls.value_ = std::move(value);
    ls.gradient_ = std::move(gradient);
    ls.closest_ = std::move(closest);
    return ls;
}

vec2 level_set::unit_normal(const point& p) const {
    vec2 g = gradient_(p);
    double n = g.norm();
    if (n == 0.0) throw std::runtime_error("level_set::unit_normal: vanishing gradient");
    return vec2{-g.x / n, -g.y / n};
}

point level_set::closest_point(const point& p) const {
    switch (kind_) {
    case kind::line: {
        double phi = value_(p);
        return {p.x - phi * a_, p.y - phi * b_};
    }
    case kind::circle: {
        vec2 d = p - center_;
        double n = d.norm();
        if (n == 0.0)
            throw std::invalid_argument("level_set::closest_point: circle center has no projection");
        return center_ + d * (radius_ / n);
    }
    case kind::custom:
        if (closest_) return closest_(p);
        throw std::runtime_error("level_set::closest_point: not available for this level set");
    }
    throw std::logic_error("level_set: bad kind");
}

double level_set::min_over(const triangle& t) const {
    switch (kind_) {
    case kind::line:
        return std::min({value_(t[0]), value_(t[1]), value_(t[2])});
    case kind::circle: {
        // phi = r - dist; the farthest point of a triangle is a vertex
        double dmax = std::max({(t[0] - center_).norm(), (t[1] - center_).norm(),
                                (t[2] - center_).norm()});
        return radius_ - dmax;
    }
    case kind::custom:
        break;
    }
    double m = value_(t[0]);
    point samples[] = {t[1], t[2],
                       (t[0] + t[1]) / 2.0, (t[1] + t[2]) / 2.0, (t[2] + t[0]) / 2.0,
                       (t[0] + t[1] + t[2]) / 3.0};
    for (const point& p : samples) m = std::min(m, value_(p));
    return m;
}

double level_set::max_over(const triangle& t) const {
    switch (kind_) {
    case kind::line:
        return std::max({value_(t[0]), value_(t[1]), value_(t[2])});
    case kind::circle: {
        double dmin;
        if (triangle_contains(t, center_))
            dmin = 0.0;
        else
            dmin = std::min({point_segment_distance(center_, t[0], t[1]),
                             point_segment_distance(center_, t[1], t[2]),
                             point_segment_distance(center_, t[2], t[0])});
        return radius_ - dmin;
    }
    case kind::custom:
        break;
    }
    double m = value_(t[0]);
    point samples[] = {t[1], t[2],
                       (t[0] + t[1]) / 2.0, (t[1] + t[2]) / 2.0, (t[2] + t[0]) / 2.0,
                       (t[0] + t[1] + t[2]) / 3.0};
    for (const point& p : samples) m = std::max(m, value_(p));
    return m;
}

double delta_eps(double phi_value, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("delta_eps: eps must be positive");
    double t = phi_value / eps;
    return (1.0 / eps) * std::sqrt(M_PI / 9.0) * std::exp(-M_PI * M_PI * t * t / 9.0);
}

double heaviside_eps(double phi_value, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("heaviside_eps: eps must be positive");
    return 0.5 * (1.0 + std::erf(M_PI * phi_value / (3.0 * eps)));
}

} // namespace pgfem
