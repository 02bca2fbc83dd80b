#ifndef PGFEM_TYPES_HPP
#define PGFEM_TYPES_HPP

#include <array>
#include <cmath>

namespace pgfem {

struct vec2 {
    double x = 0.0;
    double y = 0.0;

    vec2() = default;
    vec2(double x_, double y_) : x(x_), y(y_) {}

    vec2 operator+(const vec2& o) const { return {x + o.x, y + o.y}; }
    vec2 operator-(const vec2& o) const { return {x - o.x, y - o.y}; }
    vec2 operator*(double s) const { return {x * s, y * s}; }
    vec2 operator/(double s) const { return {x / s, y / s}; }
    vec2& operator+=(const vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline vec2 operator*(double s, const vec2& v) { return v * s; }

using point = vec2;
using triangle = std::array<point, 3>;

// twice the signed area is the cross product of the edge vectors
inline double signed_area(const triangle& t) {
    return 0.5 * ((t[1].x - t[0].x) * (t[2].y - t[0].y) -
                  (t[2].x - t[0].x) * (t[1].y - t[0].y));
}

inline double diameter(const triangle& t) {
    double d01 = (t[1] - t[0]).norm();
    double d12 = (t[2] - t[1]).norm();
    double d20 = (t[0] - t[2]).norm();
    return std::max(d01, std::max(d12, d20));
}

struct rect {
    double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    double diam() const { return std::hypot(width(), height()); }
    bool contains(const point& p, double tol = 0.0) const {
        return p.x >= xmin - tol && p.x <= xmax + tol &&
               p.y >= ymin - tol && p.y <= ymax + tol;
    }
};

} // namespace pgfem

#endif
