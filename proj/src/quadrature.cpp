#include "pgfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "pgfem/sparse.hpp"

namespace pgfem {

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
// Both Gauss-Legendre (0,0) and Gauss-Jacobi (1,0) come out of this.
void gauss_jacobi(int n, double alpha, double beta, std::vector<double>& x,
                  std::vector<double>& w) {
    std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
    double ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        double den = (2 * k + ab) * (2 * k + ab + 2);
        diag[k] = den != 0.0 ? (beta * beta - alpha * alpha) / den : (beta - alpha) / (ab + 2);
        if (k >= 1) {
            double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
            double d2 = (2 * k + ab) * (2 * k + ab);
            double b2 = num / (d2 * (2 * k + ab + 1) * (2 * k + ab - 1));
            off[k - 1] = std::sqrt(b2);
        }
    }
    std::vector<double> evals, first;
    symmetric_tridiagonal_eigen(diag, off, evals, first);
    // mu0 = 2^(ab+1) * Gamma(a+1)Gamma(b+1)/Gamma(ab+2)
    double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                 std::tgamma(ab + 2.0);
    x = evals;
    w.resize(n);
    for (int i = 0; i < n; ++i) w[i] = mu0 * first[i] * first[i];
}

} // namespace

quad_rule_1d gauss_legendre_01(int npoints) {
    std::vector<double> x, w;
    gauss_jacobi(npoints, 0.0, 0.0, x, w);
    quad_rule_1d r;
    r.points.resize(npoints);
    r.weights.resize(npoints);
    for (int i = 0; i < npoints; ++i) {
        r.points[i] = 0.5 * (x[i] + 1.0);
        r.weights[i] = 0.5 * w[i];
    }
    return r;
}

const quad_rule_1d& gauss_segment(int order) {
    if (order < 1 || order > 21) throw std::invalid_argument("gauss_segment: unsupported order");
    static const std::vector<quad_rule_1d> cache = [] {
        std::vector<quad_rule_1d> c(22);
        for (int o = 1; o <= 21; ++o) c[o] = gauss_legendre_01((o + 2) / 2);
        return c;
    }();
    return cache[order];
}

const quad_rule& gauss_triangle(int order) {
    if (order < 1 || order > 10) throw std::invalid_argument("gauss_triangle: unsupported order");
    // Conical product rules: Gauss-Jacobi(1,0) in x absorbs the (1-x) factor of
    // int_T f = int_0^1 (1-x) int_0^1 f(x, t(1-x)) dt dx; Gauss-Legendre in t.
    static const std::vector<quad_rule> cache = [] {
        std::vector<quad_rule> c(11);
        for (int o = 1; o <= 10; ++o) {
            quad_rule& r = c[o];
            int n = (o + 2) / 2;
            std::vector<double> xj, wj;
            gauss_jacobi(n, 1.0, 0.0, xj, wj);
            quad_rule_1d gl = gauss_legendre_01(n);
            for (int i = 0; i < n; ++i) {
                double xi = 0.5 * (xj[i] + 1.0);
                double wi = 0.25 * wj[i];
                for (int j = 0; j < n; ++j) {
                    r.points.push_back({xi, gl.points[j] * (1.0 - xi)});
                    r.weights.push_back(wi * gl.weights[j]);
                }
            }
        }
        return c;
    }();
    return cache[order];
}

} // namespace pgfem
