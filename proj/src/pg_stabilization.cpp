#include "pgfem/pg_stabilization.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgfem/quadrature.hpp"

namespace pgfem {

gradient_projector build_projector(const fe_space& space, projector_mode mode) {
    if (mode == projector_mode::lumped_l2 && space.degree != 1)
        throw std::invalid_argument(
            "build_projector: the lumped projection is only defined for p = 1");
    gradient_projector proj;
    proj.space = &space;
    proj.mode = mode;

    const mesh& m = space.parent();
    const int n = space.num_dofs();
    const int p = space.degree;
    const quad_rule& qr = gauss_triangle(2 * p);

    triplet_buffer tl(n, n), tbx(n, n), tby(n, n);
    proj.lumped.assign(n, 0.0);
    std::vector<double> vals;
    std::vector<vec2> grads;
    const std::size_t nl = local_dof_count(p);
    std::vector<double> el(nl * nl), ebx(nl * nl), eby(nl * nl);
    for (int c : space.sub->active_cells) {
        const std::vector<int>& dofs = space.cell_dofs[c];
        double det = 2.0 * m.cell_area(c);
        std::fill(el.begin(), el.end(), 0.0);
        std::fill(ebx.begin(), ebx.end(), 0.0);
        std::fill(eby.begin(), eby.end(), 0.0);
        for (std::size_t q = 0; q < qr.points.size(); ++q) {
            double w = qr.weights[q] * det;
            space.eval_basis(c, qr.points[q], vals, grads);
            for (std::size_t i = 0; i < nl; ++i) {
                proj.lumped[dofs[i]] += w * vals[i];
                for (std::size_t j = 0; j < nl; ++j) {
                    el[i * nl + j] += w * grads[i].dot(grads[j]);
                    ebx[i * nl + j] += w * vals[i] * grads[j].x;
                    eby[i * nl + j] += w * vals[i] * grads[j].y;
                }
            }
        }
        for (std::size_t i = 0; i < nl; ++i) {
            for (std::size_t j = 0; j < nl; ++j) {
                tl.add(dofs[i], dofs[j], el[i * nl + j]);
                tbx.add(dofs[i], dofs[j], ebx[i * nl + j]);
                tby.add(dofs[i], dofs[j], eby[i * nl + j]);
            }
        }
    }
    proj.L = sparse_matrix::compress(tl);
    proj.Bx = sparse_matrix::compress(tbx);
    proj.By = sparse_matrix::compress(tby);

    if (mode == projector_mode::lumped_l2) {
        std::vector<double> inv(n);
        for (int i = 0; i < n; ++i) {
            if (proj.lumped[i] <= 0.0)
                throw std::runtime_error("build_projector: node with empty support");
            inv[i] = 1.0 / proj.lumped[i];
        }
        proj.Gx = scale_rows(inv, proj.Bx);
        proj.Gy = scale_rows(inv, proj.By);
    } else {
        // |K|-weighted averages of the one-sided gradients at each node
        triplet_buffer tgx(n, n), tgy(n, n);
        std::vector<double> weight(n, 0.0);
        const std::vector<point>& nodes = local_node_coords(p);
        for (int c : space.sub->active_cells) {
            const std::vector<int>& dofs = space.cell_dofs[c];
            double area = m.cell_area(c);
            for (std::size_t l = 0; l < dofs.size(); ++l) {
                space.eval_basis(c, nodes[l], vals, grads);
                weight[dofs[l]] += area;
                for (std::size_t j = 0; j < dofs.size(); ++j) {
                    tgx.add(dofs[l], dofs[j], area * grads[j].x);
                    tgy.add(dofs[l], dofs[j], area * grads[j].y);
                }
            }
        }
        std::vector<double> inv(n);
        for (int i = 0; i < n; ++i) {
            if (weight[i] <= 0.0)
                throw std::runtime_error("build_projector: node with empty support");
            inv[i] = 1.0 / weight[i];
        }
        proj.Gx = scale_rows(inv, sparse_matrix::compress(tgx));
        proj.Gy = scale_rows(inv, sparse_matrix::compress(tgy));
    }
    return proj;
}

void project_gradient(const gradient_projector& proj, const std::vector<double>& u,
                      std::vector<double>& gx, std::vector<double>& gy) {
    if (static_cast<int>(u.size()) != proj.space->num_dofs())
        throw std::invalid_argument("project_gradient: vector size mismatch");
    gx = proj.Gx.multiply(u);
    gy = proj.Gy.multiply(u);
}

sparse_matrix assemble_pg_matrix(const gradient_projector& proj, double mu, double beta) {
    if (beta < 1.0) throw std::invalid_argument("assemble_pg_matrix: beta must be >= 1");
    sparse_matrix btg = add(1.0, multiply(proj.Bx.transposed(), proj.Gx), 1.0,
                            multiply(proj.By.transposed(), proj.Gy));
    sparse_matrix s = add(1.0, proj.L, -1.0, btg);
    s.scale(mu * beta);
    return s;
}

double beta_h(double velocity_norm, double h, double mu) {
    if (mu <= 0.0) throw std::invalid_argument("beta_h: mu must be positive");
    return std::max(1.0, velocity_norm * h / (2.0 * mu));
}

} // namespace pgfem
