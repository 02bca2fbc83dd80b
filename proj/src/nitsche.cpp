#include "pgfem/nitsche.hpp"

#include <cmath>
#include <stdexcept>

#include "pgfem/quadrature.hpp"

namespace pgfem {

namespace {

struct field_ctx {
    const fe_space* space;
    double mu;
    const std::function<double(point)>* f;
    index_t offset;
};

// volume terms mu grad(u).grad(w) [+ (v.grad u) w] + rhs f w over one triangle
// that lies inside the field's physical region
void volume_on_triangle(const field_ctx& fc, int cell, const triangle& tri, const quad_rule& qr,
                        const std::optional<vec2>& velocity, triplet_buffer& buf,
                        std::vector<double>& rhs) {
    const fe_space& sp = *fc.space;
    const mesh& m = sp.parent();
    const std::vector<int>& dofs = sp.cell_dofs[cell];
    const std::size_t nl = dofs.size();
    double det = 2.0 * signed_area(tri);
    static thread_local std::vector<double> vals, elem;
    static thread_local std::vector<vec2> grads;
    elem.assign(nl * nl, 0.0);
    static thread_local std::vector<double> erhs;
    erhs.assign(nl, 0.0);
    for (std::size_t q = 0; q < qr.points.size(); ++q) {
        point x = tri[0] + (tri[1] - tri[0]) * qr.points[q].x + (tri[2] - tri[0]) * qr.points[q].y;
        point ref = m.map_to_reference(cell, x);
        sp.eval_basis(cell, ref, vals, grads);
        double w = qr.weights[q] * det;
        double fx = (*fc.f)(x);
        for (std::size_t i = 0; i < nl; ++i) {
            erhs[i] += w * fx * vals[i];
            for (std::size_t j = 0; j < nl; ++j) {
                double a = fc.mu * grads[i].dot(grads[j]);
                if (velocity) a += (velocity->dot(grads[j])) * vals[i];
                elem[i * nl + j] += w * a;
            }
        }
    }
    for (std::size_t i = 0; i < nl; ++i) {
        rhs[fc.offset + dofs[i]] += erhs[i];
        for (std::size_t j = 0; j < nl; ++j)
            buf.add(fc.offset + dofs[i], fc.offset + dofs[j], elem[i * nl + j]);
    }
}

void append_matrix(const sparse_matrix& s, index_t offset, triplet_buffer& buf) {
    for (index_t i = 0; i < s.rows(); ++i)
        for (index_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
            buf.add(offset + i, offset + s.col_idx()[k], s.values()[k]);
}

} // namespace

std::vector<double> coupled_system::expand(const std::vector<double>& free_values) const {
    std::vector<double> full = dirichlet_full;
    for (std::size_t i = 0; i < dof_of_free.size(); ++i) full[dof_of_free[i]] = free_values[i];
    return full;
}

std::pair<std::vector<double>, std::vector<double>>
coupled_system::solve(const solve_options& opts, solve_stats* stats) const {
    std::vector<double> x = pgfem::solve(matrix, rhs, opts, stats);
    std::vector<double> full = expand(x);
    std::vector<double> u1(full.begin(), full.begin() + n1);
    std::vector<double> u2(full.begin() + n1, full.end());
    return {std::move(u1), std::move(u2)};
}

coupled_system assemble_sharp(const problem_spec& spec, const mesh& m, const cut_geometry& geo,
                              const fe_space& space1, const fe_space& space2,
                              const assembly_options& opts) {
    if (opts.alpha0 <= 0.0) throw std::invalid_argument("assemble_sharp: alpha0 must be positive");
    if (space1.degree != space2.degree)
        throw std::invalid_argument("assemble_sharp: mismatched polynomial degrees");
    const int p = space1.degree;
    const int vol_order = opts.volume_order > 0 ? opts.volume_order : 2 * p;
    const int cut_order = opts.cut_order > 0 ? opts.cut_order : 2 * p;
    const int iface_order = opts.interface_order > 0 ? opts.interface_order : 2 * p + 1;

    const index_t n1 = space1.num_dofs(), n2 = space2.num_dofs();
    const index_t n = n1 + n2;
    triplet_buffer buf(n, n);
    std::vector<double> rhs(n, 0.0);

    const field_ctx f1{&space1, spec.mu1, &spec.f1, 0};
    const field_ctx f2{&space2, spec.mu2, &spec.f2, n1};
    const quad_rule& vol_rule = gauss_triangle(vol_order);
    const quad_rule& cut_rule = gauss_triangle(cut_order);

    // physical volume integrals: whole cells inside the region, clipped
    // sub-triangles on cut cells
    for (const field_ctx& fc : {f1, f2}) {
        cell_class inside = fc.space == &space1 ? cell_class::inside1 : cell_class::inside2;
        for (int c : fc.space->sub->active_cells) {
            cell_class cls = geo.classification(c);
            if (cls == inside) {
                volume_on_triangle(fc, c, m.cell_triangle(c), vol_rule, opts.velocity, buf, rhs);
            } else if (cls == cell_class::cut) {
                const cell_cut& cc = geo.cut(c);
                for (const triangle& t : (inside == cell_class::inside1 ? cc.sub1 : cc.sub2))
                    volume_on_triangle(fc, c, t, cut_rule, opts.velocity, buf, rhs);
            }
        }
    }

    // interface terms on the cut segments
    const quad_rule_1d& seg_rule = gauss_segment(iface_order);
    std::vector<double> v1, v2;
    std::vector<vec2> g1, g2;
    for (int c : geo.cut_cells()) {
        if (space1.cell_dofs[c].empty() || space2.cell_dofs[c].empty())
            throw std::runtime_error("assemble_sharp: cut cell missing from a submesh");
        const cell_cut& cc = geo.cut(c);
        double len = (cc.segment[1] - cc.segment[0]).norm();
        if (len == 0.0) continue;
        const vec2& nrm = cc.normal;
        double mu_avg = cc.kappa1 * spec.mu1 + cc.kappa2 * spec.mu2;
        double alpha = opts.alpha0 * mu_avg * p * p / m.cell_diameter(c);
        const std::vector<int>& d1 = space1.cell_dofs[c];
        const std::vector<int>& d2 = space2.cell_dofs[c];
        for (std::size_t q = 0; q < seg_rule.points.size(); ++q) {
            point x = cc.segment[0] + (cc.segment[1] - cc.segment[0]) * seg_rule.points[q];
            double w = seg_rule.weights[q] * len;
            point ref = m.map_to_reference(c, x);
            space1.eval_basis(c, ref, v1, g1);
            space2.eval_basis(c, ref, v2, g2);
            double k1mu = cc.kappa1 * spec.mu1, k2mu = cc.kappa2 * spec.mu2;
            // -[[u]]{mu grad w} - {mu grad u}[[w]] + alpha [[u]][[w]]
            for (std::size_t i = 0; i < d1.size(); ++i) {
                double fw1 = k1mu * g1[i].dot(nrm); // {mu grad w} share of field 1
                for (std::size_t j = 0; j < d1.size(); ++j)
                    buf.add(d1[i], d1[j],
                            w * (-v1[j] * fw1 - k1mu * g1[j].dot(nrm) * v1[i] +
                                 alpha * v1[i] * v1[j]));
                for (std::size_t j = 0; j < d2.size(); ++j)
                    buf.add(d1[i], n1 + d2[j],
                            w * (v2[j] * fw1 - k2mu * g2[j].dot(nrm) * v1[i] -
                                 alpha * v1[i] * v2[j]));
            }
            for (std::size_t i = 0; i < d2.size(); ++i) {
                double fw2 = k2mu * g2[i].dot(nrm);
                for (std::size_t j = 0; j < d1.size(); ++j)
                    buf.add(n1 + d2[i], d1[j],
                            w * (-v1[j] * fw2 + k1mu * g1[j].dot(nrm) * v2[i] -
                                 alpha * v2[i] * v1[j]));
                for (std::size_t j = 0; j < d2.size(); ++j)
                    buf.add(n1 + d2[i], n1 + d2[j],
                            w * (v2[j] * fw2 + k2mu * g2[j].dot(nrm) * v2[i] +
                                 alpha * v2[i] * v2[j]));
            }
        }
    }

    // projected-gradient stabilization over the full extended submeshes
    if (opts.stabilized) {
        projector_mode mode = opts.pg_mode
                                  ? *opts.pg_mode
                                  : (p == 1 ? projector_mode::lumped_l2
                                            : projector_mode::weighted_nodal_average);
        gradient_projector proj1 = build_projector(space1, mode);
        gradient_projector proj2 = build_projector(space2, mode);
        append_matrix(assemble_pg_matrix(proj1, spec.mu1, opts.beta1), 0, buf);
        append_matrix(assemble_pg_matrix(proj2, spec.mu2, opts.beta2), n1, buf);
    }

    bool symmetric = !opts.velocity && (!opts.stabilized || p == 1);
    return finalize_coupled_system(space1, space2, buf, rhs, symmetric);
}

coupled_system finalize_coupled_system(const fe_space& space1, const fe_space& space2,
                                       const triplet_buffer& buf, const std::vector<double>& rhs,
                                       bool symmetric_claim) {
    const index_t n1 = space1.num_dofs(), n2 = space2.num_dofs();
    const index_t n = n1 + n2;
    coupled_system sys;
    sys.n1 = n1;
    sys.n2 = n2;

    sparse_matrix full = sparse_matrix::compress(buf);
    sys.dirichlet_full.assign(n, 0.0);
    std::vector<char> is_dirichlet(n, 0);
    for (std::size_t i = 0; i < space1.dirichlet_dofs.size(); ++i) {
        is_dirichlet[space1.dirichlet_dofs[i]] = 1;
        sys.dirichlet_full[space1.dirichlet_dofs[i]] = space1.dirichlet_values[i];
    }
    for (std::size_t i = 0; i < space2.dirichlet_dofs.size(); ++i) {
        is_dirichlet[n1 + space2.dirichlet_dofs[i]] = 1;
        sys.dirichlet_full[n1 + space2.dirichlet_dofs[i]] = space2.dirichlet_values[i];
    }
    sys.free_of_dof.assign(n, -1);
    for (index_t d = 0; d < n; ++d) {
        if (!is_dirichlet[d]) {
            sys.free_of_dof[d] = static_cast<index_t>(sys.dof_of_free.size());
            sys.dof_of_free.push_back(d);
        }
    }
    std::vector<double> lifted = full.multiply(sys.dirichlet_full);
    sys.rhs.resize(sys.dof_of_free.size());
    for (std::size_t i = 0; i < sys.dof_of_free.size(); ++i) {
        index_t d = sys.dof_of_free[i];
        sys.rhs[i] = rhs[d] - lifted[d];
    }
    sys.matrix = extract(full, sys.dof_of_free);

    sys.symmetric = symmetric_claim;
    if (sys.symmetric && !sys.matrix.is_symmetric(1e-12))
        throw std::runtime_error("coupled system: symmetry verification failed");
    return sys;
}

coupled_system assemble_h2(const problem_spec& spec, const mesh& m, const cut_geometry& geo,
                           const fe_space& space1, const fe_space& space2,
                           assembly_options opts) {
    opts.stabilized = false;
    opts.delta = delta_spec{delta_kind::zero, 0.0};
    return assemble_sharp(spec, m, geo, space1, space2, opts);
}

} // namespace pgfem
