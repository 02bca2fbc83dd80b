#include "pgfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace pgfem {

void triplet_buffer::add(index_t row, index_t col, double value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("triplet_buffer::add: index out of shape");
    entries_.push_back({row, col, value});
}

sparse_matrix::sparse_matrix(index_t rows, index_t cols) : rows_(rows), cols_(cols) {
    row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
}

sparse_matrix sparse_matrix::compress(const triplet_buffer& buf) {
    // Sorting by (row, col, value) makes the summation order independent of
    // the insertion order, so compress is permutation-invariant bit for bit.
    std::vector<triplet> t = buf.entries();
    std::sort(t.begin(), t.end(), [](const triplet& a, const triplet& b) {
        if (a.row != b.row) return a.row < b.row;
        if (a.col != b.col) return a.col < b.col;
        return a.value < b.value;
    });

    sparse_matrix m(buf.rows(), buf.cols());
    m.col_idx_.reserve(t.size());
    m.vals_.reserve(t.size());
    std::size_t i = 0;
    for (index_t r = 0; r < buf.rows(); ++r) {
        while (i < t.size() && t[i].row == r) {
            index_t c = t[i].col;
            double v = 0.0;
            while (i < t.size() && t[i].row == r && t[i].col == c) {
                v += t[i].value;
                ++i;
            }
            m.col_idx_.push_back(c);
            m.vals_.push_back(v);
        }
        m.row_ptr_[static_cast<std::size_t>(r) + 1] = static_cast<index_t>(m.col_idx_.size());
    }
    return m;
}

double sparse_matrix::operator()(index_t i, index_t j) const {
    auto first = col_idx_.begin() + row_ptr_[i];
    auto last = col_idx_.begin() + row_ptr_[i + 1];
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> sparse_matrix::multiply(const std::vector<double>& x) const {
    if (static_cast<index_t>(x.size()) != cols_)
        throw std::invalid_argument("sparse_matrix::multiply: dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (index_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            s += vals_[k] * x[col_idx_[k]];
        y[i] = s;
    }
    return y;
}

sparse_matrix sparse_matrix::transposed() const {
    sparse_matrix t(cols_, rows_);
    std::vector<index_t> count(cols_, 0);
    for (index_t c : col_idx_) ++count[c];
    t.row_ptr_.resize(static_cast<std::size_t>(cols_) + 1);
    t.row_ptr_[0] = 0;
    for (index_t i = 0; i < cols_; ++i) t.row_ptr_[i + 1] = t.row_ptr_[i] + count[i];
    t.col_idx_.resize(nnz());
    t.vals_.resize(nnz());
    std::vector<index_t> next(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
    for (index_t i = 0; i < rows_; ++i) {
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            index_t pos = next[col_idx_[k]]++;
            t.col_idx_[pos] = i;
            t.vals_[pos] = vals_[k];
        }
    }
    return t;
}

void sparse_matrix::scale(double s) {
    for (double& v : vals_) v *= s;
}

double sparse_matrix::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::abs(v));
    return m;
}

double sparse_matrix::symmetry_defect() const {
    double d = 0.0;
    for (index_t i = 0; i < rows_; ++i)
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            d = std::max(d, std::abs(vals_[k] - (*this)(col_idx_[k], i)));
    return d;
}

bool sparse_matrix::is_symmetric(double rel_tol) const {
    if (rows_ != cols_) return false;
    return symmetry_defect() <= rel_tol * std::max(max_abs(), 1e-300);
}

std::vector<double> sparse_matrix::diagonal() const {
    std::vector<double> d(rows_, 0.0);
    for (index_t i = 0; i < rows_; ++i) d[i] = (*this)(i, i);
    return d;
}

std::vector<double> sparse_matrix::lumped_row_sums() const {
    if (rows_ != cols_) throw std::invalid_argument("lumped_row_sums: matrix not square");
    std::vector<double> d(rows_, 0.0);
    for (index_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k];
        if (s <= 0.0) throw std::runtime_error("lumped_row_sums: nonpositive row sum");
        d[i] = s;
    }
    return d;
}

void sparse_matrix::write_matrix_market(std::ostream& os) const {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << rows_ << " " << cols_ << " " << nnz() << "\n";
    os.precision(17);
    for (index_t i = 0; i < rows_; ++i)
        for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            os << i + 1 << " " << col_idx_[k] + 1 << " " << vals_[k] << "\n";
}

void sparse_matrix::write_matrix_market(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_matrix_market(os);
}

sparse_matrix multiply(const sparse_matrix& a, const sparse_matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("multiply: dimension mismatch");
    sparse_matrix c(a.rows_, b.cols_);
    std::vector<double> work(b.cols_, 0.0);
    std::vector<index_t> marker(b.cols_, -1);
    std::vector<index_t> row_cols;
    for (index_t i = 0; i < a.rows_; ++i) {
        row_cols.clear();
        for (index_t ka = a.row_ptr_[i]; ka < a.row_ptr_[i + 1]; ++ka) {
            index_t j = a.col_idx_[ka];
            double av = a.vals_[ka];
            for (index_t kb = b.row_ptr_[j]; kb < b.row_ptr_[j + 1]; ++kb) {
                index_t col = b.col_idx_[kb];
                if (marker[col] != i) {
                    marker[col] = i;
                    work[col] = 0.0;
                    row_cols.push_back(col);
                }
                work[col] += av * b.vals_[kb];
            }
        }
        std::sort(row_cols.begin(), row_cols.end());
        for (index_t col : row_cols) {
            c.col_idx_.push_back(col);
            c.vals_.push_back(work[col]);
        }
        c.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

sparse_matrix add(double alpha, const sparse_matrix& a, double beta, const sparse_matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("add: dimension mismatch");
    sparse_matrix c(a.rows_, a.cols_);
    for (index_t i = 0; i < a.rows_; ++i) {
        index_t ka = a.row_ptr_[i], ea = a.row_ptr_[i + 1];
        index_t kb = b.row_ptr_[i], eb = b.row_ptr_[i + 1];
        while (ka < ea || kb < eb) {
            index_t ca = ka < ea ? a.col_idx_[ka] : c.cols_;
            index_t cb = kb < eb ? b.col_idx_[kb] : c.cols_;
            if (ca == cb) {
                c.col_idx_.push_back(ca);
                c.vals_.push_back(alpha * a.vals_[ka++] + beta * b.vals_[kb++]);
            } else if (ca < cb) {
                c.col_idx_.push_back(ca);
                c.vals_.push_back(alpha * a.vals_[ka++]);
            } else {
                c.col_idx_.push_back(cb);
                c.vals_.push_back(beta * b.vals_[kb++]);
            }
        }
        c.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

sparse_matrix scale_rows(const std::vector<double>& d, const sparse_matrix& a) {
    if (static_cast<index_t>(d.size()) != a.rows_)
        throw std::invalid_argument("scale_rows: dimension mismatch");
    sparse_matrix c = a;
    for (index_t i = 0; i < a.rows_; ++i)
        for (index_t k = c.row_ptr_[i]; k < c.row_ptr_[i + 1]; ++k) c.vals_[k] *= d[i];
    return c;
}

sparse_matrix extract(const sparse_matrix& a, const std::vector<index_t>& keep) {
    std::vector<index_t> where(a.cols_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) where[keep[i]] = static_cast<index_t>(i);
    sparse_matrix c(static_cast<index_t>(keep.size()), static_cast<index_t>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        index_t r = keep[i];
        for (index_t k = a.row_ptr_[r]; k < a.row_ptr_[r + 1]; ++k) {
            index_t cc = where[a.col_idx_[k]];
            if (cc >= 0) {
                c.col_idx_.push_back(cc);
                c.vals_.push_back(a.vals_[k]);
            }
        }
        c.row_ptr_[i + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

namespace {

std::vector<double> cg_solve(const sparse_matrix& a, const std::vector<double>& b,
                             const solve_options& opts, solve_stats* stats) {
    if (!a.is_symmetric(1e-12))
        throw std::invalid_argument("solve(cg): matrix is not symmetric");
    const std::size_t n = b.size();
    std::size_t max_it = opts.max_iterations ? opts.max_iterations : 10 * n;
    std::vector<double> diag = a.diagonal();
    for (double& d : diag) d = (d > 0.0) ? 1.0 / d : 1.0;

    std::vector<double> x(n, 0.0), r = b, z(n), p(n);
    double bnorm = norm2(b);
    if (bnorm == 0.0) return x;
    for (std::size_t i = 0; i < n; ++i) z[i] = diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    std::size_t it = 0;
    for (; it < max_it; ++it) {
        if (norm2(r) <= opts.rtol * bnorm) break;
        std::vector<double> ap = a.multiply(p);
        double pap = dot(p, ap);
        if (pap <= 0.0) throw std::runtime_error("solve(cg): matrix not positive definite");
        double alpha = rz / pap;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        for (std::size_t i = 0; i < n; ++i) z[i] = diag[i] * r[i];
        double rz_new = dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    std::vector<double> ax = a.multiply(x);
    for (std::size_t i = 0; i < n; ++i) ax[i] -= b[i];
    double res = norm2(ax) / bnorm;
    if (stats) {
        stats->iterations = it;
        stats->relative_residual = res;
    }
    if (res > opts.rtol && it >= max_it)
        throw std::runtime_error("solve(cg): no convergence after max iterations");
    return x;
}

std::vector<double> sparse_lu_solve(const sparse_matrix& a, const std::vector<double>& b,
                                    solve_stats* stats, double rtol) {
    using esp = Eigen::SparseMatrix<double>;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(a.nnz());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            trips.emplace_back(i, a.col_idx()[k], a.values()[k]);
    esp m(a.rows(), a.cols());
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    Eigen::SparseLU<esp> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve(sparse_lu): singular factorization");
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<long>(b.size()));
    Eigen::VectorXd x = lu.solve(rhs);
    std::vector<double> out(x.data(), x.data() + x.size());
    if (stats) {
        std::vector<double> ax = a.multiply(out);
        for (std::size_t i = 0; i < out.size(); ++i) ax[i] -= b[i];
        double bn = norm2(b);
        stats->iterations = 1;
        stats->relative_residual = bn > 0 ? norm2(ax) / bn : 0.0;
    }
    (void)rtol;
    return out;
}

} // namespace

dense_lu::dense_lu(const sparse_matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("dense_lu: matrix not square");
    if (a.rows() > 20000) throw std::invalid_argument("dense_lu: n exceeds 20000");
    n_ = a.rows();
    lu_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (index_t i = 0; i < n_; ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            lu_[static_cast<std::size_t>(i) * n_ + a.col_idx()[k]] = a.values()[k];
    factor();
}

dense_lu::dense_lu(std::vector<double> data, index_t n) : n_(n), lu_(std::move(data)) {
    if (lu_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("dense_lu: bad data size");
    factor();
}

void dense_lu::factor() {
    piv_.resize(n_);
    for (index_t k = 0; k < n_; ++k) {
        index_t p = k;
        double best = std::abs(lu_[static_cast<std::size_t>(k) * n_ + k]);
        for (index_t i = k + 1; i < n_; ++i) {
            double v = std::abs(lu_[static_cast<std::size_t>(i) * n_ + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw std::runtime_error("dense_lu: singular pivot");
        piv_[k] = p;
        if (p != k)
            std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k) * n_,
                             lu_.begin() + static_cast<std::ptrdiff_t>(k + 1) * n_,
                             lu_.begin() + static_cast<std::ptrdiff_t>(p) * n_);
        double pivot = lu_[static_cast<std::size_t>(k) * n_ + k];
        for (index_t i = k + 1; i < n_; ++i) {
            double m = lu_[static_cast<std::size_t>(i) * n_ + k] / pivot;
            lu_[static_cast<std::size_t>(i) * n_ + k] = m;
            if (m != 0.0) {
                const double* rk = &lu_[static_cast<std::size_t>(k) * n_];
                double* ri = &lu_[static_cast<std::size_t>(i) * n_];
                for (index_t j = k + 1; j < n_; ++j) ri[j] -= m * rk[j];
            }
        }
    }
}

std::vector<double> dense_lu::solve(std::vector<double> b) const {
    if (static_cast<index_t>(b.size()) != n_)
        throw std::invalid_argument("dense_lu::solve: dimension mismatch");
    for (index_t k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
        for (index_t i = k + 1; i < n_; ++i)
            b[i] -= lu_[static_cast<std::size_t>(i) * n_ + k] * b[k];
    }
    for (index_t i = n_ - 1; i >= 0; --i) {
        double s = b[i];
        const double* ri = &lu_[static_cast<std::size_t>(i) * n_];
        for (index_t j = i + 1; j < n_; ++j) s -= ri[j] * b[j];
        b[i] = s / ri[i];
    }
    return b;
}

std::vector<double> solve(const sparse_matrix& a, const std::vector<double>& b,
                          const solve_options& opts, solve_stats* stats) {
    if (a.rows() != a.cols() || static_cast<index_t>(b.size()) != a.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    switch (opts.method) {
    case solve_method::cg:
        return cg_solve(a, b, opts, stats);
    case solve_method::dense_lu: {
        dense_lu lu(a);
        std::vector<double> x = lu.solve(b);
        if (stats) {
            std::vector<double> ax = a.multiply(x);
            for (std::size_t i = 0; i < x.size(); ++i) ax[i] -= b[i];
            double bn = norm2(b);
            stats->iterations = 1;
            stats->relative_residual = bn > 0 ? norm2(ax) / bn : 0.0;
        }
        return x;
    }
    case solve_method::sparse_lu:
        return sparse_lu_solve(a, b, stats, opts.rtol);
    }
    throw std::logic_error("solve: unknown method");
}

condition_result condition_number(const sparse_matrix& a, bool symmetric_required) {
    if (symmetric_required && !a.is_symmetric(1e-10))
        throw std::invalid_argument("condition_number: matrix is not symmetric");
    const index_t n = a.rows();
    condition_result res;

    // power iteration for lambda_max; the change over a 10-iteration window
    // guards against premature stops on clustered spectra
    std::vector<double> x(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (index_t i = 0; i < n; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        x[i] = static_cast<double>(state % 2000001) / 1000000.0 - 1.0;
    }
    double xn = norm2(x);
    for (double& v : x) v /= xn;
    double lambda = 0.0, window_ref = 0.0;
    for (std::size_t it = 0; it < 500000; ++it) {
        std::vector<double> y = a.multiply(x);
        double rq = dot(x, y);
        double yn = norm2(y);
        if (yn == 0.0) throw std::runtime_error("condition_number: zero matrix");
        for (std::size_t i = 0; i < y.size(); ++i) y[i] /= yn;
        x.swap(y);
        lambda = rq;
        if (it % 10 == 0) {
            if (it > 0 && std::abs(rq - window_ref) <= 1e-8 * std::abs(rq)) break;
            window_ref = rq;
        }
    }
    if (lambda <= 0.0) throw std::runtime_error("condition_number: negative Rayleigh quotient");
    res.lambda_max = lambda;

    // inverse iteration; the growth factor ||A^{-1}x|| estimates 1/lambda_min,
    // which stays reliable when A is nearly singular (unlike the Rayleigh quotient)
    dense_lu lu(a);
    for (index_t i = 0; i < n; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        x[i] = static_cast<double>(state % 2000001) / 1000000.0 - 1.0;
    }
    xn = norm2(x);
    for (double& v : x) v /= xn;
    double inv_lambda = 0.0;
    for (std::size_t it = 0; it < 10000; ++it) {
        std::vector<double> y = lu.solve(x);
        double yn = norm2(y);
        if (!std::isfinite(yn) || yn == 0.0) {
            res.min_saturated = true;
            break;
        }
        for (std::size_t i = 0; i < y.size(); ++i) y[i] /= yn;
        x.swap(y);
        if (it > 4 && std::abs(yn - inv_lambda) <= 1e-6 * std::abs(yn)) {
            inv_lambda = yn;
            break;
        }
        inv_lambda = yn;
    }
    if (inv_lambda <= 0.0) throw std::runtime_error("condition_number: inverse iteration failed");
    res.lambda_min = 1.0 / inv_lambda;
    res.kappa = res.lambda_max / res.lambda_min;
    return res;
}

std::vector<double> dense_symmetric_eigenvalues(const sparse_matrix& a) {
    if (a.rows() > 2000)
        throw std::invalid_argument("dense_symmetric_eigenvalues: n exceeds 2000");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            m(i, a.col_idx()[k]) = a.values()[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

void symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag,
                                 std::vector<double>& eigenvalues,
                                 std::vector<double>& first_components) {
    const long n = static_cast<long>(diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    first_components.resize(n);
    for (long i = 0; i < n; ++i) first_components[i] = es.eigenvectors()(0, i);
}

} // namespace pgfem
