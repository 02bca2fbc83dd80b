#ifndef PGFEM_SPARSE_HPP
#define PGFEM_SPARSE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgfem {

using index_t = std::int32_t;

/// One (row, col, value) assembly contribution. Duplicates sum on compression.
struct triplet {
    index_t row;
    index_t col;
    double value;
};

class triplet_buffer {
public:
    triplet_buffer(index_t rows, index_t cols) : rows_(rows), cols_(cols) {}

    void add(index_t row, index_t col, double value);
    void reserve(std::size_t n) { entries_.reserve(n); }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    const std::vector<triplet>& entries() const { return entries_; }

private:
    index_t rows_, cols_;
    std::vector<triplet> entries_;
};

/// CSR matrix with sorted, unique column indices per row.
class sparse_matrix {
public:
    sparse_matrix() = default;
    sparse_matrix(index_t rows, index_t cols);

    static sparse_matrix compress(const triplet_buffer& buf);

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    std::size_t nnz() const { return vals_.size(); }

    const std::vector<index_t>& row_ptr() const { return row_ptr_; }
    const std::vector<index_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }
    std::vector<double>& values() { return vals_; }

    double operator()(index_t i, index_t j) const; // 0 if not stored

    std::vector<double> multiply(const std::vector<double>& x) const;
    sparse_matrix transposed() const;
    void scale(double s);

    double max_abs() const;
    /// max over i of |A_ij - A_ji| (both looked up; zero fill implied)
    double symmetry_defect() const;
    bool is_symmetric(double rel_tol = 1e-12) const;

    std::vector<double> diagonal() const;
    /// row sums; used for lumped mass. Throws on a nonpositive sum.
    std::vector<double> lumped_row_sums() const;

    void write_matrix_market(std::ostream& os) const;
    void write_matrix_market(const std::string& path) const;

private:
    index_t rows_ = 0, cols_ = 0;
    std::vector<index_t> row_ptr_{0};
    std::vector<index_t> col_idx_;
    std::vector<double> vals_;

    friend sparse_matrix multiply(const sparse_matrix&, const sparse_matrix&);
    friend sparse_matrix add(double, const sparse_matrix&, double, const sparse_matrix&);
    friend sparse_matrix scale_rows(const std::vector<double>&, const sparse_matrix&);
    friend sparse_matrix extract(const sparse_matrix&, const std::vector<index_t>&);
};

sparse_matrix multiply(const sparse_matrix& a, const sparse_matrix& b);
sparse_matrix add(double alpha, const sparse_matrix& a, double beta, const sparse_matrix& b);
sparse_matrix scale_rows(const std::vector<double>& d, const sparse_matrix& a);
/// Submatrix on the index set `keep` (rows and columns), preserving order.
sparse_matrix extract(const sparse_matrix& a, const std::vector<index_t>& keep);

enum class solve_method { cg, dense_lu, sparse_lu };

struct solve_options {
    solve_method method = solve_method::cg;
    double rtol = 1e-12;
    std::size_t max_iterations = 0; // 0 -> 10*n
};

struct solve_stats {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

std::vector<double> solve(const sparse_matrix& a, const std::vector<double>& b,
                          const solve_options& opts = {}, solve_stats* stats = nullptr);

/// Row-major dense LU with partial pivoting; n is capped at 20000.
class dense_lu {
public:
    explicit dense_lu(const sparse_matrix& a);
    dense_lu(std::vector<double> data, index_t n); // takes a dense row-major matrix
    std::vector<double> solve(std::vector<double> b) const;
    index_t size() const { return n_; }

private:
    void factor();
    index_t n_ = 0;
    std::vector<double> lu_;
    std::vector<index_t> piv_;
};

struct condition_result {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double kappa = 0.0;
    bool min_saturated = false; // inverse iteration hit its floor; kappa is a lower bound
};

/// Extreme eigenvalues of an SPD matrix: power iteration for lambda_max,
/// inverse iteration with dense LU for lambda_min.
condition_result condition_number(const sparse_matrix& a, bool symmetric_required = true);

/// All eigenvalues of a small symmetric matrix (dense path, n <= 2000).
std::vector<double> dense_symmetric_eigenvalues(const sparse_matrix& a);

/// Eigen-decomposition of a symmetric tridiagonal matrix; returns eigenvalues
/// (ascending) and the first component of each normalized eigenvector.
void symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag,
                                 std::vector<double>& eigenvalues,
                                 std::vector<double>& first_components);

// small vector helpers
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);

} // namespace pgfem

#endif
