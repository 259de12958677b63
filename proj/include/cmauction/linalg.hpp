#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cmauction::linalg {

inline constexpr std::size_t kDefaultCap = 1'000'000;
inline constexpr double kDefaultSolveTol = 1e-8;

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    // Row-major entries; must hold rows * cols finite values.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix column(std::span<const double> v);
    // Stacks equal-length vectors as rows.
    static DenseMatrix from_rows(std::span<const std::vector<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    DenseMatrix transpose() const;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

struct SolveOutcome {
    // Minimum-norm solution; empty when the system is inconsistent.
    std::optional<std::vector<double>> solution;
    // ||Ax - b|| for the returned (or least-squares) x.
    double residual = 0.0;

    bool solved() const noexcept { return solution.has_value(); }
};

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b, std::size_t cap = kDefaultCap);
std::vector<double> kronecker(std::span<const double> a, std::span<const double> b, std::size_t cap = kDefaultCap);

// m-fold Kronecker product of v with itself; m = 0 gives [1].
std::vector<double> kronecker_power(std::span<const double> v, std::size_t m, std::size_t cap = kDefaultCap);

// Number of singular values above tol * sigma_max.
std::size_t rank(const DenseMatrix& mat, double tol = 1e-9);

// Minimum Euclidean norm x minimizing ||Ax - b||; reported as a solution when
// the residual is at most tol * (1 + ||b||).
SolveOutcome min_norm_solve(const DenseMatrix& a, std::span<const double> b, double tol = kDefaultSolveTol);

double norm2(std::span<const double> v);
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

} // namespace cmauction::linalg
