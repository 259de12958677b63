#include "cmauction/linalg.hpp"

#include "cmauction/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cmauction::linalg {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const DenseMatrix& m) {
    return {m.entries().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

void check_cap(std::size_t rows, std::size_t cols, std::size_t cap) {
    // rows * cols without overflowing size_t
    if (rows != 0 && cols > cap / rows) {
        throw Error(ErrorKind::kDimensionOverflow, std::to_string(rows) + " x " + std::to_string(cols) +
                                                       " exceeds the cap of " + std::to_string(cap) + " entries");
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorKind::kWrongLength, "matrix entries do not match " + std::to_string(rows_) + " x " +
                                                 std::to_string(cols_));
    }
    if (!std::all_of(entries_.begin(), entries_.end(), [](double x) { return std::isfinite(x); })) {
        throw Error(ErrorKind::kInvalidArgument, "matrix entries must be finite");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
    return id;
}

DenseMatrix DenseMatrix::column(std::span<const double> v) {
    return {v.size(), 1, std::vector<double>(v.begin(), v.end())};
}

DenseMatrix DenseMatrix::from_rows(std::span<const std::vector<double>> rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    std::vector<double> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw Error(ErrorKind::kWrongLength, "ragged rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return {rows.size(), cols, std::move(entries)};
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b, std::size_t cap) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    check_cap(a.rows() * b.rows(), a.cols() * b.cols(), cap);
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            for (std::size_t p = 0; p < b.rows(); ++p) {
                for (std::size_t q = 0; q < b.cols(); ++q) {
                    out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
                }
            }
        }
    }
    return out;
}

std::vector<double> kronecker(std::span<const double> a, std::span<const double> b, std::size_t cap) {
    check_cap(a.size(), b.size(), cap);
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (double x : a)
        for (double y : b) out.push_back(x * y);
    return out;
}

std::vector<double> kronecker_power(std::span<const double> v, std::size_t m, std::size_t cap) {
    std::vector<double> out{1.0};
    for (std::size_t t = 0; t < m; ++t) out = kronecker(out, v, cap);
    return out;
}

std::size_t rank(const DenseMatrix& mat, double tol) {
    if (mat.rows() == 0 || mat.cols() == 0) return 0;
    const Eigen::BDCSVD<RowMajor> svd(view(mat));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cutoff = tol * sv(0);
    return static_cast<std::size_t>((sv.array() > cutoff).count());
}

SolveOutcome min_norm_solve(const DenseMatrix& a, std::span<const double> b, double tol) {
    if (a.rows() != b.size()) {
        throw Error(ErrorKind::kWrongLength, "right-hand side length does not match matrix rows");
    }
    const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(a.cols()));
    if (a.rows() > 0 && a.cols() > 0) {
        Eigen::BDCSVD<RowMajor> svd(view(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
        // Same cutoff as LAPACK's gelsd default: max(rows, cols) * eps * sigma_max.
        svd.setThreshold(static_cast<double>(std::max(a.rows(), a.cols())) *
                         std::numeric_limits<double>::epsilon());
        x = svd.solve(rhs);
    }
    const double residual = (view(a) * x - rhs).norm();

    SolveOutcome outcome;
    outcome.residual = residual;
    if (residual <= tol * (1.0 + rhs.norm())) {
        outcome.solution = std::vector<double>(x.data(), x.data() + x.size());
    }
    return outcome;
}

double norm2(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).norm();
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::kWrongLength, "vector length does not match matrix columns");
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd y = view(a) * xv;
    return {y.data(), y.data() + y.size()};
}

} // namespace cmauction::linalg
