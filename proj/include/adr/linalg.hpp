// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adr {

/// Raised when a linear system has a zero or near-zero pivot.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Row-major dense matrix over a real or complex scalar.
template <typename T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
        if (rows == 0 || cols == 0) {
            throw DimensionError("DenseMatrix: rows and cols must be >= 1");
        }
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T{1};
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<T> data() { return data_; }
    std::span<const T> data() const { return data_; }

    DenseMatrix& operator*=(T s)
    {
        for (auto& v : data_) {
            v *= s;
        }
        return *this;
    }

    DenseMatrix& operator+=(const DenseMatrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }

    DenseMatrix& operator-=(const DenseMatrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(T s, DenseMatrix a) { return a *= s; }

    bool all_finite() const
    {
        for (const auto& v : data_) {
            if (!std::isfinite(std::abs(v))) {
                return false;
            }
        }
        return true;
    }

private:
    void check_same_shape(const DenseMatrix& o) const
    {
        if (o.rows_ != rows_ || o.cols_ != cols_) {
            throw DimensionError("DenseMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// Square band matrix with kl sub-diagonals and ku super-diagonals.
///
/// Storage is one row of width kl + ku + 1 per matrix row; entry (i, j) with
/// |i - j| inside the band lives at band_(i, j - i + kl).
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t lower() const { return kl_; }
    std::size_t upper() const { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const
    {
        return j + kl_ >= i && j <= i + ku_;
    }

    /// Entry (i, j); out-of-band entries read as zero.
    double operator()(std::size_t i, std::size_t j) const;
    /// Mutable entry (i, j); throws if (i, j) is outside the band.
    double& at(std::size_t i, std::size_t j);

    Matrix to_dense() const;
    double norm_inf() const;

private:
    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    std::size_t width_;
    std::vector<double> band_;
};

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b);
/// Multiple right-hand sides: every column of b is solved.
Matrix solve_banded(const BandedMatrix& a, const Matrix& b);

/// LU with partial pivoting; solves a x = b for every column of b.
Matrix solve_dense(const Matrix& a, const Matrix& b);
std::vector<double> solve_dense(const Matrix& a, std::span<const double> b);

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

double norm_inf(const Matrix& a);
double norm_inf(std::span<const double> v);

/// Partial-pivot LU factorization kept for repeated solves against one matrix.
class LuFactor {
public:
    explicit LuFactor(const Matrix& a);
    ~LuFactor();
    LuFactor(LuFactor&&) noexcept;
    LuFactor& operator=(LuFactor&&) noexcept;
    LuFactor(const LuFactor&) = delete;
    LuFactor& operator=(const LuFactor&) = delete;

    std::size_t size() const { return n_; }
    std::vector<double> solve(std::span<const double> b) const;
    void solve_in_place(std::span<double> b) const;
    Matrix solve(const Matrix& b) const;

private:
    struct Impl;
    std::size_t n_ = 0;
    std::unique_ptr<Impl> impl_;
};

} // namespace adr
