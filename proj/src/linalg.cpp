// SPDX-License-Identifier: Apache-2.0
#include "adr/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Dense>

#include "adr/kernels.hpp"

namespace adr {

namespace {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Pivots below this fraction of the largest pivot are treated as singular.
constexpr double kPivotTolerance = 1e-13;

} // namespace

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), width_(kl + ku + 1), band_(n * (kl + ku + 1), 0.0)
{
    if (n == 0) {
        throw DimensionError("BandedMatrix: size must be >= 1");
    }
    if (n > 1 && (kl >= n || ku >= n)) {
        throw DimensionError("BandedMatrix: bandwidth must be < size");
    }
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const
{
    if (!in_band(i, j)) {
        return 0.0;
    }
    return band_[i * width_ + (j + kl_ - i)];
}

double& BandedMatrix::at(std::size_t i, std::size_t j)
{
    if (i >= n_ || j >= n_ || !in_band(i, j)) {
        throw DimensionError("BandedMatrix::at: entry outside the band");
    }
    return band_[i * width_ + (j + kl_ - i)];
}

Matrix BandedMatrix::to_dense() const
{
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i >= kl_ ? i - kl_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + ku_);
        for (std::size_t j = lo; j <= hi; ++j) {
            m(i, j) = (*this)(i, j);
        }
    }
    return m;
}

double BandedMatrix::norm_inf() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t w = 0; w < width_; ++w) {
            s += std::abs(band_[i * width_ + w]);
        }
        best = std::max(best, s);
    }
    return best;
}

// Banded LU without pivoting. The stencil systems assembled in this library are
// diagonally dominant in their interior rows; a vanishing pivot is reported
// rather than repaired.
Matrix solve_banded(const BandedMatrix& a, const Matrix& b)
{
    const std::size_t n = a.size();
    if (b.rows() != n) {
        throw DimensionError("solve_banded: right-hand side row count != matrix size");
    }
    const std::size_t kl = a.lower();
    const std::size_t ku = a.upper();

    // Working copy in dense-band form; no pivoting means no fill outside the band.
    BandedMatrix lu = a;
    Matrix x = b;
    const std::size_t nrhs = b.cols();
    const double scale = std::max(a.norm_inf(), std::numeric_limits<double>::min());

    for (std::size_t k = 0; k < n; ++k) {
        const double pivot = lu(k, k);
        if (!(std::abs(pivot) > kPivotTolerance * scale)) {
            throw SingularMatrixError("solve_banded: near-zero pivot at row " + std::to_string(k));
        }
        const std::size_t last = std::min(n - 1, k + kl);
        const std::size_t last_col = std::min(n - 1, k + ku);
        for (std::size_t i = k + 1; i <= last; ++i) {
            const double m = lu(i, k) / pivot;
            if (m == 0.0) {
                continue;
            }
            lu.at(i, k) = m;
            for (std::size_t j = k + 1; j <= last_col; ++j) {
                lu.at(i, j) -= m * lu(k, j);
            }
            for (std::size_t r = 0; r < nrhs; ++r) {
                x(i, r) -= m * x(k, r);
            }
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        const std::size_t last_col = std::min(n - 1, kk + ku);
        for (std::size_t r = 0; r < nrhs; ++r) {
            double s = x(kk, r);
            for (std::size_t j = kk + 1; j <= last_col; ++j) {
                s -= lu(kk, j) * x(j, r);
            }
            x(kk, r) = s / lu(kk, kk);
        }
    }
    return x;
}

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b)
{
    Matrix rhs(b.size(), 1);
    std::copy(b.begin(), b.end(), rhs.data().begin());
    const Matrix x = solve_banded(a, rhs);
    return {x.data().begin(), x.data().end()};
}

struct LuFactor::Impl {
    Eigen::PartialPivLU<EigenRowMajor> lu;
};

LuFactor::LuFactor(const Matrix& a) : n_(a.rows()), impl_(std::make_unique<Impl>())
{
    if (!a.square()) {
        throw DimensionError("LuFactor: matrix must be square");
    }
    Eigen::Map<const EigenRowMajor> view(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                                         static_cast<Eigen::Index>(a.cols()));
    impl_->lu.compute(view);
    const auto diag = impl_->lu.matrixLU().diagonal().cwiseAbs();
    const double big = diag.maxCoeff();
    if (!(big > 0.0) || !(diag.minCoeff() > kPivotTolerance * big) || !std::isfinite(big)) {
        throw SingularMatrixError("LuFactor: matrix is singular to working precision");
    }
}

LuFactor::~LuFactor() = default;
LuFactor::LuFactor(LuFactor&&) noexcept = default;
LuFactor& LuFactor::operator=(LuFactor&&) noexcept = default;

void LuFactor::solve_in_place(std::span<double> b) const
{
    if (b.size() != n_) {
        throw DimensionError("LuFactor::solve: right-hand side length != matrix size");
    }
    Eigen::Map<Eigen::VectorXd> v(b.data(), static_cast<Eigen::Index>(n_));
    v = impl_->lu.solve(v);
}

std::vector<double> LuFactor::solve(std::span<const double> b) const
{
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

Matrix LuFactor::solve(const Matrix& b) const
{
    if (b.rows() != n_) {
        throw DimensionError("LuFactor::solve: right-hand side row count != matrix size");
    }
    Matrix x(b.rows(), b.cols());
    Eigen::Map<const EigenRowMajor> rhs(b.data().data(), static_cast<Eigen::Index>(b.rows()),
                                        static_cast<Eigen::Index>(b.cols()));
    Eigen::Map<EigenRowMajor> out(x.data().data(), static_cast<Eigen::Index>(x.rows()),
                                  static_cast<Eigen::Index>(x.cols()));
    out = impl_->lu.solve(rhs);
    return x;
}

Matrix solve_dense(const Matrix& a, const Matrix& b)
{
    return LuFactor(a).solve(b);
}

std::vector<double> solve_dense(const Matrix& a, std::span<const double> b)
{
    return LuFactor(a).solve(b);
}

Matrix matmul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions disagree");
    }
    Matrix c(a.rows(), b.cols());
    kernels::omp::matmul(a, b, c);
    return c;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x)
{
    if (a.cols() != x.size()) {
        throw DimensionError("matvec: vector length != matrix cols");
    }
    std::vector<double> y(a.rows());
    kernels::omp::matvec(a, x, y);
    return y;
}

double norm_inf(const Matrix& a)
{
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) {
            s += std::abs(v);
        }
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(std::span<const double> v)
{
    double best = 0.0;
    for (double x : v) {
        best = std::max(best, std::abs(x));
    }
    return best;
}

} // namespace adr
