// SPDX-License-Identifier: Apache-2.0
#include "adr/kernels.hpp"

#include <algorithm>
#include <cassert>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace adr::kernels {

namespace {

inline double dot_row(std::span<const double> row, std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t m = 0; m < row.size(); ++m) {
        s += row[m] * x[m];
    }
    return s;
}

inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i)
{
    auto out = c.row(i);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < a.cols(); ++m) {
        const double aim = a(i, m);
        if (aim == 0.0) {
            continue;
        }
        const auto brow = b.row(m);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            out[j] += aim * brow[j];
        }
    }
}

inline void x_line(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t j)
{
    const auto line = in.subspan(j * nx, nx);
    for (std::size_t i = 0; i < nx; ++i) {
        out[j * nx + i] = scale * dot_row(op.row(i), line);
    }
}

inline void y_line(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny, std::size_t i)
{
    for (std::size_t j = 0; j < ny; ++j) {
        const auto row = op.row(j);
        double s = 0.0;
        for (std::size_t m = 0; m < ny; ++m) {
            s += row[m] * in[m * nx + i];
        }
        out[j * nx + i] = scale * s;
    }
}

} // namespace

namespace serial {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == a.cols() && y.size() == a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        y[i] = dot_row(a.row(i), x);
    }
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        matmul_row(a, b, c, i);
    }
}

void apply_along_x(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny)
{
    for (std::size_t j = 0; j < ny; ++j) {
        x_line(op, scale, in, out, nx, j);
    }
}

void apply_along_y(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny)
{
    for (std::size_t i = 0; i < nx; ++i) {
        y_line(op, scale, in, out, nx, ny, i);
    }
}

} // namespace serial

namespace omp {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == a.cols() && y.size() == a.rows());
    const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] = dot_row(a.row(static_cast<std::size_t>(i)), x);
    }
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c)
{
    const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        matmul_row(a, b, c, static_cast<std::size_t>(i));
    }
}

void apply_along_x(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny)
{
    const auto n = static_cast<std::ptrdiff_t>(ny);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        x_line(op, scale, in, out, nx, static_cast<std::size_t>(j));
    }
}

void apply_along_y(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny)
{
    const auto n = static_cast<std::ptrdiff_t>(nx);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        y_line(op, scale, in, out, nx, ny, static_cast<std::size_t>(i));
    }
}

} // namespace omp

void set_thread_count(int threads)
{
#if defined(_OPENMP)
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
}

int thread_count()
{
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace adr::kernels
