// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops used by the solvers. Every kernel has a serial
// reference in kernels::serial and an OpenMP version in kernels::omp with the
// same signature; tests hold the two to bitwise agreement (each output element
// is reduced in the same order by both).

#include <cstddef>
#include <span>

#include "adr/linalg.hpp"

namespace adr::kernels {

enum class Exec { Serial, Parallel };

namespace serial {

/// y = a x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
/// c = a b
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
/// Applies the n x n operator op to every x-line (fixed j) of an nx * ny
/// row-major field: out(i, j) = scale * sum_m op(i, m) in(m, j).
void apply_along_x(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny);
/// Same along y-lines (fixed i).
void apply_along_y(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny);

} // namespace serial

namespace omp {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
void apply_along_x(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny);
void apply_along_y(const Matrix& op, double scale, std::span<const double> in,
                   std::span<double> out, std::size_t nx, std::size_t ny);

} // namespace omp

inline void matvec(const Matrix& a, std::span<const double> x, std::span<double> y,
                   Exec exec = Exec::Parallel)
{
    exec == Exec::Serial ? serial::matvec(a, x, y) : omp::matvec(a, x, y);
}

inline void apply_along_x(const Matrix& op, double scale, std::span<const double> in,
                          std::span<double> out, std::size_t nx, std::size_t ny,
                          Exec exec = Exec::Parallel)
{
    exec == Exec::Serial ? serial::apply_along_x(op, scale, in, out, nx, ny)
                         : omp::apply_along_x(op, scale, in, out, nx, ny);
}

inline void apply_along_y(const Matrix& op, double scale, std::span<const double> in,
                          std::span<double> out, std::size_t nx, std::size_t ny,
                          Exec exec = Exec::Parallel)
{
    exec == Exec::Serial ? serial::apply_along_y(op, scale, in, out, nx, ny)
                         : omp::apply_along_y(op, scale, in, out, nx, ny);
}

/// Caps the OpenMP worker count; 0 leaves the runtime default.
void set_thread_count(int threads);
int thread_count();

} // namespace adr::kernels
