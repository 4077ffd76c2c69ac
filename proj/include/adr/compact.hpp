// SPDX-License-Identifier: Apache-2.0
#pragma once

// Global derivative matrices for compact and explicit finite-difference schemes
// on a uniform 1D grid. Every scheme is written as A u^(n) = B u and
// materialized as the dense matrix D = A^-1 B, applied with a 1/h^n scale.
//
// Node numbering in comments is 1-based (nodes 1 .. N+1, N+1 = n_points);
// storage is 0-based, so node j lives at index j - 1.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "adr/linalg.hpp"

namespace adr {

struct Grid1D {
    std::size_t n_points = 0;
    double h = 0.0;
    double x_start = 0.0;

    Grid1D() = default;
    Grid1D(std::size_t n_points, double h, double x_start = 0.0);

    /// Grid with n_points nodes spanning [a, b].
    static Grid1D spanning(double a, double b, std::size_t n_points);

    double x(std::size_t i) const { return x_start + static_cast<double>(i) * h; }
    std::vector<double> nodes() const;
};

struct DerivativeOperator {
    int order = 1;
    Matrix matrix;   // dimensionless: D in u^(order) = scale * D u
    double scale = 1.0;

    std::size_t size() const { return matrix.rows(); }
    std::vector<double> apply(std::span<const double> u) const;
    /// Dimensionless row symbol sum_r D_jr exp(i kh (r - j)).
    std::complex<double> row_symbol(std::size_t row, double kh) const;
    /// Largest |row sum| of scale * D.
    double max_row_sum() const;
};

/// Optimal upwind compact scheme constants.
struct Oucs3Coefficients {
    double D = 0.3793894912;
    double F = 1.57557379;
    double E = 0.183205192;
    double eta = -2.0;
    double beta2 = -0.025;
    double betaN = 0.09;

    double p_minus() const { return D - eta / 60.0; }   // weight of u'_{j-1}
    double p_plus() const { return D + eta / 60.0; }    // weight of u'_{j+1}
    /// q_r for r in [-2, 2].
    double q(int r) const;
};

/// Interior tridiagonal second-derivative family
///   alpha u''_{j-1} + u''_j + alpha u''_{j+1}
///     = b/(4h^2) (u_{j-2} - 2u_j + u_{j+2}) + a/h^2 (u_{j-1} - 2u_j + u_{j+1}).
/// Defaults are the sixth-order member.
struct LeleCoefficients {
    double alpha = 2.0 / 11.0;
    double a = 12.0 / 11.0;
    double b = 3.0 / 11.0;
};

DerivativeOperator build_cd2_first(const Grid1D& grid);
DerivativeOperator build_cd2_second(const Grid1D& grid);
DerivativeOperator build_oucs3(const Grid1D& grid, const Oucs3Coefficients& coef = {});
DerivativeOperator build_lele_second(const Grid1D& grid, const LeleCoefficients& coef = {});

/// Blocks of the coupled first/second-derivative system
///   A1 u' + B1 u'' = C1 u,   A2 u' + B2 u'' = C2 u
/// in dimensionless form (u' scaled by h, u'' by h^2).
struct NccdBlocks {
    Matrix A1, B1, C1, A2, B2, C2;
};

NccdBlocks assemble_nccd_blocks(std::size_t n_points);

struct NccdOperators {
    DerivativeOperator first;
    DerivativeOperator second;
};

/// D1 and D2 solved from the coupled system, before the near-boundary row
/// replacements.
NccdOperators solve_nccd_blocks(const NccdBlocks& blocks, double h);

/// Full NCCD pair including near-boundary replacements (rows 2 and N).
NccdOperators build_nccd(const Grid1D& grid, const Oucs3Coefficients& coef = {});

/// Writes the nonzero entries of scale * D as `row,col,value` lines.
void write_operator_csv(std::ostream& os, const DerivativeOperator& op);

} // namespace adr
