// SPDX-License-Identifier: Apache-2.0
#include "adr/compact.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "adr/kernels.hpp"

namespace adr {

namespace {

void require_points(const Grid1D& grid, std::size_t min_points, const char* who)
{
    if (grid.n_points < min_points) {
        throw std::invalid_argument(std::string(who) + ": grid needs at least " +
                                    std::to_string(min_points) + " points");
    }
    if (!(grid.h > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": grid spacing must be positive");
    }
}

void clear_row(Matrix& m, std::size_t i)
{
    for (double& v : m.row(i)) {
        v = 0.0;
    }
}

// u'_2 from the one-sided explicit closure with parameter beta; 1-based nodes 1..5.
void set_near_boundary_left(Matrix& m, std::size_t row, double beta)
{
    clear_row(m, row);
    m(row, 0) = 2.0 * beta / 3.0 - 1.0 / 3.0;
    m(row, 1) = -(8.0 * beta / 3.0 + 0.5);
    m(row, 2) = 4.0 * beta + 1.0;
    m(row, 3) = -(8.0 * beta / 3.0 + 1.0 / 6.0);
    m(row, 4) = 2.0 * beta / 3.0;
}

// Mirror image of the left closure: u'_N = -(1/h)[...] over nodes N+1 .. N-3.
void set_near_boundary_right(Matrix& m, std::size_t row, double beta)
{
    const std::size_t n = m.cols();
    clear_row(m, row);
    m(row, n - 1) = -(2.0 * beta / 3.0 - 1.0 / 3.0);
    m(row, n - 2) = 8.0 * beta / 3.0 + 0.5;
    m(row, n - 3) = -(4.0 * beta + 1.0);
    m(row, n - 4) = 8.0 * beta / 3.0 + 1.0 / 6.0;
    m(row, n - 5) = -(2.0 * beta / 3.0);
}

void set_central_first(Matrix& m, std::size_t row)
{
    clear_row(m, row);
    m(row, row - 1) = -0.5;
    m(row, row + 1) = 0.5;
}

void set_central_second(Matrix& m, std::size_t row)
{
    clear_row(m, row);
    m(row, row - 1) = 1.0;
    m(row, row) = -2.0;
    m(row, row + 1) = 1.0;
}

} // namespace

Grid1D::Grid1D(std::size_t n, double spacing, double start) : n_points(n), h(spacing), x_start(start)
{
    if (n < 5) {
        throw std::invalid_argument("Grid1D: n_points must be >= 5");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("Grid1D: spacing must be positive and finite");
    }
}

Grid1D Grid1D::spanning(double a, double b, std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("Grid1D::spanning: need at least two points");
    }
    return Grid1D(n, (b - a) / static_cast<double>(n - 1), a);
}

std::vector<double> Grid1D::nodes() const
{
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        xs[i] = x(i);
    }
    return xs;
}

std::vector<double> DerivativeOperator::apply(std::span<const double> u) const
{
    std::vector<double> out = matvec(matrix, u);
    for (double& v : out) {
        v *= scale;
    }
    return out;
}

std::complex<double> DerivativeOperator::row_symbol(std::size_t row, double kh) const
{
    std::complex<double> s{0.0, 0.0};
    const auto r = matrix.row(row);
    const double j = static_cast<double>(row);
    for (std::size_t c = 0; c < r.size(); ++c) {
        if (r[c] != 0.0) {
            s += r[c] * std::polar(1.0, kh * (static_cast<double>(c) - j));
        }
    }
    return s;
}

double DerivativeOperator::max_row_sum() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        double s = 0.0;
        for (double v : matrix.row(i)) {
            s += v;
        }
        worst = std::max(worst, std::abs(scale * s));
    }
    return worst;
}

double Oucs3Coefficients::q(int r) const
{
    switch (r) {
    case -2: return -F / 4.0 + eta / 300.0;
    case -1: return -E / 2.0 + eta / 30.0;
    case 0: return -11.0 * eta / 150.0;
    case 1: return E / 2.0 + eta / 30.0;
    case 2: return F / 4.0 + eta / 300.0;
    default: return 0.0;
    }
}

DerivativeOperator build_cd2_first(const Grid1D& grid)
{
    require_points(grid, 5, "build_cd2_first");
    const std::size_t n = grid.n_points;
    Matrix m(n, n);
    m(0, 0) = -1.5;
    m(0, 1) = 2.0;
    m(0, 2) = -0.5;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        m(j, j - 1) = -0.5;
        m(j, j + 1) = 0.5;
    }
    m(n - 1, n - 1) = 1.5;
    m(n - 1, n - 2) = -2.0;
    m(n - 1, n - 3) = 0.5;
    return {1, std::move(m), 1.0 / grid.h};
}

DerivativeOperator build_cd2_second(const Grid1D& grid)
{
    require_points(grid, 5, "build_cd2_second");
    const std::size_t n = grid.n_points;
    Matrix m(n, n);
    // Boundary rows reuse the three-point stencil shifted inward.
    m(0, 0) = 1.0;
    m(0, 1) = -2.0;
    m(0, 2) = 1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        m(j, j - 1) = 1.0;
        m(j, j) = -2.0;
        m(j, j + 1) = 1.0;
    }
    m(n - 1, n - 1) = 1.0;
    m(n - 1, n - 2) = -2.0;
    m(n - 1, n - 3) = 1.0;
    return {2, std::move(m), 1.0 / (grid.h * grid.h)};
}

DerivativeOperator build_oucs3(const Grid1D& grid, const Oucs3Coefficients& coef)
{
    require_points(grid, 7, "build_oucs3");
    const std::size_t n = grid.n_points;

    BandedMatrix lhs(n, 1, 1);
    Matrix rhs(n, n);

    // Node 1 and N+1: one-sided second-order closures.
    lhs.at(0, 0) = 1.0;
    rhs(0, 0) = -1.5;
    rhs(0, 1) = 2.0;
    rhs(0, 2) = -0.5;
    lhs.at(n - 1, n - 1) = 1.0;
    rhs(n - 1, n - 1) = 1.5;
    rhs(n - 1, n - 2) = -2.0;
    rhs(n - 1, n - 3) = 0.5;

    // Node 2 and N: explicit near-boundary closures.
    lhs.at(1, 1) = 1.0;
    set_near_boundary_left(rhs, 1, coef.beta2);
    lhs.at(n - 2, n - 2) = 1.0;
    set_near_boundary_right(rhs, n - 2, coef.betaN);

    for (std::size_t j = 2; j + 2 < n; ++j) {
        lhs.at(j, j - 1) = coef.p_minus();
        lhs.at(j, j) = 1.0;
        lhs.at(j, j + 1) = coef.p_plus();
        for (int r = -2; r <= 2; ++r) {
            rhs(j, static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) + r)) = coef.q(r);
        }
    }

    Matrix d = solve_banded(lhs, rhs);
    // Node 2 and N are unstable with the closure above; the assembled rows are
    // replaced by central differences.
    set_central_first(d, 1);
    set_central_first(d, n - 2);
    return {1, std::move(d), 1.0 / grid.h};
}

DerivativeOperator build_lele_second(const Grid1D& grid, const LeleCoefficients& coef)
{
    require_points(grid, 7, "build_lele_second");
    const std::size_t n = grid.n_points;

    BandedMatrix lhs(n, 1, 1);
    Matrix rhs(n, n);

    // j = 1
    lhs.at(0, 0) = 1.0;
    rhs(0, 0) = 1.0;
    rhs(0, 1) = -2.0;
    rhs(0, 2) = 1.0;
    // j = 2
    lhs.at(1, 0) = 1.0;
    lhs.at(1, 1) = 10.0;
    lhs.at(1, 2) = 1.0;
    rhs(1, 0) = 12.0;
    rhs(1, 1) = -24.0;
    rhs(1, 2) = 12.0;
    // j = N
    lhs.at(n - 2, n - 3) = 1.0;
    lhs.at(n - 2, n - 2) = 10.0;
    lhs.at(n - 2, n - 1) = 1.0;
    rhs(n - 2, n - 3) = 12.0;
    rhs(n - 2, n - 2) = -24.0;
    rhs(n - 2, n - 1) = 12.0;
    // j = N+1
    lhs.at(n - 1, n - 1) = 1.0;
    lhs.at(n - 1, n - 2) = 11.0;
    rhs(n - 1, n - 1) = 13.0;
    rhs(n - 1, n - 2) = -27.0;
    rhs(n - 1, n - 3) = 15.0;
    rhs(n - 1, n - 4) = -1.0;

    const double b4 = coef.b / 4.0;
    for (std::size_t j = 2; j + 2 < n; ++j) {
        lhs.at(j, j - 1) = coef.alpha;
        lhs.at(j, j) = 1.0;
        lhs.at(j, j + 1) = coef.alpha;
        rhs(j, j - 2) = b4;
        rhs(j, j + 2) = b4;
        rhs(j, j - 1) = coef.a;
        rhs(j, j + 1) = coef.a;
        rhs(j, j) = -2.0 * b4 - 2.0 * coef.a;
    }

    return {2, solve_banded(lhs, rhs), 1.0 / (grid.h * grid.h)};
}

NccdBlocks assemble_nccd_blocks(std::size_t n)
{
    if (n < 7) {
        throw std::invalid_argument("assemble_nccd_blocks: need at least 7 points");
    }
    NccdBlocks s{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};

    // j = 1
    s.A1(0, 0) = 1.0;
    s.A1(0, 1) = 2.0;
    s.B1(0, 1) = -1.0;
    s.C1(0, 0) = -3.5;
    s.C1(0, 1) = 4.0;
    s.C1(0, 2) = -0.5;

    s.A2(0, 1) = -6.0;
    s.B2(0, 0) = 1.0;
    s.B2(0, 1) = 5.0;
    s.C2(0, 0) = 9.0;
    s.C2(0, 1) = -12.0;
    s.C2(0, 2) = 3.0;

    for (std::size_t j = 1; j + 1 < n; ++j) {
        s.A1(j, j - 1) = 7.0 / 16.0;
        s.A1(j, j) = 1.0;
        s.A1(j, j + 1) = 7.0 / 16.0;
        s.B1(j, j - 1) = 1.0 / 16.0;
        s.B1(j, j + 1) = -1.0 / 16.0;
        s.C1(j, j - 1) = -15.0 / 16.0;
        s.C1(j, j + 1) = 15.0 / 16.0;

        s.A2(j, j - 1) = -9.0 / 8.0;
        s.A2(j, j + 1) = 9.0 / 8.0;
        s.B2(j, j - 1) = -1.0 / 8.0;
        s.B2(j, j) = 1.0;
        s.B2(j, j + 1) = -1.0 / 8.0;
        s.C2(j, j - 1) = 3.0;
        s.C2(j, j) = -6.0;
        s.C2(j, j + 1) = 3.0;
    }

    // j = N+1
    const std::size_t e = n - 1;
    s.A1(e, e) = 1.0;
    s.A1(e, e - 1) = 2.0;
    s.B1(e, e - 1) = 1.0;
    s.C1(e, e) = 3.5;
    s.C1(e, e - 1) = -4.0;
    s.C1(e, e - 2) = 0.5;

    s.A2(e, e - 1) = 6.0;
    s.B2(e, e) = 1.0;
    s.B2(e, e - 1) = 5.0;
    s.C2(e, e) = 9.0;
    s.C2(e, e - 1) = -12.0;
    s.C2(e, e - 2) = 3.0;
    return s;
}

NccdOperators solve_nccd_blocks(const NccdBlocks& s, double h)
{
    // D1 = (A1 - B1 B2^-1 A2)^-1 (C1 - B1 B2^-1 C2)
    // D2 = (B2 - A2 A1^-1 B1)^-1 (C2 - A2 A1^-1 C1)
    const LuFactor b2(s.B2);
    const LuFactor a1(s.A1);
    const Matrix b2_a2 = b2.solve(s.A2);
    const Matrix b2_c2 = b2.solve(s.C2);
    const Matrix a1_b1 = a1.solve(s.B1);
    const Matrix a1_c1 = a1.solve(s.C1);

    Matrix d1 = solve_dense(s.A1 - matmul(s.B1, b2_a2), s.C1 - matmul(s.B1, b2_c2));
    Matrix d2 = solve_dense(s.B2 - matmul(s.A2, a1_b1), s.C2 - matmul(s.A2, a1_c1));
    return {{1, std::move(d1), 1.0 / h}, {2, std::move(d2), 1.0 / (h * h)}};
}

NccdOperators build_nccd(const Grid1D& grid, const Oucs3Coefficients& coef)
{
    require_points(grid, 7, "build_nccd");
    const std::size_t n = grid.n_points;
    NccdOperators ops = solve_nccd_blocks(assemble_nccd_blocks(n), grid.h);
    set_near_boundary_left(ops.first.matrix, 1, coef.beta2);
    set_near_boundary_right(ops.first.matrix, n - 2, coef.betaN);
    set_central_second(ops.second.matrix, 1);
    set_central_second(ops.second.matrix, n - 2);
    return ops;
}

void write_operator_csv(std::ostream& os, const DerivativeOperator& op)
{
    os << "row,col,value\n" << std::setprecision(12);
    for (std::size_t i = 0; i < op.matrix.rows(); ++i) {
        const auto r = op.matrix.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] != 0.0) {
                os << i << ',' << j << ',' << op.scale * r[j] << '\n';
            }
        }
    }
}

} // namespace adr
