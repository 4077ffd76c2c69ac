#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "adr/compact.hpp"
#include "adr/linalg.hpp"

using namespace adr;

namespace {

std::vector<double> sample(const Grid1D& g, double (*f)(double))
{
    std::vector<double> u(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        u[i] = f(g.x(i));
    }
    return u;
}

double interior_error(const DerivativeOperator& op, const Grid1D& g, double (*f)(double),
                      double (*df)(double), std::size_t skip)
{
    const auto d = op.apply(sample(g, f));
    double e = 0.0;
    for (std::size_t i = skip; i + skip < g.n_points; ++i) {
        e = std::max(e, std::abs(d[i] - df(g.x(i))));
    }
    return e;
}

double max_error(const DerivativeOperator& op, const Grid1D& g, double (*f)(double),
                 double (*df)(double))
{
    return interior_error(op, g, f, df, 0);
}

std::vector<DerivativeOperator> all_first(const Grid1D& g)
{
    return {build_cd2_first(g), build_oucs3(g), build_nccd(g).first};
}

std::vector<DerivativeOperator> all_second(const Grid1D& g)
{
    return {build_cd2_second(g), build_lele_second(g), build_nccd(g).second};
}

double lin(double x) { return 3.0 * x - 1.0; }
double one(double) { return 3.0; }
double zero(double) { return 0.0; }
double quad(double x) { return x * x; }
double two(double) { return 2.0; }
double sine(double x) { return std::sin(x); }
double cosine(double x) { return std::cos(x); }
double neg_sine(double x) { return -std::sin(x); }

} // namespace

TEST_CASE("grid construction")
{
    const Grid1D g = Grid1D::spanning(-1.0, 1.0, 21);
    CHECK(g.h == doctest::Approx(0.1));
    CHECK(g.x(20) == doctest::Approx(1.0));
    CHECK(g.nodes().size() == 21);
    CHECK_THROWS(Grid1D(4, 0.1));
    CHECK_THROWS(Grid1D(10, 0.0));
}

TEST_CASE("row sums vanish for every operator")
{
    for (std::size_t n : {11u, 41u, 101u}) {
        const Grid1D g(n, 1.0 / static_cast<double>(n - 1));
        for (const auto& op : all_first(g)) {
            CHECK(op.max_row_sum() <= 1e-8);
        }
        for (const auto& op : all_second(g)) {
            CHECK(op.max_row_sum() <= 1e-8);
        }
    }
}

TEST_CASE("first derivatives are exact on linear data")
{
    const Grid1D g(31, 0.05, -0.7);
    for (const auto& op : all_first(g)) {
        CHECK(max_error(op, g, lin, one) <= 1e-8);
    }
    const auto nccd = build_nccd(g);
    CHECK(max_error(nccd.second, g, lin, zero) <= 1e-8);
}

TEST_CASE("second derivatives are exact on quadratics")
{
    const Grid1D g(31, 0.05, -0.7);
    for (const auto& op : all_second(g)) {
        CHECK(max_error(op, g, quad, two) <= 1e-8);
    }
}

TEST_CASE("OUCS3 modified wavenumber matches kh at small kh")
{
    const Grid1D g(101, 0.01);
    const auto op = build_oucs3(g);
    const double kh = 0.01;
    const std::complex<double> keq = op.row_symbol(50, kh) / std::complex<double>(0.0, 1.0);
    CHECK(std::abs(keq.real() - kh) <= 1e-5);
    CHECK(std::abs(keq.imag()) <= 1e-5);
}

TEST_CASE("interior row symbols are conjugate symmetric in kh")
{
    const Grid1D g(61, 0.1);
    for (const auto& op : all_first(g)) {
        for (double kh : {0.3, 1.1, 2.7}) {
            const auto p = op.row_symbol(30, kh);
            const auto m = op.row_symbol(30, -kh);
            CHECK(std::abs(p - std::conj(m)) <= 1e-12);
        }
    }
}

TEST_CASE("CD2 converges at second order on sin(x)")
{
    std::vector<double> e1, e2;
    for (std::size_t n : {41u, 81u, 161u}) {
        const Grid1D g = Grid1D::spanning(0.0, 2.0, n);
        e1.push_back(interior_error(build_cd2_first(g), g, sine, cosine, 1));
        e2.push_back(interior_error(build_cd2_second(g), g, sine, neg_sine, 1));
    }
    for (std::size_t k = 0; k + 1 < e1.size(); ++k) {
        CHECK(std::log2(e1[k] / e1[k + 1]) >= 1.9);
        CHECK(std::log2(e2[k] / e2[k + 1]) >= 1.9);
    }
}

TEST_CASE("Lele second derivative reaches fourth order away from the ends")
{
    std::vector<double> e;
    for (std::size_t n : {41u, 81u, 161u}) {
        const Grid1D g = Grid1D::spanning(0.0, 16.0, n);
        e.push_back(interior_error(build_lele_second(g), g, sine, neg_sine, 12));
    }
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        CHECK(std::log2(e[k] / e[k + 1]) >= 4.0);
    }
}

TEST_CASE("OUCS3 and NCCD errors shrink under refinement")
{
    double prev1 = 1e300, prev2 = 1e300;
    for (std::size_t n : {21u, 41u, 81u, 161u}) {
        const Grid1D g = Grid1D::spanning(0.0, 2.0, n);
        const double e1 = max_error(build_oucs3(g), g, sine, cosine);
        const double e2 = max_error(build_nccd(g).first, g, sine, cosine);
        CHECK(e1 < prev1);
        CHECK(e2 < prev2);
        prev1 = e1;
        prev2 = e2;
    }
}

TEST_CASE("Lele family member with other coefficients stays consistent")
{
    const Grid1D g(41, 0.025);
    const LeleCoefficients fourth{0.1, 1.2, 0.0};
    const auto op = build_lele_second(g, fourth);
    CHECK(op.max_row_sum() <= 1e-8);
    CHECK(max_error(op, g, quad, two) <= 1e-8);
}

TEST_CASE("OUCS3 stencil weights")
{
    const Oucs3Coefficients c;
    double s = 0.0;
    double m = 0.0;
    for (int r = -2; r <= 2; ++r) {
        s += c.q(r);
        m += r * c.q(r);
    }
    CHECK(std::abs(s) <= 1e-12);
    // Consistency with u' on linear data: sum r q_r = 1 + p_- + p_+.
    CHECK(m == doctest::Approx(1.0 + c.p_minus() + c.p_plus()).epsilon(1e-9));
}

TEST_CASE("NCCD blocks satisfy both defining relations")
{
    for (std::size_t n : {11u, 51u}) {
        const Grid1D g(n, 0.02);
        const NccdBlocks b = assemble_nccd_blocks(n);
        const NccdOperators ops = solve_nccd_blocks(b, g.h);
        const Matrix& d1 = ops.first.matrix;
        const Matrix& d2 = ops.second.matrix;
        const Matrix r1 = matmul(b.A1, d1) + matmul(b.B1, d2) - b.C1;
        const Matrix r2 = matmul(b.A2, d1) + matmul(b.B2, d2) - b.C2;
        CHECK(norm_inf(r1) <= 1e-8);
        CHECK(norm_inf(r2) <= 1e-8);
    }
}

TEST_CASE("operator CSV lists nonzero entries")
{
    const Grid1D g(5, 0.5);
    std::ostringstream os;
    write_operator_csv(os, build_cd2_second(g));
    const std::string s = os.str();
    CHECK(s.rfind("row,col,value\n", 0) == 0);
    CHECK(s.find("\n2,2,-8") != std::string::npos);
}
