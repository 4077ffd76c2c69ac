#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "adr/drp.hpp"

using namespace adr;

namespace {

constexpr double kPi = std::numbers::pi;

OperatorPair ops_for(SchemeId s, std::size_t n = 1001)
{
    return build_operators(s, Grid1D(n, 1.0));
}

} // namespace

TEST_CASE("exact amplification factor")
{
    SpectralParams p;
    p.kh = 0.0;
    p.da = 0.0;
    CHECK(std::abs(g_exact(p) - cplx(1.0, 0.0)) <= 1e-15);

    p = SpectralParams{0.5, 0.1, 0.01, -0.01};
    const cplx g = g_exact(p);
    CHECK(std::abs(g) == doctest::Approx(std::exp(-0.01 * 0.25 - 0.01)));
    CHECK(phase_shift(g) == doctest::Approx(0.05));
}

TEST_CASE("every scheme leaves the mean mode unchanged without reaction")
{
    for (SchemeId s : kAllSchemes) {
        const auto ops = ops_for(s);
        const SpectralParams p{0.0, 0.0, 0.0, 0.0};
        CHECK(std::abs(g_num(s, p, ops) - cplx(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("phase shift range")
{
    CHECK(phase_shift(cplx(1.0, 0.0)) == 0.0);
    CHECK(phase_shift(cplx(-1.0, 0.0)) == doctest::Approx(kPi));
    CHECK(phase_shift(cplx(-1.0, -0.0)) == doctest::Approx(kPi));
    CHECK(phase_shift(cplx(0.0, -1.0)) == doctest::Approx(kPi / 2));
    CHECK(phase_shift(cplx(0.0, 1.0)) == doctest::Approx(-kPi / 2));
    CHECK_THROWS_AS(phase_shift(cplx(0.0, 0.0)), SingularPointError);
}

TEST_CASE("the exact factor has no phase or group-velocity error")
{
    for (double kh : {0.1, 0.8, 2.0, 3.0}) {
        const SpectralParams p{kh, 0.4, 0.02, -0.03};
        CHECK(phase_speed_error(p, g_exact(p)) <= 1e-12);
    }
    for (double kh : {0.3, 1.5, 3.1}) {
        const SpectralParams q{kh, 0.25, 0.0, 0.0};
        auto g = [&](double k) {
            SpectralParams r = q;
            r.kh = k;
            return g_exact(r);
        };
        CHECK(group_velocity_ratio(g, kh, q.nc) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("phase-speed limit at the mean mode")
{
    const SpectralParams p{0.0, 0.1, 0.01, -0.02};
    CHECK(phase_speed_error(p, g_exact(p)) <= 1e-12);
    const SpectralParams q{0.0, 0.1, 0.01, 0.0};
    CHECK_THROWS_AS(phase_speed_error(q, cplx(1.0, 0.0)), SingularPointError);
}

TEST_CASE("error forcing vanishes for exact propagation or empty spectrum")
{
    const SpectralParams p{0.7, 0.3, 0.01, -0.01};
    CHECK(std::abs(error_forcing(p, g_exact(p), 1.0, 100.0)) <= 1e-10);
    const auto ops = ops_for(SchemeId::ExplicitOucs3Cd2);
    CHECK(error_forcing(p, g_num(SchemeId::ExplicitOucs3Cd2, p, ops), 0.0, 100.0) == cplx(0.0));
    const cplx f = error_forcing_spectrum(SchemeId::ExplicitOucs3Cd2, p, ops,
                                          [](double) { return 1.0; }, 10.0);
    CHECK(std::abs(f) > 0.0);
}

TEST_CASE("interior results do not depend on the domain size")
{
    for (SchemeId s : kAllSchemes) {
        const SpectralParams a{0.9, 0.3, 0.01, -0.01, 500, 1001};
        const SpectralParams b{0.9, 0.3, 0.01, -0.01, 250, 501};
        const cplx ga = g_num(s, a, ops_for(s, 1001));
        const cplx gb = g_num(s, b, ops_for(s, 501));
        CHECK(std::abs(ga - gb) <= 1e-6);
    }
}

TEST_CASE("evaluate_point limits and consistency")
{
    const auto ops = ops_for(SchemeId::ImexNccd);
    const SpectralParams zero{0.0, 0.5, 0.01, -0.01};
    const DispersionPoint z = evaluate_point(SchemeId::ImexNccd, zero, ops);
    CHECK(z.vg_ratio == 1.0);
    CHECK(z.phase_err == 0.0);
    CHECK(std::isfinite(z.g_ratio));

    const SpectralParams p{1.2, 0.5, 0.01, -0.01};
    const DispersionPoint pt = evaluate_point(SchemeId::ImexNccd, p, ops);
    CHECK(pt.g_ratio == doctest::Approx(std::abs(pt.g_num / g_exact(p))));
    CHECK(pt.beta == doctest::Approx(phase_shift(pt.g_num)));
}

TEST_CASE("sweep layout matches pointwise evaluation and is execution-independent")
{
    const auto kh = linear_axis(0.0, kPi, 9);
    const auto nc = linear_axis(0.0, 2.0, 5, false);
    CHECK(kh.front() == 0.0);
    CHECK(kh.back() == doctest::Approx(kPi));
    CHECK(nc.front() == doctest::Approx(0.4));
    CHECK(nc.back() == doctest::Approx(2.0));

    for (SchemeId s : kAllSchemes) {
        const auto ops = ops_for(s);
        const auto par = sweep(s, ops, kh, nc, 0.01, -0.01, 500, kernels::Exec::Parallel);
        const auto ser = sweep(s, ops, kh, nc, 0.01, -0.01, 500, kernels::Exec::Serial);
        REQUIRE(par.points.size() == 45);
        for (std::size_t k = 0; k < par.points.size(); ++k) {
            CHECK(par.points[k].g_ratio == ser.points[k].g_ratio);
            CHECK(par.points[k].vg_ratio == ser.points[k].vg_ratio);
        }
        const auto pt = evaluate_point(s, {kh[3], nc[2], 0.01, -0.01, 500, 1001}, ops);
        CHECK(par.at(2, 3).g_ratio == pt.g_ratio);
    }

    const auto one = sweep(SchemeId::ImexNccd, std::vector<double>{0.5},
                           std::vector<double>{0.1}, 0.01, -0.01, 500, 1001);
    const auto pt = evaluate_point(SchemeId::ImexNccd, {0.5, 0.1, 0.01, -0.01, 500, 1001},
                                   ops_for(SchemeId::ImexNccd));
    CHECK(one.points[0].g_ratio == pt.g_ratio);
    CHECK(one.points[0].phase_err == pt.phase_err);
}

TEST_CASE("stability boundary on a synthetic map")
{
    DispersionMap m;
    m.kh = {0.0, 1.0};
    m.nc = {0.1, 0.2, 0.3, 0.4, 0.5};
    const double worst[5] = {1.01, 1.0, 0.99, 1.0005, 1.2};
    for (double w : worst) {
        m.points.push_back({0.0, 0.0, {}, 0.9});
        m.points.push_back({1.0, 0.0, {}, w});
    }
    CHECK(max_g_ratio(m, 4) == 1.2);
    CHECK(stability_boundary(m) == doctest::Approx(0.4));
    CHECK(stability_boundary(m, 1e-4) == doctest::Approx(0.3));

    for (auto& p : m.points) {
        p.g_ratio = 2.0;
    }
    CHECK_FALSE(stability_boundary(m).has_value());
}

TEST_CASE("parameter validation")
{
    SpectralParams p;
    p.node = 0;
    CHECK_THROWS(p.validate());
    p = SpectralParams{};
    p.node = 1001;
    CHECK_THROWS(p.validate());
    p = SpectralParams{};
    p.kh = 4.0;
    CHECK_THROWS(p.validate());
    CHECK_THROWS(sweep(SchemeId::ImexNccd, std::vector<double>{0.5}, std::vector<double>{0.1},
                       0.01, -0.01, 2000, 1001));
}

TEST_CASE("dispersion CSV header and row count")
{
    const auto map = sweep(SchemeId::ExplicitOucs3Cd2, linear_axis(0.0, kPi, 4),
                           linear_axis(0.0, 1.0, 3, false), 0.01, -0.01, 50, 101);
    std::ostringstream os;
    write_dispersion_csv(os, map);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# scheme=explicit-oucs3-cd2,pe=0.01,da=-0.01,node=50,n_points=101");
    std::getline(is, line);
    CHECK(line == "kh,nc,g_ratio,vg_ratio,phase_err");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
    }
    CHECK(rows == 12);
}
