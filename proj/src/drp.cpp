// SPDX-License-Identifier: Apache-2.0
#include "adr/drp.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace adr {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a)
{
    while (a > kPi) {
        a -= 2.0 * kPi;
    }
    while (a <= -kPi) {
        a += 2.0 * kPi;
    }
    return a;
}

} // namespace

void SpectralParams::validate() const
{
    if (!(kh >= 0.0 && kh <= kPi)) {
        throw std::invalid_argument("SpectralParams: kh must lie in [0, pi]");
    }
    if (n_points < 7) {
        throw std::invalid_argument("SpectralParams: n_points must be >= 7");
    }
    if (node <= 1 || node >= n_points) {
        throw std::invalid_argument("SpectralParams: node must be interior (1 < node < n_points)");
    }
}

cplx g_exact(const SpectralParams& p)
{
    return std::exp(-cplx(p.pe * p.kh * p.kh - p.da, p.nc * p.kh));
}

RowSymbols row_symbols(const OperatorPair& ops, std::size_t node, double kh)
{
    return {ops.d1.row_symbol(node - 1, kh), ops.d2.row_symbol(node - 1, kh)};
}

cplx g_num(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops)
{
    const auto [s1, s2] = row_symbols(ops, p.node, p.kh);
    const double nc = p.nc;
    const double pe = p.pe;
    const double da = p.da;

    switch (scheme) {
    case SchemeId::ExplicitOucs3Cd2: {
        const double diff = pe * (std::cos(p.kh) - 1.0);
        const cplx g_star = 1.0 - nc * s1 + 2.0 * diff + da;
        return 1.0 - (0.5 * nc * s1 - diff - 0.5 * da) * (1.0 + g_star);
    }
    case SchemeId::ImplicitOucs3Lele: {
        const cplx x = nc * s1 - pe * s2;
        return (1.0 + 0.5 * da - 0.5 * x) / (1.0 - 0.5 * da + 0.5 * x);
    }
    case SchemeId::ImexOucs3Lele:
    case SchemeId::ImexNccd: {
        const cplx g_star = 1.0 + (da - (nc * s1 - pe * s2)) / (1.0 - 0.5 * da - 0.5 * pe * s2);
        return 1.0 - (0.5 * nc * s1 - 0.5 * pe * s2 - 0.5 * da) * (1.0 + g_star);
    }
    }
    throw std::invalid_argument("g_num: unknown scheme");
}

double phase_shift(cplx g)
{
    if (g == cplx(0.0, 0.0)) {
        throw SingularPointError("phase_shift: zero amplification factor");
    }
    const double beta = -std::atan2(g.imag(), g.real());
    // atan2 returns (-pi, pi]; negation maps pi to -pi.
    return beta <= -kPi ? kPi : beta;
}

cplx phase_speed_ratio(const SpectralParams& p, cplx g)
{
    const cplx num = cplx(std::log(std::abs(g)), -phase_shift(g));
    if (p.kh == 0.0) {
        if (p.da == 0.0) {
            throw SingularPointError("phase_speed_ratio: undefined at kh = 0 with Da = 0");
        }
        return num / p.da;
    }
    const cplx den = cplx((p.pe * p.kh * p.kh - p.da) / p.nc, p.kh);
    return -(1.0 / p.nc) * num / den;
}

double phase_speed_error(const SpectralParams& p, cplx g)
{
    return std::abs(1.0 - phase_speed_ratio(p, g));
}

double group_velocity_ratio(const std::function<cplx(double)>& g_of_kh, double kh, double nc)
{
    const double d = kVgHalfStep;
    double lo = kh - d;
    double hi = kh + d;
    // One-sided at the ends of [0, pi].
    if (lo < 0.0) {
        lo = kh;
    }
    if (hi > kPi) {
        hi = kh;
    }
    const double jump = wrap(phase_shift(g_of_kh(hi)) - phase_shift(g_of_kh(lo)));
    return jump / (hi - lo) / nc;
}

double group_velocity_ratio(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops)
{
    auto g = [&](double kh) {
        SpectralParams q = p;
        q.kh = kh;
        return g_num(scheme, q, ops);
    };
    return group_velocity_ratio(g, p.kh, p.nc);
}

cplx error_forcing(const SpectralParams& p, cplx g, double a0, double steps)
{
    if (a0 == 0.0) {
        return {0.0, 0.0};
    }
    const cplx ratio = phase_speed_ratio(p, g);
    const cplx symbol(p.pe * p.kh * p.kh - p.da, p.nc * p.kh);
    return a0 * symbol * (1.0 - ratio) * std::pow(g, steps);
}

cplx error_forcing_spectrum(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops,
                            const std::function<double(double)>& a0, double steps)
{
    return error_forcing(p, g_num(scheme, p, ops), a0(p.kh), steps);
}

DispersionPoint evaluate_point(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops)
{
    DispersionPoint pt;
    pt.kh = p.kh;
    pt.nc = p.nc;
    pt.g_num = g_num(scheme, p, ops);
    pt.g_ratio = std::abs(pt.g_num / g_exact(p));
    pt.beta = phase_shift(pt.g_num);
    if (p.kh == 0.0) {
        // Analytic limits at the mean mode.
        pt.vg_ratio = 1.0;
        pt.phase_err = 0.0;
    } else {
        pt.vg_ratio = group_velocity_ratio(scheme, p, ops);
        pt.phase_err = phase_speed_error(p, pt.g_num);
    }
    return pt;
}

DispersionMap sweep(SchemeId scheme, std::span<const double> kh_axis,
                    std::span<const double> nc_axis, double pe, double da, std::size_t node,
                    std::size_t n_points, kernels::Exec exec)
{
    const Grid1D grid(n_points, 1.0);
    return sweep(scheme, build_operators(scheme, grid), kh_axis, nc_axis, pe, da, node, exec);
}

DispersionMap sweep(SchemeId scheme, const OperatorPair& ops, std::span<const double> kh_axis,
                    std::span<const double> nc_axis, double pe, double da, std::size_t node,
                    kernels::Exec exec)
{
    DispersionMap map;
    map.scheme = scheme;
    map.kh.assign(kh_axis.begin(), kh_axis.end());
    map.nc.assign(nc_axis.begin(), nc_axis.end());
    map.pe = pe;
    map.da = da;
    map.node = node;
    map.n_points = ops.d1.size();
    map.points.resize(map.kh.size() * map.nc.size());

    for (std::size_t i = 1; i < map.kh.size(); ++i) {
        if (!(map.kh[i] > map.kh[i - 1])) {
            throw std::invalid_argument("sweep: kh axis must be increasing");
        }
    }
    for (std::size_t i = 1; i < map.nc.size(); ++i) {
        if (!(map.nc[i] > map.nc[i - 1])) {
            throw std::invalid_argument("sweep: nc axis must be increasing");
        }
    }
    for (double nc : map.nc) {
        if (!(nc > 0.0)) {
            throw std::invalid_argument("sweep: nc samples must be positive");
        }
    }
    SpectralParams base{0.0, 1.0, pe, da, node, map.n_points};
    for (double kh : map.kh) {
        base.kh = kh;
        base.validate();
    }

    const auto total = static_cast<std::ptrdiff_t>(map.points.size());
    const std::size_t nk = map.kh.size();
    auto fill = [&](std::ptrdiff_t idx) {
        const auto u = static_cast<std::size_t>(idx);
        SpectralParams p = base;
        p.nc = map.nc[u / nk];
        p.kh = map.kh[u % nk];
        map.points[u] = evaluate_point(scheme, p, ops);
    };
    if (exec == kernels::Exec::Serial) {
        for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
            fill(idx);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
            fill(idx);
        }
    }
    return map;
}

std::vector<double> linear_axis(double lo, double hi, std::size_t count, bool include_start)
{
    std::vector<double> axis(count);
    if (count == 1) {
        axis[0] = include_start ? lo : hi;
        return axis;
    }
    const double steps = static_cast<double>(include_start ? count - 1 : count);
    for (std::size_t i = 0; i < count; ++i) {
        const double k = static_cast<double>(include_start ? i : i + 1);
        axis[i] = lo + (hi - lo) * k / steps;
    }
    return axis;
}

double max_g_ratio(const DispersionMap& map, std::size_t i_nc)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < map.kh.size(); ++i) {
        worst = std::max(worst, map.at(i_nc, i).g_ratio);
    }
    return worst;
}

std::optional<double> stability_boundary(const DispersionMap& map, double tol)
{
    std::optional<double> edge;
    for (std::size_t i = 0; i < map.nc.size(); ++i) {
        if (max_g_ratio(map, i) > 1.0 + tol) {
            if (edge) {
                break;
            }
            continue;
        }
        edge = map.nc[i];
    }
    return edge;
}

void write_dispersion_csv(std::ostream& os, const DispersionMap& map)
{
    os << std::setprecision(12);
    os << "# scheme=" << scheme_name(map.scheme) << ",pe=" << map.pe << ",da=" << map.da
       << ",node=" << map.node << ",n_points=" << map.n_points << '\n';
    os << "kh,nc,g_ratio,vg_ratio,phase_err\n";
    for (std::size_t i = 0; i < map.nc.size(); ++i) {
        for (std::size_t j = 0; j < map.kh.size(); ++j) {
            const DispersionPoint& pt = map.at(i, j);
            os << pt.kh << ',' << pt.nc << ',' << pt.g_ratio << ',' << pt.vg_ratio << ','
               << pt.phase_err << '\n';
        }
    }
}

} // namespace adr
