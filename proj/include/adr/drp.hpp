// SPDX-License-Identifier: Apache-2.0
#pragma once

// Von Neumann analysis of the four ADR schemes: numerical and exact
// amplification factors, phase shift, phase-speed error, scaled group velocity
// and the forcing term of the error-propagation equation.

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "adr/adr1d.hpp"
#include "adr/kernels.hpp"

namespace adr {

using cplx = std::complex<double>;

struct SpectralParams {
    double kh = 0.0;
    double nc = 0.1;
    double pe = 0.01;
    double da = -0.01;
    std::size_t node = 500;      // 1-based
    std::size_t n_points = 1001;

    void validate() const;
};

struct DispersionPoint {
    double kh = 0.0;
    double nc = 0.0;
    cplx g_num{1.0, 0.0};
    double g_ratio = 1.0;
    double beta = 0.0;
    double vg_ratio = 1.0;
    double phase_err = 0.0;
};

struct DispersionMap {
    SchemeId scheme = SchemeId::ExplicitOucs3Cd2;
    std::vector<double> kh;
    std::vector<double> nc;
    double pe = 0.0;
    double da = 0.0;
    std::size_t node = 0;
    std::size_t n_points = 0;
    std::vector<DispersionPoint> points;   // nc-major: points[i_nc * kh.size() + i_kh]

    const DispersionPoint& at(std::size_t i_nc, std::size_t i_kh) const
    {
        return points[i_nc * kh.size() + i_kh];
    }
};

class SingularPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// exp(-(Pe kh^2 + i N_c kh - Da))
cplx g_exact(const SpectralParams& p);

/// Row symbols of the operator pair at row `node`.
struct RowSymbols {
    cplx s1;   // sum_r D1_jr e^{i kh (r - j)}
    cplx s2;   // same for D2
};
RowSymbols row_symbols(const OperatorPair& ops, std::size_t node, double kh);

cplx g_num(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops);

/// beta = -atan2(Im g, Re g), in (-pi, pi].
double phase_shift(cplx g);

/// c_num / c_exact for amplification factor g at p.
cplx phase_speed_ratio(const SpectralParams& p, cplx g);
/// |1 - c_num/c_exact|. At kh = 0 the Da-only limit is returned; throws
/// SingularPointError when that limit does not exist (Da = 0).
double phase_speed_error(const SpectralParams& p, cplx g);

inline constexpr double kVgHalfStep = 1e-4;

/// (1/N_c) d beta / d kh by central difference with unwrapped beta.
double group_velocity_ratio(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops);

/// Same differencing rule applied to an arbitrary amplification function of kh.
double group_velocity_ratio(const std::function<cplx(double)>& g_of_kh, double kh, double nc);

/// Integrand of the error-propagation forcing at p.kh,
///   A0(k) (i N_c kh + Pe kh^2 - Da) (1 - c_num/c_exact) g^steps,
/// in units of 1/dt, with steps = t/dt.
cplx error_forcing(const SpectralParams& p, cplx g, double a0, double steps);
cplx error_forcing_spectrum(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops,
                            const std::function<double(double)>& a0, double steps);

DispersionPoint evaluate_point(SchemeId scheme, const SpectralParams& p, const OperatorPair& ops);

DispersionMap sweep(SchemeId scheme, std::span<const double> kh_axis,
                    std::span<const double> nc_axis, double pe, double da, std::size_t node,
                    std::size_t n_points, kernels::Exec exec = kernels::Exec::Parallel);
DispersionMap sweep(SchemeId scheme, const OperatorPair& ops, std::span<const double> kh_axis,
                    std::span<const double> nc_axis, double pe, double da, std::size_t node,
                    kernels::Exec exec = kernels::Exec::Parallel);

/// Evenly spaced samples; `include_start` false drops the first point
/// (for axes like N_c in (0, max]).
std::vector<double> linear_axis(double lo, double hi, std::size_t count, bool include_start = true);

inline constexpr double kStabilityTolerance = 1e-3;

/// Upper end of the first contiguous run of N_c samples whose largest G ratio
/// over the kh axis is <= 1 + tol. Unstable samples below that run (small-N_c
/// reaction-dominated corner) are skipped. Empty when no sample is stable.
std::optional<double> stability_boundary(const DispersionMap& map,
                                         double tol = kStabilityTolerance);

/// Largest G ratio over the kh axis at N_c sample i_nc.
double max_g_ratio(const DispersionMap& map, std::size_t i_nc);

void write_dispersion_csv(std::ostream& os, const DispersionMap& map);

} // namespace adr
