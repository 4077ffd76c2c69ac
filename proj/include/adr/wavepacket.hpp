// SPDX-License-Identifier: Apache-2.0
#pragma once

// Wave-packet experiments for the 1D ADR schemes: Gaussian-cosine packet,
// free-space reference solution, spectrum, and upstream (q-wave) diagnostics.

#include <span>
#include <vector>

#include "adr/adr1d.hpp"

namespace adr {

struct WavePacketConfig {
    double gamma = 50.0;
    double x0 = 0.0;
    double k0h = 0.5;
    double L = 5.0;
    std::size_t n_points = 1001;
    /// Upstream window starts this many packet widths behind the advected center.
    double window_widths = 3.0;

    Grid1D grid() const { return Grid1D::spanning(-L, L, n_points); }
    double k0() const { return k0h / grid().h; }
    void validate() const;
};

/// Defaults c = 0.1, nu = 1e-4, lambda = -1, dt = 0.01 on the packet's grid.
AdrConfig default_adr_config(const WavePacketConfig& cfg);

struct SpectrumSample {
    double kh = 0.0;
    double amplitude = 0.0;
};

struct ExperimentResult {
    std::vector<SolutionState> snapshots;
    std::vector<SpectrumSample> spectrum;
    double q_wave_energy = 0.0;
    double amplitude_peak = 0.0;
    double asymmetry = 0.0;
};

SolutionState init_wavepacket(const WavePacketConfig& cfg);

/// DFT magnitudes |sum_j u_j e^{-2 pi i m j / N}| / N for m = 0 .. N-1, with
/// bin m reported at kh = 2 pi m / N folded into [0, pi].
std::vector<SpectrumSample> fourier_spectrum(std::span<const double> u);

/// Fourier amplitude of the initial packet, A0(k) for u0(x) = int A0(k) e^{ikx} dk.
double packet_amplitude(const WavePacketConfig& cfg, double k);

/// Free-space solution by adaptive quadrature over k (absolute tolerance 1e-8).
/// Throws std::domain_error when the packet is not negligible (> 1e-8 of the
/// peak) at the domain ends.
SolutionState exact_solution(const WavePacketConfig& cfg, const AdrConfig& adr, double t);

/// Packet width sqrt((1 + 4 gamma nu t) / gamma) after diffusive spreading.
double packet_width(const WavePacketConfig& cfg, const AdrConfig& adr, double t);

/// Share of discrete L2 energy upstream of x0 + c t - window_widths * width(t).
double q_wave_energy(std::span<const double> u, const WavePacketConfig& cfg, const AdrConfig& adr,
                     double t);

/// |E(x > xc) - E(x < xc)| / E with xc = x0 + c t.
double asymmetry(std::span<const double> u, const WavePacketConfig& cfg, const AdrConfig& adr,
                 double t);

double discrete_energy(std::span<const double> u);

ExperimentResult run_experiment(SchemeId scheme, const WavePacketConfig& cfg,
                                const AdrConfig& adr, double t_end,
                                std::span<const double> snapshot_times = {});

} // namespace adr
