#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "adr/linalg.hpp"
#include "adr/wavepacket.hpp"

using namespace adr;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form free-space solution of u_t + c u_x = nu u_xx + lambda u for the
// Gaussian-cosine packet: heat evolution of exp(-gamma xi^2 + i k0 xi).
double closed_form(const WavePacketConfig& w, const AdrConfig& a, double x, double t)
{
    const double tau = a.nu * t;
    const double s = 1.0 + 4.0 * w.gamma * tau;
    const double xi = x - w.x0 - a.c * t;
    const double k0 = w.k0();
    const std::complex<double> e((-w.gamma * xi * xi - k0 * k0 * tau) / s, k0 * xi / s);
    return std::exp(a.lambda * t) / std::sqrt(s) * std::exp(e).real();
}

std::complex<double> direct_dft(const std::vector<double>& u, std::size_t m)
{
    const double n = static_cast<double>(u.size());
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        s += u[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(m * j) / n);
    }
    return s / n;
}

} // namespace

TEST_CASE("packet configuration checks")
{
    WavePacketConfig w;
    CHECK_NOTHROW(w.validate());
    CHECK(w.grid().h == doctest::Approx(0.01));
    CHECK(w.k0() == doctest::Approx(50.0));
    w.gamma = -1.0;
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
    w = WavePacketConfig{};
    w.k0h = 4.0;
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_CASE("initial packet shape")
{
    WavePacketConfig w;
    const auto u50 = init_wavepacket(w);
    CHECK(u50.values[500] == doctest::Approx(1.0));
    CHECK(std::abs(u50.values[400]) < 1e-20);   // x = -1
    CHECK(std::abs(u50.values[600]) < 1e-20);   // x = +1

    w.gamma = 1e4;
    const auto u4 = init_wavepacket(w);
    CHECK(u4.values[501] == doctest::Approx(std::exp(-1.0) * std::cos(0.5)));
}

TEST_CASE("spectrum of simple signals")
{
    const std::vector<double> flat(64, 2.0);
    const auto s = fourier_spectrum(flat);
    REQUIRE(s.size() == 64);
    CHECK(s[0].kh == 0.0);
    CHECK(s[0].amplitude == doctest::Approx(2.0));
    for (std::size_t m = 1; m < s.size(); ++m) {
        CHECK(s[m].amplitude <= 1e-13);
    }

    std::vector<double> wave(100);
    for (std::size_t j = 0; j < wave.size(); ++j) {
        wave[j] = std::cos(2.0 * kPi * 10.0 * static_cast<double>(j) / 100.0);
    }
    const auto c = fourier_spectrum(wave);
    CHECK(c[10].amplitude == doctest::Approx(0.5));
    CHECK(c[90].amplitude == doctest::Approx(0.5));
    CHECK(c[90].kh == doctest::Approx(c[10].kh));
    CHECK(c[10].kh == doctest::Approx(2.0 * kPi * 0.1));
    for (const auto& p : c) {
        CHECK(p.kh >= 0.0);
        CHECK(p.kh <= kPi + 1e-15);
    }
}

TEST_CASE("spectrum agrees with a direct DFT")
{
    WavePacketConfig w;
    w.n_points = 201;
    w.gamma = 30.0;
    const auto u = init_wavepacket(w).values;
    const auto s = fourier_spectrum(u);
    for (std::size_t m : {0u, 3u, 17u, 100u, 150u}) {
        CHECK(s[m].amplitude == doctest::Approx(std::abs(direct_dft(u, m))).epsilon(1e-10));
    }
}

TEST_CASE("a narrow packet spreads its spectrum over more wavenumbers")
{
    auto band_energy = [](double gamma) {
        WavePacketConfig w;
        w.gamma = gamma;
        const auto s = fourier_spectrum(init_wavepacket(w).values);
        double band = 0.0, total = 0.0;
        for (const auto& p : s) {
            const double e = p.amplitude * p.amplitude;
            total += e;
            if (p.kh > 1.0) {
                band += e;
            }
        }
        return band / total;
    };
    CHECK(band_energy(1e4) > 10.0 * band_energy(50.0));
}

TEST_CASE("quadrature solution matches the closed form")
{
    WavePacketConfig w;
    const AdrConfig a = default_adr_config(w);
    const Grid1D g = w.grid();
    for (double t : {0.0, 2.5, 10.0}) {
        const auto u = exact_solution(w, a, t);
        double err = 0.0;
        for (std::size_t i = 0; i < g.n_points; ++i) {
            err = std::max(err, std::abs(u.values[i] - closed_form(w, a, g.x(i), t)));
        }
        CHECK(err <= 1e-8);
    }

    AdrConfig pure = a;
    pure.nu = 1e-12;
    pure.lambda = 0.0;
    const auto shifted = exact_solution(w, pure, 5.0);
    CHECK(shifted.values[550] == doctest::Approx(1.0).epsilon(1e-8));   // x = 0.5
}

TEST_CASE("quadrature solution rejects packets touching the boundary")
{
    WavePacketConfig w;
    w.gamma = 0.1;
    CHECK_THROWS_AS(exact_solution(w, default_adr_config(w), 1.0), std::domain_error);
}

TEST_CASE("exact solution carries no upstream energy and is symmetric")
{
    WavePacketConfig w;
    const AdrConfig a = default_adr_config(w);
    const auto u = exact_solution(w, a, 10.0);
    CHECK(q_wave_energy(u.values, w, a, 10.0) < 1e-6);
    CHECK(asymmetry(u.values, w, a, 10.0) < 1e-10);
}

TEST_CASE("packet width and window guards")
{
    WavePacketConfig w;
    const AdrConfig a = default_adr_config(w);
    CHECK(packet_width(w, a, 0.0) == doctest::Approx(std::sqrt(1.0 / 50.0)));
    CHECK(packet_width(w, a, 10.0) == doctest::Approx(std::sqrt(1.2 / 50.0)));
    const auto u = init_wavepacket(w).values;
    CHECK_THROWS_AS(q_wave_energy(u, w, a, 0.0), std::invalid_argument);
    w.window_widths = 1e4;
    CHECK_THROWS_AS(q_wave_energy(u, w, a, 1.0), std::invalid_argument);
}

TEST_CASE("discrete energy decays for every scheme")
{
    WavePacketConfig w;
    w.n_points = 201;
    const AdrConfig a = default_adr_config(w);
    const std::vector<double> times{2.0, 4.0, 6.0, 8.0};
    for (SchemeId s : kAllSchemes) {
        const auto res = run_experiment(s, w, a, 10.0, times);
        REQUIRE(res.snapshots.size() == 5);
        double prev = discrete_energy(init_wavepacket(w).values);
        for (const auto& snap : res.snapshots) {
            const double e = discrete_energy(snap.values);
            CHECK(e < prev);
            prev = e;
        }
    }
}

TEST_CASE("experiment at t = 0 reports the initial packet")
{
    WavePacketConfig w;
    w.n_points = 201;
    const AdrConfig a = default_adr_config(w);
    const auto res = run_experiment(SchemeId::ImexNccd, w, a, 0.0);
    CHECK(res.snapshots.back().values == init_wavepacket(w).values);
    CHECK(res.amplitude_peak == doctest::Approx(1.0));
    CHECK(res.q_wave_energy == 0.0);
    CHECK(res.spectrum.size() == 201);

    AdrConfig other = a;
    other.grid = Grid1D::spanning(-5.0, 5.0, 101);
    CHECK_THROWS_AS(run_experiment(SchemeId::ImexNccd, w, other, 1.0), std::invalid_argument);
}
