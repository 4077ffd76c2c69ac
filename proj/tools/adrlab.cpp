// adrlab: dispersion maps, wave-packet experiments and PKS runs from the command line.
//
// Exit codes: 0 success, 2 argument error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adr/adr1d.hpp"
#include "adr/drp.hpp"
#include "adr/kernels.hpp"
#include "adr/pks2d.hpp"
#include "adr/wavepacket.hpp"

namespace fs = std::filesystem;
using namespace adr;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    int threads = 0;
    std::string out_dir = ".";
};

struct DispersionArgs {
    std::string scheme = "explicit-oucs3-cd2";
    double pe = 0.01;
    double da = -0.01;
    std::size_t n = 1001;
    std::size_t node = 500;
    double kh_min = 0.0;
    double kh_max = std::numbers::pi;
    std::size_t kh_count = 64;
    double nc_max = 2.0;
    std::size_t nc_count = 64;
};

struct WavepacketArgs {
    std::string scheme = "imex-nccd";
    std::vector<double> gamma{50.0};
    std::vector<std::size_t> n{1001};
    double k0h = 0.5;
    double x0 = 0.0;
    double half_length = 5.0;
    double c = 0.1;
    double nu = 1e-4;
    double lambda = -1.0;
    double dt = 0.01;
    double t_end = 10.0;
    std::vector<double> snapshots;
};

struct PksArgs {
    std::string variant = "explicit-oucs3-cd2";
    std::size_t cells = 200;
    double dt = 1e-8;
    double t_end = 1e-5;
    double chi = 30.0;
    double theta = 1.0;
    std::size_t log_every = 100;
};

std::ofstream open_output(const Common& c, const std::string& name)
{
    fs::create_directories(c.out_dir);
    const fs::path path = fs::path(c.out_dir) / name;
    std::ofstream os(path);
    if (!os) {
        throw UsageError("cannot write " + path.string());
    }
    os << std::setprecision(12);
    return os;
}

// Compact decimal token for file names: 50 -> "50", 1e4 -> "10000", 0.5 -> "0.5".
std::string token(double v)
{
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

SchemeId scheme_or_throw(const std::string& name)
{
    const auto s = parse_scheme(name);
    if (!s) {
        throw UsageError("unknown scheme '" + name + "'");
    }
    return *s;
}

int cmd_dispersion_map(const Common& common, const DispersionArgs& a)
{
    const SchemeId scheme = scheme_or_throw(a.scheme);
    if (a.kh_count == 0 || a.nc_count == 0) {
        throw UsageError("axis counts must be positive");
    }
    if (!(a.nc_max > 0.0)) {
        throw UsageError("--nc-max must be positive");
    }
    const auto kh = linear_axis(a.kh_min, a.kh_max, a.kh_count);
    const auto nc = linear_axis(0.0, a.nc_max, a.nc_count, false);
    const DispersionMap map = sweep(scheme, kh, nc, a.pe, a.da, a.node, a.n);

    const std::string file = "dispersion_" + a.scheme + ".csv";
    auto os = open_output(common, file);
    write_dispersion_csv(os, map);

    std::cout << std::setprecision(12);
    const auto edge = stability_boundary(map);
    std::cout << "scheme " << a.scheme << ": stability boundary N_c = ";
    if (edge) {
        std::cout << *edge << '\n';
    } else {
        std::cout << "none\n";
    }
    std::cout << "wrote " << (fs::path(common.out_dir) / file).string() << '\n';
    return 0;
}

void write_snapshot(const Common& common, const std::string& name, const Grid1D& grid,
                    const SolutionState& s, const std::vector<double>* exact)
{
    auto os = open_output(common, name);
    os << (exact ? "x,u,exact\n" : "x,u\n");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        os << grid.x(i) << ',' << s.values[i];
        if (exact) {
            os << ',' << (*exact)[i];
        }
        os << '\n';
    }
}

int cmd_wavepacket(const Common& common, const WavepacketArgs& a)
{
    const SchemeId scheme = scheme_or_throw(a.scheme);
    std::vector<double> times = a.snapshots;
    std::sort(times.begin(), times.end());
    std::cout << std::setprecision(12);

    for (double gamma : a.gamma) {
        for (std::size_t n : a.n) {
            WavePacketConfig w;
            w.gamma = gamma;
            w.n_points = n;
            w.k0h = a.k0h;
            w.x0 = a.x0;
            w.L = a.half_length;
            w.validate();
            AdrConfig adr = default_adr_config(w);
            adr.c = a.c;
            adr.nu = a.nu;
            adr.lambda = a.lambda;
            adr.dt = a.dt;
            adr.validate();

            const ExperimentResult r = run_experiment(scheme, w, adr, a.t_end, times);
            const Grid1D grid = w.grid();
            const std::string stem = a.scheme + "_" + token(gamma) + "_" + std::to_string(n);

            for (const SolutionState& s : r.snapshots) {
                std::vector<double> exact;
                bool have_exact = true;
                try {
                    exact = exact_solution(w, adr, s.t).values;
                } catch (const std::domain_error&) {
                    have_exact = false;
                }
                write_snapshot(common, stem + "_t" + token(s.t) + ".csv", grid, s,
                               have_exact ? &exact : nullptr);
            }
            {
                auto os = open_output(common, stem + "_spectrum.csv");
                os << "kh,amplitude\n";
                for (const SpectrumSample& p : r.spectrum) {
                    os << p.kh << ',' << p.amplitude << '\n';
                }
            }

            const std::size_t node = (n + 1) / 2;
            const SpectralParams sp{w.k0h, adr.nc(), adr.pe(), adr.da(), node, n};
            const DispersionPoint pt =
                evaluate_point(scheme, sp, build_operators(scheme, Grid1D(n, 1.0)));
            std::cout << "scheme=" << a.scheme << " gamma=" << gamma << " n=" << n
                      << " t=" << a.t_end << " q_wave_energy=" << r.q_wave_energy
                      << " peak=" << r.amplitude_peak << " asymmetry=" << r.asymmetry
                      << " g_ratio=" << pt.g_ratio << " vg_ratio=" << pt.vg_ratio
                      << " phase_err=" << pt.phase_err << '\n';
        }
    }
    return 0;
}

void write_fields(const Common& common, const std::string& name, const PksState& s)
{
    auto os = open_output(common, name);
    const Mesh2D& m = s.rho.mesh;
    os << "x,y,rho,c\n";
    for (std::size_t j = 0; j < m.ny; ++j) {
        for (std::size_t i = 0; i < m.nx; ++i) {
            os << m.xc(i) << ',' << m.yc(j) << ',' << s.rho(i, j) << ',' << s.c(i, j) << '\n';
        }
    }
}

int cmd_pks(const Common& common, const PksArgs& a)
{
    const auto variant = parse_variant(a.variant);
    if (!variant) {
        throw UsageError("unknown variant '" + a.variant + "'");
    }
    if (!(a.dt > 0.0) || a.t_end < 0.0) {
        throw UsageError("--dt must be positive and --t-end non-negative");
    }
    const Mesh2D mesh = Mesh2D::centered_square(a.cells);
    const PksSolver solver(mesh, *variant);
    PksState s = init_gaussian(mesh);
    s.chi = a.chi;
    s.theta = a.theta;

    const auto steps = static_cast<std::size_t>(std::llround(a.t_end / a.dt));
    const std::string stem = "pks_" + a.variant;
    auto history = open_output(common, stem + "_history.csv");
    history << "step,t,mass,min_rho,max_rho,oscillation\n";
    auto log = [&](std::size_t step) {
        const PksDiagnostics d = diagnostics(s);
        history << step << ',' << d.t << ',' << d.mass << ',' << d.min_rho << ',' << d.max_rho
                << ',' << d.oscillation << '\n';
        return d;
    };

    log(0);
    std::size_t done = 0;
    int status = 0;
    std::string failure;
    try {
        for (std::size_t k = 1; k <= steps; ++k) {
            s = solver.step(s, a.dt);
            done = k;
            if (a.log_every > 0 && (k % a.log_every == 0) && k != steps) {
                log(k);
            }
        }
    } catch (const PositivityError& e) {
        std::ostringstream os;
        os << std::setprecision(12) << "positivity violated at t = " << e.time() << " in cell ("
           << e.i() << ", " << e.j() << "): rho = " << e.value();
        failure = os.str();
        status = kExitNumerical;
    } catch (const std::runtime_error& e) {
        failure = e.what();
        status = kExitNumerical;
    }
    const PksDiagnostics final_diag = log(done);
    history.close();

    write_fields(common, stem + "_final.csv", s);
    {
        auto os = open_output(common, stem + "_radial.csv");
        os << "r,rho\n";
        for (const auto& [r, v] : radial_profile(s.rho)) {
            os << r << ',' << v << '\n';
        }
    }
    {
        nlohmann::ordered_json j;
        j["variant"] = a.variant;
        j["cells"] = a.cells;
        j["dt"] = a.dt;
        j["t_end"] = a.t_end;
        j["chi"] = a.chi;
        j["theta"] = a.theta;
        j["steps_completed"] = done;
        j["completed"] = status == 0;
        if (status != 0) {
            j["failure"] = failure;
        }
        j["t"] = final_diag.t;
        j["mass"] = final_diag.mass;
        j["min_rho"] = final_diag.min_rho;
        j["max_rho"] = final_diag.max_rho;
        j["oscillation"] = final_diag.oscillation;
        auto os = open_output(common, stem + "_final.json");
        os << j.dump(2) << '\n';
    }

    std::cout << std::setprecision(12) << "variant=" << a.variant << " steps=" << done
              << " t=" << final_diag.t << " mass=" << final_diag.mass
              << " min_rho=" << final_diag.min_rho << " max_rho=" << final_diag.max_rho
              << " oscillation=" << final_diag.oscillation << '\n';
    if (status != 0) {
        std::cerr << "adrlab pks: " << failure << '\n';
    }
    return status;
}

std::vector<std::string> scheme_names()
{
    std::vector<std::string> v;
    for (SchemeId s : kAllSchemes) {
        v.emplace_back(scheme_name(s));
    }
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"adrlab: compact-scheme ADR analysis, wave packets and PKS runs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file overriding defaults; flags override the file");

    Common common;
    if (const char* env = std::getenv("ADRLAB_OUT")) {
        common.out_dir = env;
    }
    app.add_option("--threads", common.threads, "worker threads (0 = machine parallelism)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("-o,--out", common.out_dir, "output directory (default from ADRLAB_OUT)")
        ->capture_default_str();

    DispersionArgs da;
    auto* disp = app.add_subcommand("dispersion-map", "amplification, group velocity and "
                                                      "phase error over a (kh, N_c) grid");
    disp->add_option("--scheme", da.scheme, "scheme")
        ->capture_default_str()
        ->check(CLI::IsMember(scheme_names()));
    disp->add_option("--pe", da.pe, "Peclet number nu dt / h^2 [-]")->capture_default_str();
    disp->add_option("--da", da.da, "Damkohler number lambda dt [-]")->capture_default_str();
    disp->add_option("--n", da.n, "grid points [-]")->capture_default_str();
    disp->add_option("--node", da.node, "analysis node, 1-based [-]")->capture_default_str();
    disp->add_option("--kh-min", da.kh_min, "first kh sample [rad]")->capture_default_str();
    disp->add_option("--kh-max", da.kh_max, "last kh sample [rad]")->capture_default_str();
    disp->add_option("--kh-count", da.kh_count, "kh samples [-]")->capture_default_str();
    disp->add_option("--nc-max", da.nc_max, "largest CFL number, axis is (0, max] [-]")
        ->capture_default_str();
    disp->add_option("--nc-count", da.nc_count, "N_c samples [-]")->capture_default_str();

    WavepacketArgs wa;
    auto* wave = app.add_subcommand("wavepacket", "Gaussian-cosine packet experiment");
    wave->add_option("--scheme", wa.scheme, "scheme")
        ->capture_default_str()
        ->check(CLI::IsMember(scheme_names()));
    wave->add_option("--gamma", wa.gamma, "packet sharpness, one run per value [1/length^2]")
        ->capture_default_str();
    wave->add_option("--n", wa.n, "grid points, one run per value [-]")->capture_default_str();
    wave->add_option("--k0h", wa.k0h, "carrier wavenumber times h [rad]")->capture_default_str();
    wave->add_option("--x0", wa.x0, "initial packet center [length]")->capture_default_str();
    wave->add_option("--half-length", wa.half_length, "domain is [-L, L] [length]")
        ->capture_default_str();
    wave->add_option("--c", wa.c, "advection speed [length/time]")->capture_default_str();
    wave->add_option("--nu", wa.nu, "diffusion coefficient [length^2/time]")
        ->capture_default_str();
    wave->add_option("--lambda", wa.lambda, "reaction rate [1/time]")->capture_default_str();
    wave->add_option("--dt", wa.dt, "time step [time]")->capture_default_str();
    wave->add_option("--t-end", wa.t_end, "final time [time]")->capture_default_str();
    wave->add_option("--snapshot", wa.snapshots, "extra snapshot times [time]");

    PksArgs pa;
    auto* pks = app.add_subcommand("pks", "Patlak-Keller-Segel blowup run on [-1/2, 1/2]^2");
    pks->add_option("--variant", pa.variant, "time integration variant")
        ->capture_default_str()
        ->check(CLI::IsMember({std::string("explicit-oucs3-cd2"), std::string("imex-nccd")}));
    pks->add_option("--cells", pa.cells, "cells per direction (mesh 1/cells) [-]")
        ->capture_default_str();
    pks->add_option("--dt", pa.dt, "time step [time]")->capture_default_str();
    pks->add_option("--t-end", pa.t_end, "final time [time]")->capture_default_str();
    pks->add_option("--chi", pa.chi, "chemotactic sensitivity [-]")->capture_default_str();
    pks->add_option("--theta", pa.theta, "limiter parameter in [1, 2] [-]")
        ->capture_default_str();
    pks->add_option("--log-every", pa.log_every, "diagnostics interval, 0 = ends only [steps]")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    kernels::set_thread_count(common.threads);
    try {
        if (disp->parsed()) {
            return cmd_dispersion_map(common, da);
        }
        if (wave->parsed()) {
            return cmd_wavepacket(common, wa);
        }
        return cmd_pks(common, pa);
    } catch (const UsageError& e) {
        std::cerr << "adrlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "adrlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InstabilityError& e) {
        std::cerr << "adrlab: instability at step " << e.step() << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "adrlab: " << e.what() << '\n';
        return kExitNumerical;
    }
}
