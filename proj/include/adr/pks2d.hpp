// SPDX-License-Identifier: Apache-2.0
#pragma once

// Finite-volume solver for the 2D Patlak-Keller-Segel system
//   rho_t + chi div(rho grad c) = lap rho
//   c_t = lap c - c + rho
// on a uniform cell-centered mesh with zero-Neumann boundaries. Edge values of
// rho are upwind reconstructions from limited slopes, which keeps rho >= 0.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "adr/kernels.hpp"
#include "adr/linalg.hpp"

namespace adr {

enum class PksVariant { ExplicitOucs3Cd2, ImexNccd };

std::string_view variant_name(PksVariant v);
std::optional<PksVariant> parse_variant(std::string_view name);

struct Mesh2D {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double h = 0.0;        // x spacing
    double k = 0.0;        // y spacing
    double x_origin = 0.0; // lower-left corner
    double y_origin = 0.0;

    /// n x n cells on [-1/2, 1/2]^2.
    static Mesh2D centered_square(std::size_t n);

    void validate() const;
    std::size_t size() const { return nx * ny; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
    /// Cell centers, computed about the mesh midpoint so mirrored cells are exact negatives.
    double xc(std::size_t i) const;
    double yc(std::size_t j) const;
};

struct Field2D {
    Mesh2D mesh;
    std::vector<double> values;

    Field2D() = default;
    explicit Field2D(const Mesh2D& m, double fill = 0.0) : mesh(m), values(m.size(), fill) {}

    double& operator()(std::size_t i, std::size_t j) { return values[mesh.index(i, j)]; }
    double operator()(std::size_t i, std::size_t j) const { return values[mesh.index(i, j)]; }
};

struct PksState {
    Field2D rho;
    Field2D c;
    double t = 0.0;
    double chi = 30.0;
    double theta = 1.0;   // clamped to [1, 2] on use
};

/// Edge arrays: x-edges (nx+1) x ny indexed j*(nx+1)+i for edge i-1/2,
/// y-edges nx x (ny+1) indexed j*nx+i for edge j-1/2.
struct EdgeFluxes {
    std::vector<double> P;
    std::vector<double> Q;
};

struct Velocity {
    Field2D u;                  // c_x at centers
    Field2D v;                  // c_y at centers
    std::vector<double> u_edge; // x-edge layout of EdgeFluxes::P
    std::vector<double> v_edge; // y-edge layout of EdgeFluxes::Q
};

struct Slopes {
    Field2D rho_x;
    Field2D rho_y;
};

struct EdgeValues {
    std::vector<double> x_edge;   // rho_{i+1/2,j}, x-edge layout
    std::vector<double> y_edge;   // rho_{i,j+1/2}, y-edge layout
};

struct PksDiagnostics {
    double t = 0.0;
    double mass = 0.0;
    double min_rho = 0.0;
    double max_rho = 0.0;
    double oscillation = 0.0;
};

class PositivityError : public std::runtime_error {
public:
    PositivityError(double t, std::size_t i, std::size_t j, double value);
    double time() const { return t_; }
    std::size_t i() const { return i_; }
    std::size_t j() const { return j_; }
    double value() const { return value_; }

private:
    double t_;
    std::size_t i_;
    std::size_t j_;
    double value_;
};

double minmod(double a, double b);
double minmod(double a, double b, double c);

PksState init_gaussian(const Mesh2D& mesh, double amplitude_rho = 1000.0,
                       double width_rho = 100.0, double amplitude_c = 500.0,
                       double width_c = 50.0);

/// Per-variant spatial operators on one mesh. For the IMEX variant the NCCD
/// matrices are built once on ghost-extended lines and reduced to n x n.
class PksDiscretization {
public:
    PksDiscretization(const Mesh2D& mesh, PksVariant variant,
                      kernels::Exec exec = kernels::Exec::Parallel);

    const Mesh2D& mesh() const { return mesh_; }
    PksVariant variant() const { return variant_; }
    kernels::Exec exec() const { return exec_; }

    Velocity chemotactic_velocity(const Field2D& c) const;
    Field2D laplacian(const Field2D& f) const;
    /// -(P_{i+1/2}-P_{i-1/2})/h - (Q_{j+1/2}-Q_{j-1/2})/k
    Field2D flux_divergence(const Field2D& rho, const Field2D& c, double chi, double theta) const;
    Field2D rho_rhs(const PksState& s) const;
    Field2D c_rhs(const PksState& s) const;

    /// Effective n x n line operators (dimensionless) used by the IMEX variant.
    const Matrix& d1x() const { return d1x_; }
    const Matrix& d2x() const { return d2x_; }
    const Matrix& d1y() const { return d1y_; }
    const Matrix& d2y() const { return d2y_; }

private:
    Mesh2D mesh_;
    PksVariant variant_;
    kernels::Exec exec_;
    Matrix d1x_, d2x_, d1y_, d2y_;
};

/// Ghost-mirrored NCCD line operators: the (n+2)-point operator applied to
/// [f_0, f_0, f_1, ..., f_{n-1}, f_{n-1}] and read back at rows 1..n. Both
/// near-wall rows use the left closure parameter and its mirror image.
struct MirroredLineOperators {
    Matrix d1;
    Matrix d2;
};
MirroredLineOperators mirrored_nccd(std::size_t n);

Slopes adaptive_slopes(const Field2D& rho, double theta);
EdgeValues reconstruct_edges(const Field2D& rho, const Slopes& slopes, const Velocity& vel);
EdgeFluxes edge_fluxes(const EdgeValues& edges, const Velocity& vel, double chi);

Velocity chemotactic_velocity(const Field2D& c, PksVariant variant);
Field2D rho_rhs(const PksState& s, PksVariant variant);
Field2D c_rhs(const PksState& s, PksVariant variant);

class PksSolver {
public:
    PksSolver(const Mesh2D& mesh, PksVariant variant,
              kernels::Exec exec = kernels::Exec::Parallel);

    const PksDiscretization& discretization() const { return disc_; }

    /// One step of size dt. Throws PositivityError if rho < 0 afterwards and
    /// std::runtime_error on non-finite values.
    PksState step(const PksState& s, double dt) const;

private:
    PksState step_explicit(const PksState& s, double dt) const;
    PksState step_imex(const PksState& s, double dt) const;
    void prepare_imex(double dt) const;

    PksDiscretization disc_;
    // IMEX line factors, rebuilt when dt changes.
    mutable double factored_dt_ = -1.0;
    mutable std::optional<LuFactor> rho_x_, rho_y_, c_x_, c_y_;
};

PksState step(const PksState& s, double dt, PksVariant variant);

/// Row of rho through the domain center from the middle outward: (r, rho) pairs.
std::vector<std::pair<double, double>> radial_profile(const Field2D& rho);

/// Sum of max(0, p_i - max(p_{i-1}, p_{i+1})) over interior samples with r >= r_min.
double oscillation_metric(std::span<const double> r, std::span<const double> profile,
                          double r_min);

/// Mass, extrema and oscillation metric (central 10% of the radius excluded).
PksDiagnostics diagnostics(const PksState& s);

double total_mass(const Field2D& f);

} // namespace adr
