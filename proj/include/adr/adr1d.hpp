// SPDX-License-Identifier: Apache-2.0
#pragma once

// Time steppers for the 1D linear advection-diffusion-reaction equation
//   u_t + c u_x = nu u_xx + lambda u
// with Dirichlet data held at both end nodes.

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adr/compact.hpp"
#include "adr/linalg.hpp"

namespace adr {

enum class SchemeId { ExplicitOucs3Cd2, ImplicitOucs3Lele, ImexOucs3Lele, ImexNccd };

inline constexpr std::array<SchemeId, 4> kAllSchemes = {
    SchemeId::ExplicitOucs3Cd2, SchemeId::ImplicitOucs3Lele, SchemeId::ImexOucs3Lele,
    SchemeId::ImexNccd};

/// Stable command-line spelling, e.g. "explicit-oucs3-cd2".
std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

struct AdrConfig {
    double c = 0.1;
    double nu = 1e-4;
    double lambda = -1.0;
    double dt = 0.01;
    Grid1D grid;

    double nc() const { return c * dt / grid.h; }
    double pe() const { return nu * dt / (grid.h * grid.h); }
    double da() const { return lambda * dt; }

    /// Physical parameters realizing the given nondimensional triple with dt = 1 step.
    static AdrConfig from_numbers(double nc, double pe, double da, const Grid1D& grid,
                                  double dt = 1.0);
    /// Throws std::invalid_argument unless c > 0, nu > 0, dt > 0 and the grid is valid.
    void validate() const;
};

struct SolutionState {
    std::vector<double> values;
    double t = 0.0;
};

struct OperatorPair {
    DerivativeOperator d1;
    DerivativeOperator d2;
};

/// The (first, second) derivative operators a scheme discretizes with.
OperatorPair build_operators(SchemeId scheme, const Grid1D& grid);

class InstabilityError : public std::runtime_error {
public:
    InstabilityError(std::size_t step, std::size_t node, double value);
    std::size_t step() const { return step_; }
    std::size_t node() const { return node_; }

private:
    std::size_t step_;
    std::size_t node_;
};

/// One scheme bound to one configuration. Implicit stage matrices are
/// factored at construction and reused by every step.
class Stepper {
public:
    Stepper(SchemeId scheme, const AdrConfig& cfg);
    Stepper(SchemeId scheme, const AdrConfig& cfg, OperatorPair ops);

    SchemeId scheme() const { return scheme_; }
    const AdrConfig& config() const { return cfg_; }
    const OperatorPair& operators() const { return ops_; }

    /// Advances u by one dt in place. End values are treated as Dirichlet data.
    void advance(std::span<double> u) const;
    SolutionState step(const SolutionState& s) const;

    /// One step applied to a complex field (real and imaginary parts stepped
    /// separately; the schemes are linear).
    std::vector<std::complex<double>> step_complex(std::span<const std::complex<double>> u) const;

private:
    void build();

    SchemeId scheme_;
    AdrConfig cfg_;
    OperatorPair ops_;
    Matrix rhs_op_;                          // L = -N_c D1 + Pe D2 + Da I
    Matrix stage_rhs_;                       // implicit stage: right-hand operator
    std::shared_ptr<const LuFactor> stage_lu_;   // implicit stage: factored left-hand side
};

SolutionState step_explicit_rk2(const SolutionState& s, const AdrConfig& cfg,
                                const DerivativeOperator& d1, const DerivativeOperator& d2);
SolutionState step_implicit_midpoint(const SolutionState& s, const AdrConfig& cfg,
                                     const DerivativeOperator& d1, const DerivativeOperator& d2);
/// IMEX step for either operator pair (OUCS3/Lele or NCCD).
SolutionState step_imex(const SolutionState& s, const AdrConfig& cfg,
                        const DerivativeOperator& d1, const DerivativeOperator& d2);

/// Steps from u0 to t_end. The result holds one state per entry of the
/// ascending snapshot_times (each taken at the nearest completed step),
/// followed by the final state when t_end is not itself a snapshot, so the
/// last entry is always the state at t_end.
std::vector<SolutionState> run(SchemeId scheme, const AdrConfig& cfg, const SolutionState& u0,
                               double t_end, std::span<const double> snapshot_times = {});
std::vector<SolutionState> run(const Stepper& stepper, const SolutionState& u0, double t_end,
                               std::span<const double> snapshot_times = {});

} // namespace adr
