// SPDX-License-Identifier: Apache-2.0
#include "adr/adr1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adr/kernels.hpp"

namespace adr {

namespace {

constexpr std::array<std::string_view, 4> kNames = {
    "explicit-oucs3-cd2", "implicit-oucs3-lele", "imex-oucs3-lele", "imex-nccd"};

void check_operators(const AdrConfig& cfg, const DerivativeOperator& d1,
                     const DerivativeOperator& d2)
{
    const std::size_t n = cfg.grid.n_points;
    if (d1.size() != n || d2.size() != n || d1.order != 1 || d2.order != 2) {
        throw DimensionError("stepper: operators do not match the grid");
    }
}

// Replaces row i with the identity row.
void identity_row(Matrix& m, std::size_t i)
{
    for (double& v : m.row(i)) {
        v = 0.0;
    }
    m(i, i) = 1.0;
}

Matrix scaled_identity_plus(double diag, const Matrix& a, double s)
{
    Matrix m = a;
    m *= s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m(i, i) += diag;
    }
    return m;
}

} // namespace

std::string_view scheme_name(SchemeId id)
{
    return kNames[static_cast<std::size_t>(id)];
}

std::optional<SchemeId> parse_scheme(std::string_view name)
{
    for (SchemeId id : kAllSchemes) {
        if (scheme_name(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

AdrConfig AdrConfig::from_numbers(double nc, double pe, double da, const Grid1D& grid, double dt)
{
    AdrConfig cfg;
    cfg.grid = grid;
    cfg.dt = dt;
    cfg.c = nc * grid.h / dt;
    cfg.nu = pe * grid.h * grid.h / dt;
    cfg.lambda = da / dt;
    return cfg;
}

void AdrConfig::validate() const
{
    if (!(c > 0.0) || !(nu > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("AdrConfig: c, nu and dt must be positive");
    }
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("AdrConfig: lambda must be finite");
    }
    if (grid.n_points < 7 || !(grid.h > 0.0)) {
        throw std::invalid_argument("AdrConfig: grid needs >= 7 points and h > 0");
    }
}

OperatorPair build_operators(SchemeId scheme, const Grid1D& grid)
{
    switch (scheme) {
    case SchemeId::ExplicitOucs3Cd2:
        return {build_oucs3(grid), build_cd2_second(grid)};
    case SchemeId::ImplicitOucs3Lele:
    case SchemeId::ImexOucs3Lele:
        return {build_oucs3(grid), build_lele_second(grid)};
    case SchemeId::ImexNccd: {
        NccdOperators ops = build_nccd(grid);
        return {std::move(ops.first), std::move(ops.second)};
    }
    }
    throw std::invalid_argument("build_operators: unknown scheme");
}

InstabilityError::InstabilityError(std::size_t step, std::size_t node, double value)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "non-finite value " << value << " at node " << node << " after step " << step;
          return os.str();
      }()),
      step_(step), node_(node)
{
}

Stepper::Stepper(SchemeId scheme, const AdrConfig& cfg)
    : Stepper(scheme, cfg, build_operators(scheme, cfg.grid))
{
}

Stepper::Stepper(SchemeId scheme, const AdrConfig& cfg, OperatorPair ops)
    : scheme_(scheme), cfg_(cfg), ops_(std::move(ops))
{
    check_operators(cfg_, ops_.d1, ops_.d2);
    build();
}

void Stepper::build()
{
    const std::size_t n = cfg_.grid.n_points;
    const double nc = cfg_.nc();
    const double pe = cfg_.pe();
    const double da = cfg_.da();

    // Stiff part K = Pe D2 + Da I; full operator L = K - N_c D1.
    Matrix stiff = scaled_identity_plus(da, ops_.d2.matrix, pe);
    rhs_op_ = stiff;
    Matrix adv = ops_.d1.matrix;
    adv *= nc;
    rhs_op_ -= adv;

    switch (scheme_) {
    case SchemeId::ExplicitOucs3Cd2:
        break;
    case SchemeId::ImplicitOucs3Lele: {
        // (I - L/2) u^{n+1} = (I + L/2) u^n
        Matrix lhs = scaled_identity_plus(1.0, rhs_op_, -0.5);
        Matrix rhs = scaled_identity_plus(1.0, rhs_op_, 0.5);
        for (std::size_t b : {std::size_t{0}, n - 1}) {
            identity_row(lhs, b);
            identity_row(rhs, b);
        }
        stage_rhs_ = std::move(rhs);
        stage_lu_ = std::make_shared<const LuFactor>(lhs);
        break;
    }
    case SchemeId::ImexOucs3Lele:
    case SchemeId::ImexNccd: {
        // (I - K/2) u* = (I + K/2 - N_c D1) u^n
        Matrix lhs = scaled_identity_plus(1.0, stiff, -0.5);
        Matrix rhs = scaled_identity_plus(1.0, stiff, 0.5);
        rhs -= adv;
        for (std::size_t b : {std::size_t{0}, n - 1}) {
            identity_row(lhs, b);
            identity_row(rhs, b);
        }
        stage_rhs_ = std::move(rhs);
        stage_lu_ = std::make_shared<const LuFactor>(lhs);
        break;
    }
    }
}

void Stepper::advance(std::span<double> u) const
{
    const std::size_t n = cfg_.grid.n_points;
    if (u.size() != n) {
        throw DimensionError("Stepper::advance: state length != grid size");
    }
    const double left = u[0];
    const double right = u[n - 1];

    std::vector<double> star(n);
    std::vector<double> work(n);

    if (scheme_ == SchemeId::ImplicitOucs3Lele) {
        kernels::matvec(stage_rhs_, u, star);
        stage_lu_->solve_in_place(star);
        std::copy(star.begin(), star.end(), u.begin());
    } else {
        if (scheme_ == SchemeId::ExplicitOucs3Cd2) {
            kernels::matvec(rhs_op_, u, work);
            for (std::size_t i = 0; i < n; ++i) {
                star[i] = u[i] + work[i];
            }
        } else {
            kernels::matvec(stage_rhs_, u, star);
            stage_lu_->solve_in_place(star);
        }
        star[0] = left;
        star[n - 1] = right;

        // u^{n+1} = u^n + L (u^n + u*) / 2
        for (std::size_t i = 0; i < n; ++i) {
            star[i] += u[i];
        }
        kernels::matvec(rhs_op_, star, work);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += 0.5 * work[i];
        }
    }
    u[0] = left;
    u[n - 1] = right;
}

SolutionState Stepper::step(const SolutionState& s) const
{
    SolutionState out{s.values, s.t + cfg_.dt};
    advance(out.values);
    return out;
}

std::vector<std::complex<double>> Stepper::step_complex(std::span<const std::complex<double>> u) const
{
    std::vector<double> re(u.size());
    std::vector<double> im(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        re[i] = u[i].real();
        im[i] = u[i].imag();
    }
    advance(re);
    advance(im);
    std::vector<std::complex<double>> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = {re[i], im[i]};
    }
    return out;
}

SolutionState step_explicit_rk2(const SolutionState& s, const AdrConfig& cfg,
                                const DerivativeOperator& d1, const DerivativeOperator& d2)
{
    return Stepper(SchemeId::ExplicitOucs3Cd2, cfg, {d1, d2}).step(s);
}

SolutionState step_implicit_midpoint(const SolutionState& s, const AdrConfig& cfg,
                                     const DerivativeOperator& d1, const DerivativeOperator& d2)
{
    return Stepper(SchemeId::ImplicitOucs3Lele, cfg, {d1, d2}).step(s);
}

SolutionState step_imex(const SolutionState& s, const AdrConfig& cfg,
                        const DerivativeOperator& d1, const DerivativeOperator& d2)
{
    return Stepper(SchemeId::ImexOucs3Lele, cfg, {d1, d2}).step(s);
}

std::vector<SolutionState> run(SchemeId scheme, const AdrConfig& cfg, const SolutionState& u0,
                               double t_end, std::span<const double> snapshot_times)
{
    return run(Stepper(scheme, cfg), u0, t_end, snapshot_times);
}

std::vector<SolutionState> run(const Stepper& stepper, const SolutionState& u0, double t_end,
                               std::span<const double> snapshot_times)
{
    const double dt = stepper.config().dt;
    if (t_end < u0.t) {
        throw std::invalid_argument("run: t_end precedes the initial time");
    }
    auto steps_to = [&](double t) {
        return static_cast<std::size_t>(std::llround((t - u0.t) / dt));
    };
    const std::size_t total = steps_to(t_end);

    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end())) {
        throw std::invalid_argument("run: snapshot times must be ascending");
    }
    std::vector<std::size_t> marks;
    for (double t : snapshot_times) {
        if (t < u0.t || t > t_end) {
            throw std::invalid_argument("run: snapshot time outside [t0, t_end]");
        }
        marks.push_back(std::min(steps_to(t), total));
    }
    const bool final_is_snapshot = std::find(marks.begin(), marks.end(), total) != marks.end();

    std::vector<SolutionState> out(marks.size());
    SolutionState cur = u0;
    auto capture = [&](std::size_t step) {
        for (std::size_t m = 0; m < marks.size(); ++m) {
            if (marks[m] == step) {
                out[m] = cur;
            }
        }
    };
    capture(0);
    for (std::size_t step = 1; step <= total; ++step) {
        stepper.advance(cur.values);
        cur.t = u0.t + static_cast<double>(step) * dt;
        for (std::size_t i = 0; i < cur.values.size(); ++i) {
            if (!std::isfinite(cur.values[i])) {
                throw InstabilityError(step, i, cur.values[i]);
            }
        }
        capture(step);
    }
    if (!final_is_snapshot) {
        out.push_back(std::move(cur));
    }
    return out;
}

} // namespace adr
