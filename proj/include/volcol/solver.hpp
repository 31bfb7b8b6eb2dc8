#pragma once

#include <optional>
#include <string>
#include <vector>

#include "volcol/config.hpp"
#include "volcol/problem.hpp"
#include "volcol/quadrature.hpp"
#include "volcol/solution.hpp"

namespace volcol {

/// Scalar per-interval equation y = G(alpha + beta y), with alpha >= 0 the
/// lag plus known-coefficient contributions and beta > 0 the weight h_n B_n
/// on the unknown.
struct StepEquation {
    double alpha = 0.0;
    double beta = 0.0;
};

enum class StepStatus { Solved, NoFixedPoint, Failed };

struct FixedPointResult {
    StepStatus status = StepStatus::Failed;
    double value = 0.0;
    int iterations = 0;
    std::string detail;
};

/// Iterates y -> G(alpha + beta y) from 0 toward the smallest (attracting)
/// fixed point. Classified NoFixedPoint when an iterate exceeds
/// max(cap_floor, cap_factor * max(prior_max, G(alpha))) or the iteration
/// budget runs out while still climbing. With alpha == 0 plain iteration
/// cannot leave the trivial root, so the smallest positive fixed point is
/// bracketed by a doubling scan instead.
FixedPointResult fixed_point_iterate(const StepEquation& eq, const Nonlinearity& g,
                                     const FixedPointControls& controls,
                                     double prior_max);

/// Closed-form fixed points for the piecewise sqrt/square nonlinearity.
/// Each branch is kept only where its root actually solves the equation.
FixedPointResult fixed_point_sqrt_square(const StepEquation& eq);

struct StepOutcome {
    StepStatus status = StepStatus::Failed;
    std::vector<double> z;     // Solved: one coefficient per parameter
    bool positivity_ok = true; // pair scheme: Z_{n,2} >= (1 - c2) Z_{n,1}
    int iterations = 0;
    std::string detail;
};

/// Single-node interval step: solves Z = G(F_n + h_n B_n Z).
StepOutcome step_single(const Problem& problem, const CollocationConfig& config,
                        const LagState& lag, const IntervalData& interval,
                        double prior_max);

/// Pair interval step: Z_1 = G(F_n(t_n)) explicitly, then
/// Z_2 = G(F_n(t_n + c2 h) + h B(2,1) Z_1 + h B(2,2) Z_2).
StepOutcome step_pair(const Problem& problem, const CollocationConfig& config,
                      const LagState& lag, const IntervalData& interval,
                      double prior_max);

/// Dispatches on the configured scheme.
StepOutcome advance_interval(const Problem& problem, const CollocationConfig& config,
                             const LagState& lag, const IntervalData& interval,
                             double prior_max);

struct FixedMeshResult {
    std::optional<CollocationSolution> solution;
    long failed_interval = -1;
    StepStatus failure = StepStatus::Solved;
    std::string detail;

    bool ok() const { return solution.has_value(); }
};

/// Runs the stepper over an explicit mesh (strictly increasing from 0).
/// On failure reports the first interval without a fixed point.
FixedMeshResult solve_fixed_mesh(const Problem& problem, const CollocationConfig& config,
                                 std::span<const double> mesh);

} // namespace volcol
