#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volcol/solver.hpp"

namespace volcol {

struct StepRecord {
    double t0;    // interval start
    double h;     // accepted stepsize
    double z_max; // largest coefficient on the interval
};

struct BlowUpReport {
    enum class Status { BlowUp, ReachedHorizon, NumericFailure };

    Status status = Status::NumericFailure;
    double estimate = 0.0; // sum of accepted steps, or the time reached
    double horizon = 0.0;
    std::vector<StepRecord> steps;
    long halvings = 0;
    double final_stepsize = 0.0;
    long positivity_flags = 0; // pair-scheme intervals with Z_2 < (1-c2) Z_1
    std::string detail;
    std::optional<CollocationSolution> solution; // the accepted intervals

    const char* status_name() const;
};

/// Advances intervals at the current stepsize, halving it whenever the
/// per-interval fixed point disappears; once the stepsize falls below the
/// tolerance the accumulated time is the blow-up estimate. The stepsize is
/// never grown back after a halving.
BlowUpReport estimate_blowup(const Problem& problem, const CollocationConfig& config);

struct SweepRow {
    double c = 0.0;
    double h = 0.0;
    BlowUpReport::Status status = BlowUpReport::Status::NumericFailure;
    double estimate = 0.0;
    long steps = 0;
    long halvings = 0;
};

struct SweepSummary {
    double h = 0.0;
    double min_estimate = 0.0, max_estimate = 0.0;
    double c_at_min = 0.0, c_at_max = 0.0;
    double range = 0.0;                   // max - min over the blow-up rows
    std::optional<double> rel_spread;     // range / reference, when available
    long blowup_rows = 0;
    long failed_rows = 0;
};

struct SweepRecord {
    std::vector<SweepRow> rows; // sorted by c, then h
    std::vector<SweepSummary> per_h;
    std::optional<double> reference;

    /// Rows at one stepsize, sorted by c.
    std::vector<SweepRow> curve(double h) const;
};

/// One blow-up estimate per (c, h); failing rows are recorded and the sweep
/// continues. Rows run on a worker pool (threads = 0 picks the hardware
/// count); assembly is deterministic regardless of completion order.
SweepRecord sweep_parameter(const Problem& problem, const CollocationConfig& base,
                            std::span<const double> c_grid,
                            std::span<const double> h_values, unsigned threads = 0);

struct Crossing {
    double c = 0.0;
    double t = 0.0;
    double slope_gap = 0.0; // |d(c_{k+1}) - d(c_k)| across the bracket
};

struct Intersection {
    double c_star = 0.0;
    double t_star = 0.0;
    std::vector<Crossing> crossings; // every sign change, best first
};

/// Intersects two blow-up curves over the same c grid: finds sign changes of
/// d(c) = t_a(c) - t_b(c), refines each by inverse-linear interpolation, and
/// reports the steepest (best-conditioned) crossing. Rows that did not blow
/// up are excluded pairwise. Throws Error when the curves coincide or never
/// cross.
Intersection intersect_curves(std::span<const SweepRow> curve_a,
                              std::span<const SweepRow> curve_b);

} // namespace volcol
