#pragma once

#include <span>
#include <string>
#include <vector>

#include "volcol/nonlinearity.hpp"
#include "volcol/quadrature.hpp"

namespace volcol {

/// Three-valued numeric verdicts; finite sampling never proves an asymptotic
/// statement, it only supports or contradicts it.
enum class Verdict { Supports, Contradicts, Inconclusive };
const char* verdict_name(Verdict v);

struct TrendSamples {
    std::vector<double> points; // ordered toward the limit
    std::vector<double> ratios;
};

struct GrowthReport {
    Verdict g_over_y_unbounded_near_zero = Verdict::Inconclusive;
    Verdict g_over_y_unbounded_away_from_zero = Verdict::Inconclusive;
    Verdict y_over_g_bounded_away_from_zero = Verdict::Inconclusive;
    TrendSamples near_zero;     // G(y)/y toward y -> 0
    TrendSamples away;          // G(y)/y toward y -> inf
    TrendSamples inverse_away;  // y/G(y) toward y -> inf
    std::string notes;
};

/// Log-spaced defaults: 1e-1 .. 1e-12 and 1e1 .. 1e12.
std::vector<double> default_near_grid();
std::vector<double> default_far_grid();

/// Samples G(y)/y along both grids and classifies the growth conditions that
/// decide whether blow-up is possible. Overflowing far-grid points truncate
/// the grid (noted in the report).
GrowthReport classify_growth(const Nonlinearity& g, std::span<const double> near_grid,
                             std::span<const double> far_grid);

enum class IntegralVerdict { Converges, Diverges, Inconclusive };
const char* integral_verdict_name(IntegralVerdict v);

struct IntegralConditionReport {
    double alpha = 0.0;
    double delta = 0.0;
    std::vector<double> upper_limits;
    std::vector<double> partials; // non-decreasing partial integrals
    IntegralVerdict verdict = IntegralVerdict::Inconclusive;
};

/// Partial integrals of (s/G(s))^(1/alpha) / s over [delta, 10^k] for
/// k = 1..decades. Converges when the per-decade increments decay
/// geometrically (ratio < 0.9 sustained over five decades), Diverges when
/// they are non-decreasing over five decades.
IntegralConditionReport integral_condition(const Nonlinearity& g, double alpha,
                                           double delta, const QuadratureRule& rule,
                                           int decades = 8);

} // namespace volcol
