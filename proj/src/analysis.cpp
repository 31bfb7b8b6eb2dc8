#include "volcol/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "volcol/errors.hpp"

namespace volcol {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Supports:
        return "supports";
    case Verdict::Contradicts:
        return "contradicts";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

const char* integral_verdict_name(IntegralVerdict v) {
    switch (v) {
    case IntegralVerdict::Converges:
        return "converges";
    case IntegralVerdict::Diverges:
        return "diverges";
    case IntegralVerdict::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

std::vector<double> default_near_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k)
        grid.push_back(std::pow(10.0, -k));
    return grid;
}

std::vector<double> default_far_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k)
        grid.push_back(std::pow(10.0, k));
    return grid;
}

namespace {

// Documented thresholds for the heuristic verdicts.
constexpr double kUnboundedLevel = 0.99e6; // ratio reaching this supports "unbounded"
constexpr double kVanishedLevel = 1.01e-6; // ratio sinking to this contradicts it
constexpr double kFlatBand = 100.0;        // max/min within this counts as bounded
constexpr double kTrendSlack = 1e-9;       // relative wiggle ignored by the trend

/// Verdict for the claim "these ratios are unbounded toward the limit"; the
/// samples are ordered toward the limit.
Verdict assess_unbounded(std::span<const double> ratios) {
    if (ratios.size() < 2)
        return Verdict::Inconclusive;
    bool nondecreasing = true;
    bool nonincreasing = true;
    double lo = ratios.front(), hi = ratios.front();
    for (std::size_t k = 1; k < ratios.size(); ++k) {
        const double slack = kTrendSlack * std::abs(ratios[k - 1]);
        if (ratios[k] < ratios[k - 1] - slack)
            nondecreasing = false;
        if (ratios[k] > ratios[k - 1] + slack)
            nonincreasing = false;
        lo = std::min(lo, ratios[k]);
        hi = std::max(hi, ratios[k]);
    }
    if (!nondecreasing && !nonincreasing)
        return Verdict::Inconclusive;
    if (nondecreasing && ratios.back() >= kUnboundedLevel)
        return Verdict::Supports;
    if (nonincreasing && nondecreasing) // flat within slack: bounded ratio
        return Verdict::Contradicts;
    if (nonincreasing && (ratios.back() <= kVanishedLevel || hi <= kFlatBand * lo))
        return Verdict::Contradicts;
    return Verdict::Inconclusive;
}

} // namespace

GrowthReport classify_growth(const Nonlinearity& g, std::span<const double> near_grid,
                             std::span<const double> far_grid) {
    if (near_grid.empty() || far_grid.empty())
        throw ConfigError("classify_growth: empty sample grid");
    GrowthReport report;

    // Toward zero: walk the grid from the largest y down.
    std::vector<double> near_sorted(near_grid.begin(), near_grid.end());
    std::sort(near_sorted.begin(), near_sorted.end(), std::greater<>());
    for (double y : near_sorted) {
        if (!(y > 0.0))
            throw ConfigError("classify_growth: grid values must be positive");
        const double r = g(y) / y;
        if (!std::isfinite(r)) {
            report.notes += "near grid truncated at y=" + std::to_string(y) + "; ";
            break;
        }
        report.near_zero.points.push_back(y);
        report.near_zero.ratios.push_back(r);
    }

    std::vector<double> far_sorted(far_grid.begin(), far_grid.end());
    std::sort(far_sorted.begin(), far_sorted.end());
    for (double y : far_sorted) {
        if (!(y > 0.0))
            throw ConfigError("classify_growth: grid values must be positive");
        const double gy = g(y);
        const double r = gy / y;
        if (!std::isfinite(r)) {
            report.notes += "far grid truncated at y=" + std::to_string(y) + "; ";
            break;
        }
        report.away.points.push_back(y);
        report.away.ratios.push_back(r);
        report.inverse_away.points.push_back(y);
        report.inverse_away.ratios.push_back(gy > 0.0 ? y / gy
                                                      : std::numeric_limits<double>::infinity());
    }

    report.g_over_y_unbounded_near_zero = assess_unbounded(report.near_zero.ratios);
    report.g_over_y_unbounded_away_from_zero = assess_unbounded(report.away.ratios);
    switch (assess_unbounded(report.inverse_away.ratios)) {
    case Verdict::Supports:
        report.y_over_g_bounded_away_from_zero = Verdict::Contradicts;
        break;
    case Verdict::Contradicts:
        report.y_over_g_bounded_away_from_zero = Verdict::Supports;
        break;
    case Verdict::Inconclusive:
        report.y_over_g_bounded_away_from_zero = Verdict::Inconclusive;
        break;
    }
    return report;
}

IntegralConditionReport integral_condition(const Nonlinearity& g, double alpha,
                                           double delta, const QuadratureRule& rule,
                                           int decades) {
    if (!(alpha > 0.0))
        throw ConfigError("integral_condition: alpha must be positive");
    if (!(delta > 0.0))
        throw ConfigError("integral_condition: delta must be positive");
    if (decades < 2)
        throw ConfigError("integral_condition: need at least two decades");
    if (!(g(delta) > 0.0))
        throw ConfigError("integral_condition: G must be positive at delta");

    IntegralConditionReport report;
    report.alpha = alpha;
    report.delta = delta;

    const Integrand f = [&](double s) {
        const double gs = g(s);
        if (!(gs > 0.0))
            throw NumericError("integral_condition: G(s) not positive at s=" +
                               std::to_string(s));
        const double base = s / gs; // may underflow to 0 when G explodes
        return std::pow(base, 1.0 / alpha) / s;
    };

    std::vector<double> increments;
    double lower = delta;
    double total = 0.0;
    for (int k = 1; k <= decades; ++k) {
        const double upper = std::pow(10.0, k);
        if (upper <= lower)
            continue;
        const double piece = integrate(f, lower, upper, rule);
        total += piece;
        increments.push_back(piece);
        report.upper_limits.push_back(upper);
        report.partials.push_back(total);
        lower = upper;
    }

    // Increment ratios over the last five decades decide the verdict.
    constexpr int window = 5;
    constexpr double decay = 0.9;
    if (increments.size() < window + 1) {
        report.verdict = IntegralVerdict::Inconclusive;
        return report;
    }
    bool all_decay = true;
    bool all_grow = true;
    for (std::size_t k = increments.size() - window; k < increments.size(); ++k) {
        const double prev = increments[k - 1];
        const double cur = increments[k];
        const double ratio = prev > 0.0 ? cur / prev : (cur > 0.0 ? 2.0 : 0.0);
        if (!(ratio < decay))
            all_decay = false;
        if (!(ratio >= 1.0 - 1e-6))
            all_grow = false;
    }
    if (all_decay)
        report.verdict = IntegralVerdict::Converges;
    else if (all_grow)
        report.verdict = IntegralVerdict::Diverges;
    else
        report.verdict = IntegralVerdict::Inconclusive;
    return report;
}

} // namespace volcol
