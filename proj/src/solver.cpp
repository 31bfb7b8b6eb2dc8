#include "volcol/solver.hpp"

#include <cmath>

namespace volcol {

namespace {

void check_equation(const StepEquation& eq) {
    if (!(eq.alpha >= 0.0))
        throw ConfigError("step equation: alpha must be non-negative");
    if (!(eq.beta > 0.0))
        throw ConfigError("step equation: beta must be positive");
}

FixedPointResult solved(double value, int iterations) {
    return {StepStatus::Solved, value, iterations, {}};
}

FixedPointResult no_fixed_point(std::string detail, int iterations) {
    return {StepStatus::NoFixedPoint, 0.0, iterations, std::move(detail)};
}

FixedPointResult failed(std::string detail, int iterations) {
    return {StepStatus::Failed, 0.0, iterations, std::move(detail)};
}

// With alpha == 0 the trivial root traps plain iteration, so the smallest
// positive fixed point is bracketed by a doubling scan of G(beta y) - y,
// then bisected. No sign change up to the cap means no nonzero fixed point.
FixedPointResult bracket_smallest_fixed_point(const StepEquation& eq,
                                              const Nonlinearity& g,
                                              const FixedPointControls& controls,
                                              double cap) {
    int evals = 0;
    double lo = 0.0;
    bool have_lo = false;
    for (double y = 1e-300; y <= cap; y *= 2.0) {
        const double gy = g(eq.beta * y);
        ++evals;
        if (std::isnan(gy))
            return failed("nonlinearity returned NaN during bracketing", evals);
        const double f = gy - y;
        if (f == 0.0)
            return solved(y, evals);
        if (f > 0.0) {
            lo = y;
            have_lo = true;
            continue;
        }
        if (!have_lo)
            return no_fixed_point("G(beta y) <= y down to 1e-300", evals);
        double hi = y;
        while (hi - lo > controls.convergence_tol * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            const double fm = g(eq.beta * mid) - mid;
            ++evals;
            if (std::isnan(fm))
                return failed("nonlinearity returned NaN during bisection", evals);
            if (fm == 0.0)
                return solved(mid, evals);
            (fm > 0.0 ? lo : hi) = mid;
        }
        return solved(0.5 * (lo + hi), evals);
    }
    return no_fixed_point("no sign change of G(beta y) - y up to the divergence cap",
                          evals);
}

} // namespace

FixedPointResult fixed_point_iterate(const StepEquation& eq, const Nonlinearity& g,
                                     const FixedPointControls& controls,
                                     double prior_max) {
    check_equation(eq);
    controls.validate();
    if (!(prior_max >= 0.0))
        throw ConfigError("fixed_point_iterate: prior_max must be non-negative");

    const double g_alpha = g(eq.alpha);
    if (std::isnan(g_alpha))
        return failed("G(alpha) is NaN", 0);
    const double cap = std::max(controls.divergence_cap_floor,
                                controls.divergence_cap_factor *
                                    std::max(prior_max, g_alpha));
    if (std::isinf(g_alpha))
        return no_fixed_point("G(alpha) exceeds the representable range", 0);
    if (eq.alpha == 0.0)
        return bracket_smallest_fixed_point(eq, g, controls, cap);

    const auto phi = [&](double y) { return g(eq.alpha + eq.beta * y); };

    // Monotone iteration from below; G increasing drives the iterates toward
    // the smallest fixed point above G(alpha) when one exists. Guarded Aitken
    // jumps keep nearly-neutral cases within the iteration budget.
    double y_prev = 0.0;
    double y = g_alpha; // first iterate
    int evals = 1;
    bool monotone = true;
    while (evals < controls.max_iterations) {
        const double y_next = phi(y);
        ++evals;
        if (std::isnan(y_next))
            return failed("nonlinearity returned NaN", evals);
        if (y_next > cap)
            return no_fixed_point("iterate exceeded the divergence bound", evals);
        const double inc = y_next - y;
        if (inc < 0.0)
            monotone = false;
        if (std::abs(inc) <= controls.convergence_tol * std::max(1.0, std::abs(y_next)))
            return solved(y_next, evals);

        const double prev_inc = y - y_prev;
        const double dd = inc - prev_inc;
        bool jumped = false;
        if (prev_inc != 0.0 && dd != 0.0) {
            const double q = inc / prev_inc;
            const double cand = y_next - inc * inc / dd;
            if (q > 0.0 && q < 1.0 && std::isfinite(cand) && cand > y_next &&
                cand <= cap) {
                const double phi_cand = phi(cand);
                ++evals;
                if (std::isnan(phi_cand))
                    return failed("nonlinearity returned NaN", evals);
                if (std::abs(phi_cand - cand) < std::abs(inc)) {
                    y_prev = cand;
                    y = phi_cand;
                    if (y > cap)
                        return no_fixed_point("iterate exceeded the divergence bound",
                                              evals);
                    if (std::abs(y - cand) <=
                        controls.convergence_tol * std::max(1.0, std::abs(y)))
                        return solved(y, evals);
                    if (y < cand)
                        monotone = false;
                    jumped = true;
                }
            }
        }
        if (!jumped) {
            y_prev = y;
            y = y_next;
        }
    }
    if (monotone)
        return no_fixed_point("iteration budget exhausted while still climbing", evals);
    return failed("no convergence within the iteration budget", evals);
}

FixedPointResult fixed_point_sqrt_square(const StepEquation& eq) {
    check_equation(eq);
    const double a = eq.alpha;
    const double b = eq.beta;
    if (a == 0.0) {
        // sqrt-branch limit: y = b, valid while b*y = b^2 <= 1. The
        // quadratic branch admits no nonzero root here.
        if (b <= 1.0)
            return solved(b, 0);
        return no_fixed_point("alpha = 0 with beta > 1", 0);
    }
    if (a < 1.0 && b <= 1.0 - a)
        return solved(0.5 * (b + std::sqrt(b * b + 4.0 * a)), 0);
    if (4.0 * a * b <= 1.0) {
        // Smaller root of beta u^2 - u + alpha = 0, with u = alpha + beta y;
        // it solves the equation only while u stays in the square region.
        const double u = 2.0 * a / (1.0 + std::sqrt(1.0 - 4.0 * a * b));
        if (u >= 1.0)
            return solved(u * u, 0);
    }
    return no_fixed_point("beta above the admissible range", 0);
}

namespace {

double sanitize_lag(double value) {
    if (std::isnan(value))
        throw NumericError("lag term evaluated to NaN");
    if (value < -1e-12 * std::max(1.0, std::abs(value)))
        throw NumericError("lag term evaluated negative");
    return std::max(value, 0.0);
}

FixedPointResult dispatch_fixed_point(const StepEquation& eq, const Problem& problem,
                                      const CollocationConfig& config,
                                      double prior_max) {
    const bool analytic =
        config.solver == StepSolver::Analytic ||
        (config.solver == StepSolver::Auto &&
         problem.nonlinearity.has_analytic_fixed_point());
    if (analytic) {
        if (!problem.nonlinearity.has_analytic_fixed_point())
            throw ConfigError("analytic step solver requested but the nonlinearity "
                              "has no closed-form fixed point");
        check_equation(eq);
        const auto fp = problem.nonlinearity.analytic_fixed_point(eq.alpha, eq.beta);
        if (fp)
            return solved(*fp, 0);
        return no_fixed_point("closed form reports no fixed point", 0);
    }
    return fixed_point_iterate(eq, problem.nonlinearity, config.fixed_point, prior_max);
}

StepOutcome outcome_from(const FixedPointResult& r) {
    StepOutcome out;
    out.status = r.status;
    out.iterations = r.iterations;
    out.detail = r.detail;
    return out;
}

} // namespace

StepOutcome step_single(const Problem& problem, const CollocationConfig& config,
                        const LagState& lag, const IntervalData& interval,
                        double prior_max) {
    const auto c = config.scheme.parameters();
    if (c.size() != 1)
        throw ConfigError("step_single requires a single-node scheme");
    const QuadratureRule& rule = config.quadrature;
    const double t_n1 = interval.t0 + c[0] * interval.h;
    const double alpha = sanitize_lag(lag_term(problem.kernel, lag, t_n1, rule));
    const double bn = coefficient_integral(problem.kernel, interval, c, 0, 0, rule);
    if (!(bn > 0.0))
        throw NumericError("coefficient integral B_n is not positive");
    const FixedPointResult r =
        dispatch_fixed_point({alpha, interval.h * bn}, problem, config, prior_max);
    StepOutcome out = outcome_from(r);
    if (r.status == StepStatus::Solved)
        out.z = {r.value};
    return out;
}

StepOutcome step_pair(const Problem& problem, const CollocationConfig& config,
                      const LagState& lag, const IntervalData& interval,
                      double prior_max) {
    const auto c = config.scheme.parameters();
    if (c.size() != 2 || c[0] != 0.0)
        throw ConfigError("step_pair requires the pair scheme {0, c2}");
    const QuadratureRule& rule = config.quadrature;
    const double c2 = c[1];

    // Z_1 is explicit: the collocation point sits on the interval start.
    const double lag1 = sanitize_lag(lag_term(problem.kernel, lag, interval.t0, rule));
    const double z1 = problem.nonlinearity(lag1);
    if (std::isnan(z1))
        throw NumericError("nonlinearity returned NaN for the explicit coefficient");
    if (std::isinf(z1)) {
        StepOutcome out;
        out.status = StepStatus::NoFixedPoint;
        out.detail = "explicit coefficient exceeds the representable range";
        return out;
    }

    const double t_n2 = interval.t0 + c2 * interval.h;
    const double b21 = coefficient_integral(problem.kernel, interval, c, 1, 0, rule);
    const double b22 = coefficient_integral(problem.kernel, interval, c, 1, 1, rule);
    if (!(b22 > 0.0))
        throw NumericError("coefficient integral B_n(2,2) is not positive");
    const double alpha =
        sanitize_lag(lag_term(problem.kernel, lag, t_n2, rule)) + interval.h * b21 * z1;
    const FixedPointResult r =
        dispatch_fixed_point({alpha, interval.h * b22}, problem, config, prior_max);
    StepOutcome out = outcome_from(r);
    if (r.status == StepStatus::Solved) {
        out.z = {z1, r.value};
        out.positivity_ok =
            r.value >= (1.0 - c2) * z1 - 1e-12 * std::max(1.0, z1);
    }
    return out;
}

StepOutcome advance_interval(const Problem& problem, const CollocationConfig& config,
                             const LagState& lag, const IntervalData& interval,
                             double prior_max) {
    if (config.scheme.order() == 1)
        return step_single(problem, config, lag, interval, prior_max);
    return step_pair(problem, config, lag, interval, prior_max);
}

FixedMeshResult solve_fixed_mesh(const Problem& problem, const CollocationConfig& config,
                                 std::span<const double> mesh) {
    config.validate();
    if (mesh.size() < 2 || mesh.front() != 0.0)
        throw ConfigError("solve_fixed_mesh: mesh must start at 0");
    for (std::size_t n = 1; n < mesh.size(); ++n)
        if (!(mesh[n] > mesh[n - 1]))
            throw ConfigError("solve_fixed_mesh: mesh must be strictly increasing");

    const auto c = config.scheme.parameters();
    LagState lag(std::vector<double>(c.begin(), c.end()));
    std::vector<std::vector<double>> coefficients;
    coefficients.reserve(mesh.size() - 1);
    double prior_max = 0.0;
    for (std::size_t n = 0; n + 1 < mesh.size(); ++n) {
        const IntervalData interval{mesh[n], mesh[n + 1] - mesh[n]};
        const StepOutcome out = advance_interval(problem, config, lag, interval,
                                                 prior_max);
        if (out.status != StepStatus::Solved)
            return {std::nullopt, static_cast<long>(n), out.status, out.detail};
        for (double z : out.z)
            prior_max = std::max(prior_max, z);
        lag.append(interval.t0, interval.h, out.z);
        coefficients.push_back(out.z);
    }
    FixedMeshResult result;
    result.solution.emplace(std::vector<double>(mesh.begin(), mesh.end()),
                            std::vector<double>(c.begin(), c.end()),
                            std::move(coefficients));
    return result;
}

} // namespace volcol
