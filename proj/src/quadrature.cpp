#include "volcol/quadrature.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "volcol/lagrange.hpp"

namespace volcol {

void QuadratureRule::validate() const {
    if (nodes < 2)
        throw ConfigError("quadrature rule: node count must be >= 2");
    if (max_subdivisions < 1 || grading_depth < 1)
        throw ConfigError("quadrature rule: subdivision limits must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ConfigError("quadrature rule: tolerances must be positive");
    if (!(grading_ratio > 0.0) || !(grading_ratio < 1.0))
        throw ConfigError("quadrature rule: grading ratio must lie in (0,1)");
}

namespace {

std::unique_ptr<GaussRule> compute_gauss(int n) {
    auto rule = std::make_unique<GaussRule>();
    rule->nodes.assign(n, 0.0);
    rule->weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule->nodes[i] = -x;
        rule->nodes[n - 1 - i] = x;
        rule->weights[i] = w;
        rule->weights[n - 1 - i] = w;
    }
    return rule;
}

double gauss_panel(const Integrand& f, double a, double b, const GaussRule& g) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        sum += g.weights[i] * f(mid + half * g.nodes[i]);
    return sum * half;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 2)
        throw ConfigError("gauss_legendre: node count must be >= 2");
    static std::mutex mutex;
    static std::unordered_map<int, std::unique_ptr<GaussRule>> cache;
    std::scoped_lock lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = compute_gauss(n);
    return *slot;
}

double integrate(const Integrand& f, double a, double b, const QuadratureRule& rule) {
    rule.validate();
    if (a == b)
        return 0.0;
    if (!(a < b))
        throw ConfigError("integrate: bounds out of order");

    const GaussRule& g = gauss_legendre(rule.nodes);
    struct Segment {
        double a, b, estimate;
        int depth;
    };
    std::vector<Segment> stack;
    stack.push_back({a, b, gauss_panel(f, a, b, g), 0});
    const double total_length = b - a;
    double total = 0.0;
    double err_total = 0.0;
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (seg.a + seg.b);
        const double left = gauss_panel(f, seg.a, mid, g);
        const double right = gauss_panel(f, mid, seg.b, g);
        const double refined = left + right;
        const double err = std::abs(refined - seg.estimate);
        const double share = rule.abs_tol * ((seg.b - seg.a) / total_length);
        if (err <= share + rule.rel_tol * std::abs(refined) ||
            seg.depth >= rule.max_subdivisions || mid <= seg.a || mid >= seg.b) {
            total += refined;
            err_total += err;
        } else {
            stack.push_back({seg.a, mid, left, seg.depth + 1});
            stack.push_back({mid, seg.b, right, seg.depth + 1});
        }
    }
    if (std::isnan(total))
        throw NumericError("integrate: integrand produced NaN");
    if (err_total > 5.0 * std::max(rule.abs_tol, rule.rel_tol * std::abs(total)))
        throw QuadratureError("integrate: adaptive refinement did not converge "
                              "(achieved error " +
                                  std::to_string(err_total) + ")",
                              err_total);
    return total;
}

double integrate_graded(const Integrand& f, double a, double b, double singularity,
                        double gamma, const QuadratureRule& rule) {
    rule.validate();
    if (a == b)
        return 0.0;
    if (!(a < b))
        throw ConfigError("integrate_graded: bounds out of order");
    const double length = b - a;
    if (singularity < b - 1e-12 * length)
        throw ConfigError("integrate_graded: singularity inside the interval");
    const double gap = std::max(0.0, singularity - b);
    if (!rule.split_singular_endpoints || gamma <= 0.0 || gap >= length)
        return integrate(f, a, b, rule);

    // Geometric panels shrinking toward b keep each panel separated from the
    // singular point by at least a fixed fraction of its own width.
    double total = 0.0;
    double left = a;
    for (int k = 0; k < rule.grading_depth; ++k) {
        const double rem = b - left;
        if (rem <= gap)
            break;
        const double cut = b - rem * rule.grading_ratio;
        if (cut <= left || cut >= b)
            break;
        total += integrate(f, left, cut, rule);
        left = cut;
    }
    if (left >= b)
        return total;
    if (gap > 0.0)
        return total + integrate(f, left, b, rule);

    // Closing sliver with the singularity at its right end: substitute
    // u = b - s = w^(1/(1-gamma)), which absorbs the u^-gamma factor.
    const double q = 1.0 / (1.0 - gamma);
    const double wmax = std::pow(b - left, 1.0 - gamma);
    const GaussRule& g = gauss_legendre(rule.nodes);
    const Integrand transformed = [&](double w) {
        const double u = std::pow(w, q);
        return f(b - u) * q * std::pow(w, q - 1.0);
    };
    return total + gauss_panel(transformed, 0.0, wmax, g);
}

LagState::LagState(std::vector<double> parameters) : c_(std::move(parameters)) {
    check_collocation_parameters(c_);
}

void LagState::append(double t0, double h, std::vector<double> z) {
    if (!(h > 0.0))
        throw ConfigError("LagState: interval length must be positive");
    if (z.size() != c_.size())
        throw ConfigError("LagState: coefficient count mismatch");
    if (std::abs(t0 - end_) > 1e-12 * std::max(1.0, std::abs(end_)))
        throw ConfigError("LagState: intervals must be contiguous");
    intervals_.push_back({t0, h, std::move(z)});
    end_ = t0 + h;
}

double coefficient_integral(const Kernel& kernel, const IntervalData& interval,
                            std::span<const double> c, std::size_t i, std::size_t j,
                            const QuadratureRule& rule) {
    check_collocation_parameters(c);
    if (i >= c.size() || j >= c.size())
        throw ConfigError("coefficient_integral: index out of range");
    if (!(interval.h > 0.0))
        throw ConfigError("coefficient_integral: interval length must be positive");
    if (kernel.analytic_moments())
        return kernel.analytic_moments()(interval, c, i, j);
    const double ci = c[i];
    if (ci == 0.0)
        return 0.0;
    const double t_ni = interval.t0 + ci * interval.h;
    const Integrand f = [&](double s) {
        return kernel(t_ni, interval.t0 + s * interval.h) * lagrange_basis(c, j, s);
    };
    if (kernel.singular())
        return integrate_graded(f, 0.0, ci, ci, kernel.singularity_exponent(), rule);
    return integrate(f, 0.0, ci, rule);
}

double kernel_panel_integral(const Kernel& kernel, double t, const LagState::Interval& iv,
                             std::span<const double> c, double s1,
                             const QuadratureRule& rule) {
    const double hi = std::min(s1, iv.t0 + iv.h);
    if (hi <= iv.t0)
        return 0.0;
    const Integrand f = [&](double s) {
        const double v = (s - iv.t0) / iv.h;
        double z = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
            z += lagrange_basis(c, j, v) * iv.z[j];
        return kernel(t, s) * z;
    };
    if (kernel.singular() && (t - hi) < (hi - iv.t0))
        return integrate_graded(f, iv.t0, hi, t, kernel.singularity_exponent(), rule);
    return integrate(f, iv.t0, hi, rule);
}

double lag_term(const Kernel& kernel, const LagState& lag, double t,
                const QuadratureRule& rule) {
    if (lag.empty())
        return 0.0;
    const double end = lag.end_time();
    if (t < end - 1e-9 * std::max(1.0, std::abs(end)))
        throw ConfigError("lag_term: evaluation before the last completed node");
    double sum = 0.0;
    for (const auto& iv : lag.intervals())
        sum += kernel_panel_integral(kernel, t, iv, lag.parameters(), iv.t0 + iv.h, rule);
    return sum;
}

} // namespace volcol
