#pragma once

#include <functional>
#include <span>
#include <vector>

#include "volcol/kernel.hpp"

namespace volcol {

/// Gauss-Legendre panels with adaptive bisection. Weakly singular endpoints
/// are handled by geometric grading toward the singular point plus an
/// exponent-aware closing panel.
struct QuadratureRule {
    int nodes = 16;            // Gauss-Legendre nodes per panel, >= 2
    int max_subdivisions = 32; // adaptive bisection depth
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double grading_ratio = 0.25; // geometric ratio toward a singular endpoint
    int grading_depth = 40;
    bool split_singular_endpoints = true;

    void validate() const;
};

/// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Legendre rule with n nodes (thread-safe).
const GaussRule& gauss_legendre(int n);

using Integrand = std::function<double(double)>;

/// Adaptive integral of f over [a, b]. Throws QuadratureError when the
/// subdivision limit is reached without meeting the tolerance.
double integrate(const Integrand& f, double a, double b, const QuadratureRule& rule);

/// Integral of f over [a, b] where f behaves like (singularity - s)^-gamma
/// near s = singularity, with singularity >= b. Falls back to the plain
/// adaptive rule when the singular point is comfortably separated.
double integrate_graded(const Integrand& f, double a, double b, double singularity,
                        double gamma, const QuadratureRule& rule);

/// Completed collocation intervals together with their coefficients. The lag
/// term at time t integrates the stored piecewise polynomial against the
/// kernel over [0, end_time()].
class LagState {
public:
    struct Interval {
        double t0;
        double h;
        std::vector<double> z; // one coefficient per collocation parameter
    };

    explicit LagState(std::vector<double> parameters);

    /// Appends the next interval; it must start where the previous one ended.
    void append(double t0, double h, std::vector<double> z);

    double end_time() const { return end_; }
    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }
    std::span<const Interval> intervals() const { return intervals_; }
    std::span<const double> parameters() const { return c_; }

private:
    std::vector<double> c_;
    std::vector<Interval> intervals_;
    double end_ = 0.0;
};

/// Coefficient moment B_n(i,j) = integral over [0, c_i] of
/// K(t_{n,i}, t_n + s h_n) L_j(s) ds. Uses the kernel's closed form when one
/// is registered.
double coefficient_integral(const Kernel& kernel, const IntervalData& interval,
                            std::span<const double> c, std::size_t i, std::size_t j,
                            const QuadratureRule& rule);

/// Lag term F_n(t): integral of K(t,s) z_h(s) over the completed intervals.
/// Requires t >= end_time(); an empty state yields exactly 0.
double lag_term(const Kernel& kernel, const LagState& lag, double t,
                const QuadratureRule& rule);

/// Integral of K(t,s) z(s) over [iv.t0, s1] for one completed interval,
/// with s1 <= iv.t0 + iv.h <= t. Applies grading when the kernel is singular
/// and t is close to s1.
double kernel_panel_integral(const Kernel& kernel, double t,
                             const LagState::Interval& iv, std::span<const double> c,
                             double s1, const QuadratureRule& rule);

} // namespace volcol
