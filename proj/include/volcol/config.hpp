#pragma once

#include <span>
#include <vector>

#include "volcol/quadrature.hpp"

namespace volcol {

/// Collocation parameter layout. Two layouts reduce the per-interval system
/// to scalar fixed-point equations: a single interior node, or a node at the
/// interval start paired with one more.
class CollocationScheme {
public:
    /// One node c1 in (0, 1].
    static CollocationScheme single(double c1);
    /// Two nodes {0, c2} with c2 in (0, 1]; {0, 2/3} are the Radau I points.
    static CollocationScheme pair(double c2);

    CollocationScheme() : CollocationScheme(single(0.5)) {}

    std::span<const double> parameters() const { return c_; }
    std::size_t order() const { return c_.size(); }
    bool starts_at_node() const { return c_.front() == 0.0; }
    double last_parameter() const { return c_.back(); }

private:
    explicit CollocationScheme(std::vector<double> c) : c_(std::move(c)) {}
    std::vector<double> c_;
};

/// Controls for the iterate-with-bound fixed-point solver.
struct FixedPointControls {
    int max_iterations = 500;
    double convergence_tol = 1e-14; // relative increment tolerance
    double divergence_cap_factor = 100.0;
    double divergence_cap_floor = 1e6;

    void validate() const;
};

enum class StepSolver {
    Iterate,  // fixed-point iteration with a divergence bound
    Analytic, // nonlinearity-supplied closed form; error when absent
    Auto,     // Analytic when available, Iterate otherwise
};

struct CollocationConfig {
    CollocationScheme scheme{};
    double initial_stepsize = 0.1;
    double horizon = 100.0;
    double step_tolerance = 1e-12;
    double halving_factor = 0.5;
    FixedPointControls fixed_point{};
    StepSolver solver = StepSolver::Auto;
    QuadratureRule quadrature{};

    void validate() const;
};

} // namespace volcol
