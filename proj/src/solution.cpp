#include "volcol/solution.hpp"

#include <algorithm>
#include <cmath>

#include "volcol/lagrange.hpp"

namespace volcol {

CollocationSolution::CollocationSolution(std::vector<double> mesh,
                                         std::vector<double> parameters,
                                         std::vector<std::vector<double>> coefficients)
    : mesh_(std::move(mesh)), c_(std::move(parameters)),
      coefficients_(std::move(coefficients)) {
    check_collocation_parameters(c_);
    if (mesh_.size() < 2 || mesh_.front() != 0.0)
        throw ConfigError("collocation solution: mesh must start at 0");
    for (std::size_t n = 1; n < mesh_.size(); ++n)
        if (!(mesh_[n] > mesh_[n - 1]))
            throw ConfigError("collocation solution: mesh must be strictly increasing");
    if (coefficients_.size() + 1 != mesh_.size())
        throw ConfigError("collocation solution: one coefficient set per interval");
    for (const auto& z : coefficients_)
        if (z.size() != c_.size())
            throw ConfigError("collocation solution: coefficient count mismatch");
}

std::span<const double> CollocationSolution::interval_coefficients(std::size_t n) const {
    if (n >= coefficients_.size())
        throw ConfigError("collocation solution: interval index out of range");
    return coefficients_[n];
}

double CollocationSolution::max_coefficient() const {
    double m = 0.0;
    for (const auto& z : coefficients_)
        for (double v : z)
            m = std::max(m, v);
    return m;
}

std::size_t CollocationSolution::locate(double t) const {
    if (!(t > 0.0) || !(t <= mesh_.back()))
        throw ConfigError("collocation solution: evaluation outside (0, T]");
    // Schemes with a parameter at the interval start own their left mesh
    // node; all others own the right one.
    const bool left_closed = c_.front() == 0.0;
    std::size_t n;
    if (left_closed) {
        auto it = std::upper_bound(mesh_.begin(), mesh_.end(), t);
        n = static_cast<std::size_t>(it - mesh_.begin()) - 1;
    } else {
        auto it = std::lower_bound(mesh_.begin(), mesh_.end(), t);
        n = static_cast<std::size_t>(it - mesh_.begin());
        if (n > 0)
            --n;
    }
    return std::min(n, coefficients_.size() - 1);
}

double CollocationSolution::evaluate_z(double t) const {
    const std::size_t n = locate(t);
    const double v = (t - mesh_[n]) / (mesh_[n + 1] - mesh_[n]);
    double z = 0.0;
    for (std::size_t j = 0; j < c_.size(); ++j)
        z += lagrange_basis(c_, j, v) * coefficients_[n][j];
    return z;
}

double CollocationSolution::evaluate_y(const Kernel& kernel, double t,
                                       const QuadratureRule& rule) const {
    if (t == 0.0)
        return 0.0;
    if (!(t > 0.0) || !(t <= mesh_.back()))
        throw ConfigError("collocation solution: evaluation outside (0, T]");
    double sum = 0.0;
    for (std::size_t n = 0; n < coefficients_.size() && mesh_[n] < t; ++n) {
        const LagState::Interval iv{mesh_[n], mesh_[n + 1] - mesh_[n], coefficients_[n]};
        sum += kernel_panel_integral(kernel, t, iv, c_, std::min(t, mesh_[n + 1]), rule);
    }
    return sum;
}

double CollocationSolution::max_residual(const Problem& problem,
                                         const QuadratureRule& rule) const {
    LagState lag(std::vector<double>(c_.begin(), c_.end()));
    double worst = 0.0;
    for (std::size_t n = 0; n < coefficients_.size(); ++n) {
        const IntervalData interval{mesh_[n], mesh_[n + 1] - mesh_[n]};
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const double t_ni = interval.t0 + c_[i] * interval.h;
            double arg = lag_term(problem.kernel, lag, t_ni, rule);
            for (std::size_t j = 0; j < c_.size(); ++j)
                arg += interval.h *
                       coefficient_integral(problem.kernel, interval, c_, i, j, rule) *
                       coefficients_[n][j];
            const double z = coefficients_[n][i];
            const double residual = std::abs(z - problem.nonlinearity(arg));
            worst = std::max(worst, residual / std::max(1.0, std::abs(z)));
        }
        lag.append(interval.t0, interval.h, coefficients_[n]);
    }
    return worst;
}

LagState CollocationSolution::to_lag_state(std::size_t upto) const {
    LagState lag(std::vector<double>(c_.begin(), c_.end()));
    for (std::size_t n = 0; n < std::min(upto, coefficients_.size()); ++n)
        lag.append(mesh_[n], mesh_[n + 1] - mesh_[n], coefficients_[n]);
    return lag;
}

} // namespace volcol
