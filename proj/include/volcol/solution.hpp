#pragma once

#include <span>
#include <vector>

#include "volcol/problem.hpp"
#include "volcol/quadrature.hpp"

namespace volcol {

/// Piecewise polynomial collocation solution z_h, fixed by its coefficients
/// Z_{n,j} at the collocation points t_n + c_j h_n. Each interval carries a
/// polynomial of degree below the parameter count.
class CollocationSolution {
public:
    CollocationSolution(std::vector<double> mesh, std::vector<double> parameters,
                        std::vector<std::vector<double>> coefficients);

    std::span<const double> mesh() const { return mesh_; }
    std::span<const double> parameters() const { return c_; }
    std::size_t intervals() const { return coefficients_.size(); }
    std::span<const double> interval_coefficients(std::size_t n) const;
    double end_time() const { return mesh_.back(); }
    double max_coefficient() const;

    /// z_h(t) for t in (0, end_time()]. At interior mesh nodes the value
    /// follows the side that owns a collocation parameter at the interval
    /// boundary, so evaluation at every collocation point reproduces the
    /// stored coefficient exactly.
    double evaluate_z(double t) const;

    /// y_h(t) = (V z_h)(t): kernel-weighted integral of z_h over [0, t].
    double evaluate_y(const Kernel& kernel, double t, const QuadratureRule& rule) const;

    /// Largest normalized collocation residual
    /// |Z_{n,i} - G(F_n + h_n sum_j B_n(i,j) Z_{n,j})| / max(1, |Z_{n,i}|).
    double max_residual(const Problem& problem, const QuadratureRule& rule) const;

    /// Lag state holding the first `upto` intervals.
    LagState to_lag_state(std::size_t upto) const;

private:
    std::size_t locate(double t) const;

    std::vector<double> mesh_; // t_0 = 0 < t_1 < ... < t_N
    std::vector<double> c_;
    std::vector<std::vector<double>> coefficients_; // per interval, one per parameter
};

} // namespace volcol
