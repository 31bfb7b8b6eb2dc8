#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace volcol {

/// Continuous, strictly increasing nonlinearity G with G(0) = 0, defined on
/// [0, +inf). May carry a closed form for the nondivergent (smallest
/// positive) fixed point of y -> G(alpha + beta y).
class Nonlinearity {
public:
    using Fn = std::function<double(double)>;
    /// Returns the nondivergent fixed point, or nullopt when none exists.
    using FixedPointFn = std::function<std::optional<double>(double alpha, double beta)>;

    Nonlinearity(Fn g, std::string label)
        : g_(std::move(g)), label_(std::move(label)) {}

    Nonlinearity& with_analytic_fixed_point(FixedPointFn f) {
        fixed_point_ = std::move(f);
        return *this;
    }

    double operator()(double y) const { return g_(y); }

    bool has_analytic_fixed_point() const { return static_cast<bool>(fixed_point_); }

    std::optional<double> analytic_fixed_point(double alpha, double beta) const {
        return fixed_point_(alpha, beta);
    }

    const std::string& label() const { return label_; }

private:
    Fn g_;
    FixedPointFn fixed_point_;
    std::string label_;
};

} // namespace volcol
