#include "volcol/problem.hpp"

#include <cmath>
#include <numbers>

#include "volcol/lagrange.hpp"
#include "volcol/solver.hpp"

namespace volcol::catalog {

namespace {

// Exact B_n(i,j) for kernels polynomial in s: K == 1 and k(u) = u.
Kernel::MomentFn constant_moments() {
    return [](const IntervalData&, std::span<const double> c, std::size_t i,
              std::size_t j) { return lagrange_moment(c, j, 0.0, c[i]); };
}

Kernel::MomentFn linear_moments() {
    // K(t_{n,i}, t_n + s h) = h (c_i - s).
    return [](const IntervalData& iv, std::span<const double> c, std::size_t i,
              std::size_t j) {
        return iv.h * (c[i] * lagrange_moment(c, j, 0.0, c[i]) -
                       lagrange_moment(c, j, 0.0, c[i], 1));
    };
}

} // namespace

Kernel constant_kernel() {
    return Kernel::convolution([](double) { return 1.0; }, "1")
        .with_analytic_moments(constant_moments());
}

Kernel linear_kernel() {
    return Kernel::convolution([](double u) { return u; }, "t-s")
        .with_analytic_moments(linear_moments());
}

Kernel abel_kernel(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw ConfigError("abel_kernel: exponent must lie in (0,1)");
    return Kernel::convolution([gamma](double u) { return std::pow(u, -gamma); },
                               "(t-s)^-" + std::to_string(gamma))
        .with_singularity_exponent(gamma);
}

Nonlinearity sqrt_square() {
    Nonlinearity g([](double y) { return y <= 1.0 ? std::sqrt(y) : y * y; },
                   "sqrt below 1, square above");
    g.with_analytic_fixed_point([](double alpha, double beta) -> std::optional<double> {
        const FixedPointResult r = fixed_point_sqrt_square({alpha, beta});
        if (r.status == StepStatus::Solved)
            return r.value;
        return std::nullopt;
    });
    return g;
}

Nonlinearity sqrt_exp() {
    return Nonlinearity([](double y) { return y <= 1.0 ? std::sqrt(y) : std::exp(y - 1.0); },
                        "sqrt below 1, exp above");
}

Nonlinearity power(double a) {
    if (!(a > 0.0))
        throw ConfigError("power nonlinearity: exponent must be positive");
    return Nonlinearity([a](double y) { return std::pow(y, a); },
                        "y^" + std::to_string(a));
}

Problem example(int id) {
    switch (id) {
    case 1:
        return {constant_kernel(), sqrt_square(), "example1", 3.0};
    case 2:
        return {constant_kernel(), sqrt_exp(), "example2", 3.0};
    case 3:
        return {linear_kernel(), sqrt_square(), "example3", 5.78482};
    case 4: {
        const double scale = 1.0 / std::sqrt(std::numbers::pi);
        Kernel k = Kernel::convolution(
                       [scale](double u) { return scale / std::sqrt(u); },
                       "(pi (t-s))^-1/2")
                       .with_singularity_exponent(0.5);
        return {std::move(k), sqrt_square(), "example4", 1.645842};
    }
    default:
        throw ConfigError("catalog: example id must be 1..4");
    }
}

} // namespace volcol::catalog
