#include "volcol/lagrange.hpp"

#include <cmath>

#include "volcol/errors.hpp"

namespace volcol {

void check_collocation_parameters(std::span<const double> c) {
    if (c.empty())
        throw ConfigError("collocation parameters: empty set");
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!(c[k] >= 0.0) || !(c[k] <= 1.0))
            throw ConfigError("collocation parameters must lie in [0,1]");
        if (k > 0 && !(c[k] > c[k - 1]))
            throw ConfigError("collocation parameters must be strictly increasing");
    }
}

double lagrange_basis(std::span<const double> c, std::size_t j, double v) {
    if (j >= c.size())
        throw ConfigError("lagrange_basis: node index out of range");
    double result = 1.0; // empty product covers the single-node constant basis
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k == j)
            continue;
        const double d = c[j] - c[k];
        if (d == 0.0)
            throw ConfigError("lagrange_basis: duplicate collocation parameters");
        result *= (v - c[k]) / d;
    }
    return result;
}

std::vector<double> lagrange_coefficients(std::span<const double> c, std::size_t j) {
    check_collocation_parameters(c);
    if (j >= c.size())
        throw ConfigError("lagrange_coefficients: node index out of range");
    std::vector<double> poly{1.0};
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k == j)
            continue;
        const double d = c[j] - c[k];
        // multiply poly by (s - c_k) / d
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t p = 0; p < poly.size(); ++p) {
            next[p] += poly[p] * (-c[k]) / d;
            next[p + 1] += poly[p] / d;
        }
        poly = std::move(next);
    }
    return poly;
}

double lagrange_moment(std::span<const double> c, std::size_t j, double a, double b,
                       int power) {
    if (power < 0)
        throw ConfigError("lagrange_moment: negative power");
    const std::vector<double> poly = lagrange_coefficients(c, j);
    double sum = 0.0;
    for (std::size_t p = 0; p < poly.size(); ++p) {
        const int q = static_cast<int>(p) + power + 1;
        sum += poly[p] * (std::pow(b, q) - std::pow(a, q)) / q;
    }
    return sum;
}

} // namespace volcol
