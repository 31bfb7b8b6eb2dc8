#pragma once

#include <span>
#include <vector>

namespace volcol {

/// Throws ConfigError unless c is non-empty, strictly increasing and within [0,1].
void check_collocation_parameters(std::span<const double> c);

/// Lagrange fundamental polynomial L_j for the nodes c, evaluated at v.
/// A single node gives the constant basis L_0 == 1.
double lagrange_basis(std::span<const double> c, std::size_t j, double v);

/// Coefficients of L_j in the monomial basis, constant term first.
std::vector<double> lagrange_coefficients(std::span<const double> c, std::size_t j);

/// Exact value of the integral of s^power * L_j(s) over [a, b].
double lagrange_moment(std::span<const double> c, std::size_t j, double a, double b,
                       int power = 0);

} // namespace volcol
