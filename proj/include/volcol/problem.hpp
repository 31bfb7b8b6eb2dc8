#pragma once

#include <optional>
#include <string>

#include "volcol/kernel.hpp"
#include "volcol/nonlinearity.hpp"

namespace volcol {

/// A homogeneous Volterra-Hammerstein problem y(t) = integral of
/// K(t,s) G(y(s)) over [0,t], solved through its implicitly linear form
/// z = G(Vz).
struct Problem {
    Kernel kernel;
    Nonlinearity nonlinearity;
    std::string name;
    std::optional<double> reference_blowup; // known or assumed blow-up time
};

namespace catalog {

/// K(t,s) == 1, with exact coefficient moments.
Kernel constant_kernel();
/// k(u) = u, with exact coefficient moments.
Kernel linear_kernel();
/// k(u) = u^-gamma, gamma in (0,1); weakly singular on the diagonal.
Kernel abel_kernel(double gamma);

/// G(y) = sqrt(y) below 1, y^2 above; carries the closed-form fixed points.
Nonlinearity sqrt_square();
/// G(y) = sqrt(y) below 1, e^(y-1) above.
Nonlinearity sqrt_exp();
/// G(y) = y^a with a > 0.
Nonlinearity power(double a);

inline constexpr int count = 4;

/// Built-in problems 1..4:
///   1: K == 1 with sqrt_square           (blow-up at 3)
///   2: K == 1 with sqrt_exp              (blow-up at 3)
///   3: k(u) = u with sqrt_square         (blow-up near 5.78482)
///   4: k(u) = (pi u)^-1/2 with sqrt_square (blow-up near 1.645842)
Problem example(int id);

} // namespace catalog

} // namespace volcol
