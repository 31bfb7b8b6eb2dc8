#include "volcol/config.hpp"

#include "volcol/errors.hpp"
#include "volcol/lagrange.hpp"

namespace volcol {

CollocationScheme CollocationScheme::single(double c1) {
    if (!(c1 > 0.0) || !(c1 <= 1.0))
        throw ConfigError("single-node scheme requires c1 in (0,1]");
    return CollocationScheme({c1});
}

CollocationScheme CollocationScheme::pair(double c2) {
    if (!(c2 > 0.0) || !(c2 <= 1.0))
        throw ConfigError("pair scheme requires c2 in (0,1]");
    return CollocationScheme({0.0, c2});
}

void FixedPointControls::validate() const {
    if (max_iterations < 1)
        throw ConfigError("fixed-point controls: max_iterations must be positive");
    if (!(convergence_tol > 0.0))
        throw ConfigError("fixed-point controls: convergence_tol must be positive");
    if (!(divergence_cap_factor > 0.0) || !(divergence_cap_floor > 0.0))
        throw ConfigError("fixed-point controls: divergence caps must be positive");
}

void CollocationConfig::validate() const {
    check_collocation_parameters(scheme.parameters());
    if (!(initial_stepsize > 0.0))
        throw ConfigError("config: initial stepsize must be positive");
    if (!(horizon > 0.0))
        throw ConfigError("config: horizon must be positive");
    if (!(step_tolerance > 0.0))
        throw ConfigError("config: step tolerance must be positive");
    if (!(step_tolerance < initial_stepsize))
        throw ConfigError("config: step tolerance must be below the initial stepsize");
    if (!(halving_factor > 0.0) || !(halving_factor < 1.0))
        throw ConfigError("config: halving factor must lie in (0,1)");
    fixed_point.validate();
    quadrature.validate();
}

} // namespace volcol
