#pragma once

#include <span>
#include <string>
#include <vector>

#include "volcol/kernel.hpp"
#include "volcol/nonlinearity.hpp"
#include "volcol/quadrature.hpp"

namespace volcol {

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* check_status_name(CheckStatus s);

struct ConditionCheck {
    std::string name;
    CheckStatus status = CheckStatus::Inconclusive;
    std::string detail; // witness point on failure
};

struct ValidationReport {
    std::vector<ConditionCheck> checks;
    bool ok() const; // no Fail entries
};

/// Times used to spot-check the kernel and nonlinearity conditions.
std::vector<double> default_validation_grid();

/// Grid-based, advisory checks of the standing hypotheses: K >= 0 on its
/// support, the convolution identity, strictly increasing integral
/// t -> K(t) = integral of K(t,s) ds, vanishing small-interval integrals,
/// G(0) = 0, and G strictly increasing. Numeric verdicts, never proofs.
ValidationReport validate_general_conditions(const Kernel& kernel,
                                             const Nonlinearity& g,
                                             std::span<const double> grid,
                                             const QuadratureRule& rule);

} // namespace volcol
