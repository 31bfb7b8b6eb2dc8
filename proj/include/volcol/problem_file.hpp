#pragma once

#include <string>
#include <string_view>

#include "volcol/problem.hpp"

namespace volcol {

/// Kernel from a short spec: "one", "linear_convolution", "abel(gamma)", or
/// an expression in t and s.
Kernel make_kernel(const std::string& spec);

/// Nonlinearity from a short spec: "example1", "example2", "power(a)", or an
/// expression in y.
Nonlinearity make_nonlinearity(const std::string& spec);

/// Plain-text problem description, one `key = value` per line, '#' comments.
/// Keys: example (1..4, overrides the rest), kernel, nonlinearity,
/// singularity_exponent, reference, label.
Problem parse_problem_text(std::string_view text, const std::string& origin);

Problem load_problem_file(const std::string& path);

} // namespace volcol
