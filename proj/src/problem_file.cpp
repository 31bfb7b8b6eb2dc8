#include "volcol/problem_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "volcol/expression.hpp"

namespace volcol {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

// Parses "name(arg)" forms; returns false when spec is not of that shape.
bool parse_call(const std::string& spec, const std::string& name, double& arg) {
    if (spec.size() <= name.size() + 2 || spec.compare(0, name.size(), name) != 0)
        return false;
    if (spec[name.size()] != '(' || spec.back() != ')')
        return false;
    const std::string inner = spec.substr(name.size() + 1,
                                          spec.size() - name.size() - 2);
    try {
        std::size_t used = 0;
        arg = std::stod(inner, &used);
        if (trim(inner.substr(used)).empty())
            return true;
    } catch (const std::exception&) {
    }
    throw ConfigError("malformed argument in '" + spec + "'");
}

} // namespace

Kernel make_kernel(const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec.empty())
        throw ConfigError("empty kernel spec");
    if (spec == "one")
        return catalog::constant_kernel();
    if (spec == "linear_convolution")
        return catalog::linear_kernel();
    double gamma = 0.0;
    if (parse_call(spec, "abel", gamma))
        return catalog::abel_kernel(gamma);
    const Expression expr = Expression::parse(spec, {"t", "s"});
    return Kernel::general(
        [expr](double t, double s) {
            const double v[2] = {t, s};
            return expr(v);
        },
        spec);
}

Nonlinearity make_nonlinearity(const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec.empty())
        throw ConfigError("empty nonlinearity spec");
    if (spec == "example1")
        return catalog::sqrt_square();
    if (spec == "example2")
        return catalog::sqrt_exp();
    double a = 0.0;
    if (parse_call(spec, "power", a))
        return catalog::power(a);
    const Expression expr = Expression::parse(spec, {"y"});
    return Nonlinearity(
        [expr](double y) {
            const double v[1] = {y};
            return expr(v);
        },
        spec);
}

Problem parse_problem_text(std::string_view text, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        if (!kv.emplace(key, value).second)
            throw ConfigError(origin + ": duplicate key '" + key + "'");
    }

    for (const auto& [key, value] : kv)
        if (key != "example" && key != "kernel" && key != "nonlinearity" &&
            key != "singularity_exponent" && key != "reference" && key != "label")
            throw ConfigError(origin + ": unknown key '" + key + "'");

    if (const auto it = kv.find("example"); it != kv.end()) {
        if (kv.size() > 1)
            throw ConfigError(origin + ": 'example' excludes the other keys");
        return catalog::example(std::stoi(it->second));
    }

    const auto kernel_it = kv.find("kernel");
    const auto g_it = kv.find("nonlinearity");
    if (kernel_it == kv.end() || g_it == kv.end())
        throw ConfigError(origin + ": 'kernel' and 'nonlinearity' are required");

    Problem problem{make_kernel(kernel_it->second), make_nonlinearity(g_it->second),
                    "problem", std::nullopt};
    if (const auto it = kv.find("singularity_exponent"); it != kv.end())
        problem.kernel.with_singularity_exponent(std::stod(it->second));
    if (const auto it = kv.find("reference"); it != kv.end())
        problem.reference_blowup = std::stod(it->second);
    if (const auto it = kv.find("label"); it != kv.end())
        problem.name = it->second;
    return problem;
}

Problem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open problem file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str(), path);
}

} // namespace volcol
