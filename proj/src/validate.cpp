#include "volcol/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace volcol {

const char* check_status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

bool ValidationReport::ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const ConditionCheck& c) {
        return c.status == CheckStatus::Fail;
    });
}

std::vector<double> default_validation_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 16; ++k)
        grid.push_back(0.25 * k);
    return grid;
}

namespace {

std::string point(double t, double s) {
    std::ostringstream os;
    os << "(t=" << t << ", s=" << s << ")";
    return os.str();
}

// integral of K(t, .) over [a, t]; graded near s = t for singular kernels
double kernel_integral(const Kernel& kernel, double a, double t,
                       const QuadratureRule& rule) {
    const Integrand f = [&](double s) { return kernel(t, s); };
    if (kernel.singular())
        return integrate_graded(f, a, t, t, kernel.singularity_exponent(), rule);
    return integrate(f, a, t, rule);
}

} // namespace

ValidationReport validate_general_conditions(const Kernel& kernel,
                                             const Nonlinearity& g,
                                             std::span<const double> grid,
                                             const QuadratureRule& rule) {
    if (grid.empty())
        throw ConfigError("validate_general_conditions: empty grid");
    std::vector<double> times(grid.begin(), grid.end());
    std::sort(times.begin(), times.end());
    if (!(times.front() > 0.0))
        throw ConfigError("validate_general_conditions: grid times must be positive");

    ValidationReport report;
    const auto add = [&](std::string name, CheckStatus status, std::string detail) {
        report.checks.push_back({std::move(name), status, std::move(detail)});
    };

    // K(t,s) >= 0 and finite on the sampled triangle 0 < s <= t.
    {
        CheckStatus status = CheckStatus::Pass;
        std::string detail = "sampled " + std::to_string(times.size() * times.size()) +
                             " points";
        for (double t : times) {
            for (double frac : times) {
                const double s = t * frac / times.back();
                if (s > t || s <= 0.0)
                    continue;
                double v;
                try {
                    v = kernel(t, s);
                } catch (const std::exception& e) {
                    status = CheckStatus::Fail;
                    detail = "evaluation failed at " + point(t, s) + ": " + e.what();
                    break;
                }
                if (std::isnan(v)) {
                    status = CheckStatus::Fail;
                    detail = "non-finite value at " + point(t, s);
                    break;
                }
                if (v < 0.0) {
                    status = CheckStatus::Fail;
                    detail = "negative value at " + point(t, s);
                    break;
                }
            }
            if (status == CheckStatus::Fail)
                break;
        }
        add("kernel non-negative on its support", status, detail);
    }

    // Convolution identity K(t+d, s+d) = K(t, s).
    if (kernel.form() == KernelForm::Convolution) {
        CheckStatus status = CheckStatus::Pass;
        std::string detail;
        for (double t : times) {
            const double s = 0.5 * t;
            for (double shift : {0.1, 0.7, 1.3}) {
                const double v0 = kernel(t, s);
                const double v1 = kernel(t + shift, s + shift);
                if (std::abs(v0 - v1) > 1e-12 * std::max(1.0, std::abs(v0))) {
                    status = CheckStatus::Fail;
                    detail = "shift mismatch at " + point(t, s);
                    break;
                }
            }
            if (status == CheckStatus::Fail)
                break;
        }
        add("convolution shift invariance", status, detail);
    }

    // t -> integral of K(t,s) over [0,t] strictly increasing on the grid.
    {
        CheckStatus status = CheckStatus::Pass;
        std::string detail;
        double prev = 0.0;
        bool first = true;
        for (double t : times) {
            double v;
            try {
                v = kernel_integral(kernel, 0.0, t, rule);
            } catch (const Error& e) {
                status = CheckStatus::Inconclusive;
                detail = std::string("quadrature failed at t=") + std::to_string(t) +
                         ": " + e.what();
                break;
            }
            if (std::isnan(v)) {
                status = CheckStatus::Fail;
                detail = "non-finite integral at t=" + std::to_string(t);
                break;
            }
            if (!first && !(v > prev)) {
                status = CheckStatus::Fail;
                detail = "not increasing between consecutive grid times near t=" +
                         std::to_string(t);
                break;
            }
            prev = v;
            first = false;
        }
        add("kernel integral strictly increasing", status, detail);
    }

    // Vanishing small-interval integral: for sampled a, the integral of
    // K(a+d, s) over [a, a+d] decreases below tolerance along dyadic d.
    {
        CheckStatus status = CheckStatus::Pass;
        std::string detail;
        const std::vector<double> anchors{0.0, times.front(), times[times.size() / 2]};
        for (double a : anchors) {
            double d = 0.5;
            double last = std::numeric_limits<double>::infinity();
            bool shrank = true;
            for (int k = 0; k < 24; ++k, d *= 0.5) {
                double v;
                try {
                    v = kernel_integral(kernel, a, a + d, rule);
                } catch (const Error&) {
                    shrank = false;
                    break;
                }
                if (v > last * (1.0 + 1e-9)) {
                    shrank = false;
                    break;
                }
                last = v;
            }
            if (!shrank || !(last <= 1e-6)) {
                status = shrank ? CheckStatus::Fail : CheckStatus::Inconclusive;
                detail = "small-interval integral does not vanish at a=" +
                         std::to_string(a);
                break;
            }
        }
        add("vanishing small-interval integral", status, detail);
    }

    // G(0) = 0.
    {
        const double g0 = g(0.0);
        if (std::isnan(g0))
            add("G(0) = 0", CheckStatus::Fail, "G(0) is NaN");
        else if (std::abs(g0) > 0.0)
            add("G(0) = 0", CheckStatus::Fail, "G(0) = " + std::to_string(g0));
        else
            add("G(0) = 0", CheckStatus::Pass, {});
    }

    // G strictly increasing and non-negative on a sampled range.
    {
        CheckStatus status = CheckStatus::Pass;
        std::string detail;
        std::vector<double> ys;
        for (int k = -12; k <= 2; ++k)
            ys.push_back(std::pow(10.0, k));
        for (double extra : times)
            ys.push_back(extra);
        std::sort(ys.begin(), ys.end());
        double prev = g(0.0);
        double prev_y = 0.0;
        for (double y : ys) {
            const double v = g(y);
            if (std::isnan(v)) {
                status = CheckStatus::Fail;
                detail = "G is NaN at y=" + std::to_string(y);
                break;
            }
            if (v < 0.0) {
                status = CheckStatus::Fail;
                detail = "G negative at y=" + std::to_string(y);
                break;
            }
            if (!(v > prev)) {
                status = CheckStatus::Fail;
                detail = "G not strictly increasing between y=" + std::to_string(prev_y) +
                         " and y=" + std::to_string(y);
                break;
            }
            prev = v;
            prev_y = y;
        }
        add("G strictly increasing, G >= 0", status, detail);
    }

    return report;
}

} // namespace volcol
