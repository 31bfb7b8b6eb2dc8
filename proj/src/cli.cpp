#include "volcol/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "volcol/analysis.hpp"
#include "volcol/problem_file.hpp"
#include "volcol/validate.hpp"

namespace volcol {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* status_name(BlowUpReport::Status s) {
    switch (s) {
    case BlowUpReport::Status::BlowUp:
        return "blow-up";
    case BlowUpReport::Status::ReachedHorizon:
        return "reached-horizon";
    case BlowUpReport::Status::NumericFailure:
        return "numeric-failure";
    }
    return "unknown";
}

std::string stamp_line() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string("# generated ") + buf + "\n";
}

struct Options {
    int example = 0;
    std::string problem_file;
    int case_id = 0;
    double c1 = std::nan("");
    double c2 = std::nan("");
    std::string c_grid;
    std::vector<double> h;
    double horizon = 100.0;
    double step_tol = 1e-12;
    double halve = 0.5;
    std::string solver; // "", "auto", "general", "analytic"
    std::string out;
    std::string format; // "", "text", "csv", "json"
    double ref = std::nan("");
    unsigned threads = 0;
    bool stamp = false;
    double alpha = std::nan("");
    double delta = 1.0;
};

Problem build_problem(const Options& o) {
    if (o.example != 0 && !o.problem_file.empty())
        throw ConfigError("pass either --example or --problem, not both");
    Problem p = o.example != 0 ? catalog::example(o.example)
                               : (!o.problem_file.empty()
                                      ? load_problem_file(o.problem_file)
                                      : throw ConfigError(
                                            "one of --example/--problem is required"));
    if (!std::isnan(o.ref))
        p.reference_blowup = o.ref;
    return p;
}

int resolve_case(const Options& o) {
    if (o.case_id != 0) {
        if (o.case_id != 1 && o.case_id != 2)
            throw ConfigError("--case must be 1 or 2");
        if (o.case_id == 1 && !std::isnan(o.c2))
            throw ConfigError("--c2 belongs to case 2");
        if (o.case_id == 2 && !std::isnan(o.c1))
            throw ConfigError("--c1 belongs to case 1");
        return o.case_id;
    }
    if (!std::isnan(o.c1) && std::isnan(o.c2))
        return 1;
    if (!std::isnan(o.c2) && std::isnan(o.c1))
        return 2;
    throw ConfigError("--case 1|2 (or exactly one of --c1/--c2) is required");
}

StepSolver resolve_solver(const Options& o) {
    if (o.solver.empty()) {
        // reproduce the catalog runs: closed-form fixed points for the first
        // problem, plain iteration elsewhere
        if (o.example == 1)
            return StepSolver::Analytic;
        if (o.example != 0)
            return StepSolver::Iterate;
        return StepSolver::Auto;
    }
    if (o.solver == "auto")
        return StepSolver::Auto;
    if (o.solver == "general")
        return StepSolver::Iterate;
    if (o.solver == "analytic")
        return StepSolver::Analytic;
    throw ConfigError("--solver must be auto, general, or analytic");
}

CollocationConfig make_config(const Options& o, const CollocationScheme& scheme,
                              double h) {
    CollocationConfig cfg;
    cfg.scheme = scheme;
    cfg.initial_stepsize = h;
    cfg.horizon = o.horizon;
    cfg.step_tolerance = o.step_tol;
    cfg.halving_factor = o.halve;
    cfg.solver = resolve_solver(o);
    cfg.validate();
    return cfg;
}

std::vector<double> make_grid(const Options& o, int case_id) {
    if (!o.c_grid.empty()) {
        double a = 0, b = 0, step = 0;
        char colon1 = 0, colon2 = 0;
        std::istringstream in(o.c_grid);
        in >> a >> colon1 >> b >> colon2 >> step;
        if (!in || colon1 != ':' || colon2 != ':' || !(step > 0.0) || b < a)
            throw ConfigError("--c-grid expects a:b:step with step > 0 and a <= b");
        std::vector<double> grid;
        const long count = std::lround(std::floor((b - a) / step + 1e-9));
        for (long k = 0; k <= count; ++k) {
            double c = a + static_cast<double>(k) * step;
            if (c > b && c - b <= 1e-9 * step)
                c = b;
            if (c <= b)
                grid.push_back(c);
        }
        if (grid.empty())
            throw ConfigError("--c-grid produced no points");
        return grid;
    }
    const double single = case_id == 1 ? o.c1 : o.c2;
    if (!std::isnan(single))
        return {single};
    // default grid 0.01..1 step 0.01; the singular-kernel case-1 sweep
    // starts at 0.05
    const double start = (o.example == 4 && case_id == 1) ? 0.05 : 0.01;
    std::vector<double> grid;
    for (long k = std::lround(start * 100); k <= 100; ++k)
        grid.push_back(static_cast<double>(k) / 100.0);
    return grid;
}

std::string resolved_format(const Options& o, const std::string& fallback) {
    if (o.format.empty())
        return fallback;
    if (o.format != "text" && o.format != "csv" && o.format != "json")
        throw ConfigError("--format must be text, csv, or json");
    return o.format;
}

void emit(const Options& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(o.out, std::ios::binary);
    if (!out)
        throw Error("cannot write output file '" + o.out + "'");
    out << payload;
}

ordered_json row_json(const SweepRow& row) {
    return ordered_json{{"c", row.c},
                        {"h", row.h},
                        {"estimate", row.estimate},
                        {"status", status_name(row.status)},
                        {"steps", row.steps},
                        {"halvings", row.halvings}};
}

// ---------------------------------------------------------------- run

int cmd_run(const Options& o) {
    const Problem problem = build_problem(o);
    const int case_id = resolve_case(o);
    const double c = case_id == 1 ? o.c1 : o.c2;
    if (std::isnan(c))
        throw ConfigError(case_id == 1 ? "--c1 is required for case 1"
                                       : "--c2 is required for case 2");
    if (o.h.size() != 1)
        throw ConfigError("run expects exactly one --h value");
    const CollocationScheme scheme =
        case_id == 1 ? CollocationScheme::single(c) : CollocationScheme::pair(c);
    const CollocationConfig cfg = make_config(o, scheme, o.h.front());

    const BlowUpReport report = estimate_blowup(problem, cfg);
    const std::string fmt = resolved_format(o, "text");
    if (fmt == "csv") {
        std::string payload = o.stamp ? stamp_line() : "";
        payload += format_report_csv(c, o.h.front(), report);
        emit(o, payload);
    } else if (fmt == "json") {
        ordered_json j{{"command", "run"},
                       {"problem", problem.name},
                       {"case", case_id},
                       {"c", c},
                       {"h", o.h.front()},
                       {"status", status_name(report.status)},
                       {"estimate", report.estimate},
                       {"steps", static_cast<long>(report.steps.size())},
                       {"halvings", report.halvings},
                       {"final_stepsize", report.final_stepsize},
                       {"positivity_flags", report.positivity_flags}};
        if (o.stamp)
            j["generated"] = stamp_line().substr(12);
        if (!report.detail.empty())
            j["detail"] = report.detail;
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        if (o.stamp)
            os << stamp_line();
        os << problem.name << " case " << case_id << " c=" << num(c)
           << " h=" << num(o.h.front()) << "\n";
        os << "status:          " << status_name(report.status) << "\n";
        os << "estimate:        " << num(report.estimate) << "\n";
        os << "accepted steps:  " << report.steps.size() << "\n";
        os << "halvings:        " << report.halvings << "\n";
        os << "final stepsize:  " << num(report.final_stepsize) << "\n";
        if (report.positivity_flags > 0)
            os << "positivity flags: " << report.positivity_flags << "\n";
        if (problem.reference_blowup && report.status == BlowUpReport::Status::BlowUp)
            os << "relative error:  "
               << num(std::abs(report.estimate - *problem.reference_blowup) /
                      *problem.reference_blowup)
               << " (reference " << num(*problem.reference_blowup) << ")\n";
        if (!report.detail.empty())
            os << "detail:          " << report.detail << "\n";
        emit(o, os.str());
    }
    return report.status == BlowUpReport::Status::NumericFailure ? 1 : 0;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Options& o) {
    const Problem problem = build_problem(o);
    const int case_id = resolve_case(o);
    if (o.h.empty())
        throw ConfigError("sweep expects at least one --h value");
    const std::vector<double> grid = make_grid(o, case_id);
    const CollocationScheme scheme = case_id == 1 ? CollocationScheme::single(grid[0])
                                                  : CollocationScheme::pair(grid[0]);
    const CollocationConfig base = make_config(o, scheme, o.h.front());
    const SweepRecord record =
        sweep_parameter(problem, base, grid, o.h, o.threads);

    const std::string fmt = resolved_format(o, "csv");
    if (fmt == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : record.rows)
            rows.push_back(row_json(row));
        ordered_json summary = ordered_json::array();
        for (const auto& s : record.per_h) {
            ordered_json js{{"h", s.h},
                            {"min", s.min_estimate},
                            {"c_at_min", s.c_at_min},
                            {"max", s.max_estimate},
                            {"c_at_max", s.c_at_max},
                            {"range", s.range},
                            {"blowup_rows", s.blowup_rows},
                            {"failed_rows", s.failed_rows}};
            if (s.rel_spread)
                js["rel_spread"] = *s.rel_spread;
            summary.push_back(js);
        }
        ordered_json j{{"command", "sweep"},
                       {"problem", problem.name},
                       {"case", case_id},
                       {"rows", rows},
                       {"summary", summary}};
        if (record.reference)
            j["reference"] = *record.reference;
        emit(o, j.dump(2) + "\n");
    } else {
        std::string payload = o.stamp ? stamp_line() : "";
        payload += format_sweep_csv(record);
        emit(o, payload);
    }
    long ok_rows = 0;
    for (const auto& row : record.rows)
        if (row.status != BlowUpReport::Status::NumericFailure)
            ++ok_rows;
    return ok_rows > 0 ? 0 : 1;
}

// ---------------------------------------------------------------- intersect

int cmd_intersect(const Options& o) {
    const Problem problem = build_problem(o);
    const int case_id = resolve_case(o);
    if (o.h.size() != 2)
        throw ConfigError("intersect expects exactly two --h values");
    if (o.h[0] == o.h[1])
        throw ConfigError("intersect expects two distinct --h values");
    const std::vector<double> grid = make_grid(o, case_id);
    if (grid.size() < 2)
        throw ConfigError("intersect needs a c grid with at least two points");
    const CollocationScheme scheme = case_id == 1 ? CollocationScheme::single(grid[0])
                                                  : CollocationScheme::pair(grid[0]);
    const CollocationConfig base = make_config(o, scheme, o.h.front());
    const SweepRecord record = sweep_parameter(problem, base, grid, o.h, o.threads);
    const auto curve_a = record.curve(o.h[0]);
    const auto curve_b = record.curve(o.h[1]);
    const Intersection ix = intersect_curves(curve_a, curve_b);

    const std::string fmt = resolved_format(o, "csv");
    if (fmt == "json") {
        ordered_json crossings = ordered_json::array();
        for (const auto& cr : ix.crossings)
            crossings.push_back(ordered_json{
                {"c", cr.c}, {"t", cr.t}, {"slope_gap", cr.slope_gap}});
        ordered_json j{{"command", "intersect"}, {"problem", problem.name},
                       {"case", case_id},        {"h", o.h},
                       {"c_star", ix.c_star},    {"t_star", ix.t_star},
                       {"crossings", crossings}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::string payload = o.stamp ? stamp_line() : "";
        payload += "c_star,t_star\n";
        payload += num(ix.c_star) + "," + num(ix.t_star) + "\n";
        for (const auto& cr : ix.crossings)
            payload += "# crossing c=" + num(cr.c) + " t=" + num(cr.t) +
                       " slope_gap=" + num(cr.slope_gap) + "\n";
        emit(o, payload);
    }
    return 0;
}

// ---------------------------------------------------------------- check

double infer_alpha(const Options& o, const Problem& problem) {
    if (!std::isnan(o.alpha))
        return o.alpha;
    if (o.example == 3)
        return 2.0; // k(u) = u = u^(2-1)
    if (problem.kernel.singular())
        return 1.0 - problem.kernel.singularity_exponent();
    return 1.0;
}

int cmd_check(const Options& o) {
    const Problem problem = build_problem(o);
    const QuadratureRule rule;
    const ValidationReport validation = validate_general_conditions(
        problem.kernel, problem.nonlinearity, default_validation_grid(), rule);
    const GrowthReport growth = classify_growth(
        problem.nonlinearity, default_near_grid(), default_far_grid());
    const double alpha = infer_alpha(o, problem);
    std::optional<IntegralConditionReport> integral;
    std::string integral_error;
    try {
        integral = integral_condition(problem.nonlinearity, alpha, o.delta, rule);
    } catch (const Error& e) {
        integral_error = e.what();
    }

    const bool convolution = problem.kernel.form() == KernelForm::Convolution;
    std::string assessment;
    if (!validation.ok())
        assessment = "invalid problem: general conditions violated";
    else if (growth.y_over_g_bounded_away_from_zero == Verdict::Contradicts)
        assessment = "no blow-up expected (unconditional existence)";
    else if (growth.g_over_y_unbounded_near_zero == Verdict::Contradicts)
        assessment = "no nondivergent nontrivial branch near zero";
    else if (convolution &&
             growth.g_over_y_unbounded_away_from_zero == Verdict::Contradicts)
        assessment = "no blow-up expected (existence for fine meshes)";
    else if (integral && integral->verdict == IntegralVerdict::Diverges)
        assessment = "no blow-up expected (integral condition diverges)";
    else if (growth.g_over_y_unbounded_near_zero == Verdict::Supports &&
             growth.y_over_g_bounded_away_from_zero == Verdict::Supports &&
             (!convolution ||
              growth.g_over_y_unbounded_away_from_zero == Verdict::Supports))
        assessment = "blow-up possible";
    else
        assessment = "inconclusive";

    const std::string fmt = resolved_format(o, "text");
    if (fmt == "json") {
        ordered_json checks = ordered_json::array();
        for (const auto& c : validation.checks) {
            ordered_json jc{{"name", c.name}, {"status", check_status_name(c.status)}};
            if (!c.detail.empty())
                jc["detail"] = c.detail;
            checks.push_back(jc);
        }
        ordered_json j{{"command", "check"},
                       {"problem", problem.name},
                       {"validation", checks},
                       {"validation_ok", validation.ok()},
                       {"growth",
                        ordered_json{
                            {"g_over_y_unbounded_near_zero",
                             verdict_name(growth.g_over_y_unbounded_near_zero)},
                            {"g_over_y_unbounded_away_from_zero",
                             verdict_name(growth.g_over_y_unbounded_away_from_zero)},
                            {"y_over_g_bounded_away_from_zero",
                             verdict_name(growth.y_over_g_bounded_away_from_zero)}}},
                       {"assessment", assessment}};
        if (integral) {
            j["integral_condition"] =
                ordered_json{{"alpha", integral->alpha},
                             {"delta", integral->delta},
                             {"verdict", integral_verdict_name(integral->verdict)},
                             {"partials", integral->partials}};
        } else {
            j["integral_condition"] = ordered_json{{"error", integral_error}};
        }
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "problem: " << problem.name << "\n";
        os << "general conditions:\n";
        for (const auto& c : validation.checks) {
            os << "  [" << check_status_name(c.status) << "] " << c.name;
            if (!c.detail.empty())
                os << " - " << c.detail;
            os << "\n";
        }
        os << "growth classification:\n";
        os << "  G(y)/y unbounded near zero:      "
           << verdict_name(growth.g_over_y_unbounded_near_zero) << "\n";
        os << "  G(y)/y unbounded away from zero: "
           << verdict_name(growth.g_over_y_unbounded_away_from_zero) << "\n";
        os << "  y/G(y) bounded away from zero:   "
           << verdict_name(growth.y_over_g_bounded_away_from_zero) << "\n";
        if (!growth.notes.empty())
            os << "  notes: " << growth.notes << "\n";
        if (integral) {
            os << "integral condition (alpha=" << num(alpha) << ", delta="
               << num(o.delta) << "): " << integral_verdict_name(integral->verdict)
               << "\n";
            os << "  partial integrals:";
            for (double p : integral->partials)
                os << " " << num(p);
            os << "\n";
        } else {
            os << "integral condition: not evaluated (" << integral_error << ")\n";
        }
        os << "assessment: " << assessment << "\n";
        emit(o, os.str());
    }
    return validation.ok() ? 0 : 1;
}

void add_common_options(CLI::App* cmd, Options& o, bool with_scheme) {
    cmd->add_option("--example", o.example, "built-in problem id (1-4)")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--problem", o.problem_file, "problem description file");
    if (with_scheme) {
        cmd->add_option("--case", o.case_id, "collocation case: 1 (m=1) or 2 (m=2, c1=0)");
        cmd->add_option("--c1", o.c1, "case-1 collocation parameter in (0,1]");
        cmd->add_option("--c2", o.c2, "case-2 collocation parameter in (0,1]");
        cmd->add_option("--c-grid", o.c_grid, "parameter grid a:b:step");
        cmd->add_option("--h", o.h, "initial stepsize(s), comma separated")
            ->delimiter(',');
        cmd->add_option("--horizon", o.horizon, "stop time when no blow-up occurs");
        cmd->add_option("--step-tol", o.step_tol,
                        "stepsize tolerance ending the halving cascade");
        cmd->add_option("--halve", o.halve, "stepsize reduction factor in (0,1)");
        cmd->add_option("--solver", o.solver,
                        "per-step fixed point solver: auto|general|analytic");
        cmd->add_option("--threads", o.threads, "sweep worker threads (0 = hardware)");
    }
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "output format: text|csv|json");
    cmd->add_option("--ref", o.ref, "reference blow-up time for error columns");
    cmd->add_flag("--stamp", o.stamp, "include a generation timestamp header");
}

} // namespace

std::string format_report_csv(double c, double h, const BlowUpReport& report) {
    std::string out = "c,h,estimate,status,steps,halvings\n";
    out += num(c) + "," + num(h) + "," + num(report.estimate) + "," +
           status_name(report.status) + "," + std::to_string(report.steps.size()) +
           "," + std::to_string(report.halvings) + "\n";
    return out;
}

std::string format_sweep_csv(const SweepRecord& record) {
    std::string out = "c,h,estimate,status,steps,halvings\n";
    for (const auto& row : record.rows)
        out += num(row.c) + "," + num(row.h) + "," + num(row.estimate) + "," +
               status_name(row.status) + "," + std::to_string(row.steps) + "," +
               std::to_string(row.halvings) + "\n";
    for (const auto& s : record.per_h) {
        out += "# summary h=" + num(s.h);
        if (s.blowup_rows > 0) {
            out += " min=" + num(s.min_estimate) + " c_min=" + num(s.c_at_min) +
                   " max=" + num(s.max_estimate) + " c_max=" + num(s.c_at_max) +
                   " range=" + num(s.range);
            if (s.rel_spread)
                out += " rel_spread=" + num(*s.rel_spread);
        }
        out += " blowup_rows=" + std::to_string(s.blowup_rows) +
               " failed_rows=" + std::to_string(s.failed_rows) + "\n";
    }
    return out;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Collocation solutions and blow-up time estimation for "
                 "homogeneous Volterra-Hammerstein integral equations"};
    app.require_subcommand(1);

    Options run_opts, sweep_opts, intersect_opts, check_opts;
    CLI::App* run = app.add_subcommand("run", "single blow-up estimate");
    add_common_options(run, run_opts, true);
    CLI::App* sweep =
        app.add_subcommand("sweep", "estimates over a collocation-parameter grid");
    add_common_options(sweep, sweep_opts, true);
    CLI::App* intersect = app.add_subcommand(
        "intersect", "refine the estimate from two sweep curves");
    add_common_options(intersect, intersect_opts, true);
    CLI::App* check = app.add_subcommand(
        "check", "validate the problem and screen for blow-up");
    add_common_options(check, check_opts, false);
    check->add_option("--alpha", check_opts.alpha,
                      "Abel exponent for the integral condition");
    check->add_option("--delta", check_opts.delta,
                      "lower limit for the integral condition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(run_opts);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts);
        if (intersect->parsed())
            return cmd_intersect(intersect_opts);
        return cmd_check(check_opts);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"volcol"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace volcol
