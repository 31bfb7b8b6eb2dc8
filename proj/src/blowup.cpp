#include "volcol/blowup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace volcol {

const char* BlowUpReport::status_name() const {
    switch (status) {
    case Status::BlowUp:
        return "blow-up";
    case Status::ReachedHorizon:
        return "reached-horizon";
    case Status::NumericFailure:
        return "numeric-failure";
    }
    return "unknown";
}

BlowUpReport estimate_blowup(const Problem& problem, const CollocationConfig& config) {
    config.validate();
    const auto c = config.scheme.parameters();

    BlowUpReport report;
    report.horizon = config.horizon;

    LagState lag(std::vector<double>(c.begin(), c.end()));
    std::vector<double> mesh{0.0};
    std::vector<std::vector<double>> coefficients;
    double t = 0.0;
    double h = config.initial_stepsize;
    double prior_max = 0.0;
    // Guards against runaway loops on pathological user problems; every
    // catalog run stays far below it.
    constexpr long max_steps = 5'000'000;

    const auto finish = [&](BlowUpReport::Status status, double estimate) {
        report.status = status;
        report.estimate = estimate;
        report.final_stepsize = h;
        if (!coefficients.empty())
            report.solution.emplace(mesh, std::vector<double>(c.begin(), c.end()),
                                    std::move(coefficients));
        return std::move(report);
    };

    while (true) {
        if (t >= config.horizon)
            return finish(BlowUpReport::Status::ReachedHorizon, t);
        if (h < config.step_tolerance)
            return finish(BlowUpReport::Status::BlowUp, t);
        if (static_cast<long>(report.steps.size()) >= max_steps) {
            report.detail = "step limit reached before horizon or blow-up";
            return finish(BlowUpReport::Status::NumericFailure, t);
        }

        StepOutcome out;
        try {
            out = advance_interval(problem, config, lag, {t, h}, prior_max);
        } catch (const Error& e) {
            report.detail = "interval " + std::to_string(report.steps.size()) + " (t=" +
                            std::to_string(t) + ", h=" + std::to_string(h) +
                            "): " + e.what();
            return finish(BlowUpReport::Status::NumericFailure, t);
        }

        switch (out.status) {
        case StepStatus::Solved: {
            double z_max = 0.0;
            for (double z : out.z)
                z_max = std::max(z_max, z);
            prior_max = std::max(prior_max, z_max);
            if (!out.positivity_ok)
                ++report.positivity_flags;
            lag.append(t, h, out.z);
            coefficients.push_back(std::move(out.z));
            report.steps.push_back({t, h, z_max});
            t += h;
            mesh.push_back(t);
            break;
        }
        case StepStatus::NoFixedPoint:
            h *= config.halving_factor;
            ++report.halvings;
            break;
        case StepStatus::Failed:
            report.detail = "interval " + std::to_string(report.steps.size()) +
                            " (t=" + std::to_string(t) + ", h=" + std::to_string(h) +
                            "): " + out.detail;
            return finish(BlowUpReport::Status::NumericFailure, t);
        }
    }
}

std::vector<SweepRow> SweepRecord::curve(double h) const {
    std::vector<SweepRow> out;
    for (const auto& row : rows)
        if (row.h == h)
            out.push_back(row);
    return out;
}

SweepRecord sweep_parameter(const Problem& problem, const CollocationConfig& base,
                            std::span<const double> c_grid,
                            std::span<const double> h_values, unsigned threads) {
    base.validate();
    if (c_grid.empty())
        throw ConfigError("sweep: empty collocation-parameter grid");
    if (h_values.empty())
        throw ConfigError("sweep: empty stepsize list");
    for (double c : c_grid)
        if (!(c > 0.0) || !(c <= 1.0))
            throw ConfigError("sweep: grid values must lie in (0,1]");
    const bool pair_scheme = base.scheme.starts_at_node();

    struct Task {
        double c, h;
    };
    std::vector<Task> tasks;
    tasks.reserve(c_grid.size() * h_values.size());
    for (double c : c_grid)
        for (double h : h_values)
            tasks.push_back({c, h});

    std::vector<SweepRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size())
                return;
            CollocationConfig cfg = base;
            cfg.scheme = pair_scheme ? CollocationScheme::pair(tasks[k].c)
                                     : CollocationScheme::single(tasks[k].c);
            cfg.initial_stepsize = tasks[k].h;
            SweepRow& row = rows[k];
            row.c = tasks[k].c;
            row.h = tasks[k].h;
            try {
                const BlowUpReport report = estimate_blowup(problem, cfg);
                row.status = report.status;
                row.estimate = report.estimate;
                row.steps = static_cast<long>(report.steps.size());
                row.halvings = report.halvings;
            } catch (const Error&) {
                row.status = BlowUpReport::Status::NumericFailure;
            }
        }
    };

    unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads, tasks.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    SweepRecord record;
    record.reference = problem.reference_blowup;
    record.rows = std::move(rows);
    std::sort(record.rows.begin(), record.rows.end(), [](const auto& a, const auto& b) {
        return a.c != b.c ? a.c < b.c : a.h < b.h;
    });

    for (double h : h_values) {
        SweepSummary s;
        s.h = h;
        bool first = true;
        for (const auto& row : record.rows) {
            if (row.h != h)
                continue;
            if (row.status != BlowUpReport::Status::BlowUp) {
                ++s.failed_rows;
                continue;
            }
            ++s.blowup_rows;
            if (first || row.estimate < s.min_estimate) {
                s.min_estimate = row.estimate;
                s.c_at_min = row.c;
            }
            if (first || row.estimate > s.max_estimate) {
                s.max_estimate = row.estimate;
                s.c_at_max = row.c;
            }
            first = false;
        }
        if (s.blowup_rows > 0) {
            s.range = s.max_estimate - s.min_estimate;
            if (record.reference && *record.reference > 0.0)
                s.rel_spread = s.range / *record.reference;
        }
        record.per_h.push_back(s);
    }
    return record;
}

Intersection intersect_curves(std::span<const SweepRow> curve_a,
                              std::span<const SweepRow> curve_b) {
    if (curve_a.size() != curve_b.size())
        throw ConfigError("intersect: curves use different grids");
    std::vector<double> c, ta, tb;
    for (std::size_t k = 0; k < curve_a.size(); ++k) {
        if (std::abs(curve_a[k].c - curve_b[k].c) > 1e-12)
            throw ConfigError("intersect: curves use different grids");
        // exclude pairwise the grid points where either run failed to blow up
        if (curve_a[k].status != BlowUpReport::Status::BlowUp ||
            curve_b[k].status != BlowUpReport::Status::BlowUp)
            continue;
        c.push_back(curve_a[k].c);
        ta.push_back(curve_a[k].estimate);
        tb.push_back(curve_b[k].estimate);
    }
    if (c.size() < 2)
        throw Error("intersect: fewer than two usable grid points");

    double scale = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        scale = std::max({scale, std::abs(ta[k]), std::abs(tb[k])});
    std::vector<double> d(c.size());
    bool coincide = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        d[k] = ta[k] - tb[k];
        if (std::abs(d[k]) > 1e-12 * std::max(1.0, scale))
            coincide = false;
    }
    if (coincide)
        throw Error("intersect: curves coincide");

    Intersection out;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        const bool sign_change = (d[k] > 0.0 && d[k + 1] < 0.0) ||
                                 (d[k] < 0.0 && d[k + 1] > 0.0) || d[k] == 0.0;
        if (!sign_change)
            continue;
        Crossing crossing;
        crossing.slope_gap = std::abs(d[k + 1] - d[k]);
        if (d[k] == 0.0) {
            crossing.c = c[k];
            crossing.t = ta[k];
        } else {
            const double w = d[k] / (d[k] - d[k + 1]); // in (0,1)
            crossing.c = c[k] + w * (c[k + 1] - c[k]);
            crossing.t = ta[k] + w * (ta[k + 1] - ta[k]);
        }
        out.crossings.push_back(crossing);
    }
    if (out.crossings.empty()) {
        double best = std::abs(d[0]);
        double at = c[0];
        for (std::size_t k = 1; k < d.size(); ++k)
            if (std::abs(d[k]) < best) {
                best = std::abs(d[k]);
                at = c[k];
            }
        throw Error("intersect: curves do not cross (min |t_a - t_b| = " +
                    std::to_string(best) + " at c = " + std::to_string(at) + ")");
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& a, const Crossing& b) {
                  return a.slope_gap > b.slope_gap;
              });
    out.c_star = out.crossings.front().c;
    out.t_star = out.crossings.front().t;
    return out;
}

} // namespace volcol
