#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "volcol/errors.hpp"

namespace volcol {

/// One mesh interval [t0, t0 + h].
struct IntervalData {
    double t0 = 0.0;
    double h = 0.0;
};

enum class KernelForm { General, Convolution };

/// Non-negative kernel K(t,s), defined for 0 <= s <= t. Convolution kernels
/// evaluate as k(t-s). A kernel may declare an algebraic singularity
/// k(u) ~ u^-gamma near the diagonal and may supply closed forms for the
/// coefficient moments B_n(i,j).
class Kernel {
public:
    using PointFn = std::function<double(double t, double s)>;
    using ConvolutionFn = std::function<double(double u)>;
    /// B_n(i,j) = integral over [0, c_i] of K(t_{n,i}, t_n + s h_n) L_j(s) ds.
    using MomentFn = std::function<double(const IntervalData&, std::span<const double> c,
                                          std::size_t i, std::size_t j)>;

    static Kernel general(PointFn k, std::string label = "kernel") {
        Kernel out;
        out.form_ = KernelForm::General;
        out.point_ = std::move(k);
        out.label_ = std::move(label);
        return out;
    }

    static Kernel convolution(ConvolutionFn k, std::string label = "kernel") {
        Kernel out;
        out.form_ = KernelForm::Convolution;
        out.conv_ = std::move(k);
        out.point_ = [f = out.conv_](double t, double s) { return f(t - s); };
        out.label_ = std::move(label);
        return out;
    }

    Kernel& with_singularity_exponent(double gamma) {
        if (!(gamma >= 0.0) || !(gamma < 1.0))
            throw ConfigError("kernel singularity exponent must lie in [0,1)");
        gamma_ = gamma;
        return *this;
    }

    Kernel& with_analytic_moments(MomentFn m) {
        moments_ = std::move(m);
        return *this;
    }

    double operator()(double t, double s) const { return point_(t, s); }

    KernelForm form() const { return form_; }

    double convolution_at(double u) const {
        if (form_ != KernelForm::Convolution)
            throw ConfigError("kernel has no convolution form");
        return conv_(u);
    }

    /// Exponent gamma of the diagonal singularity; 0 when bounded.
    double singularity_exponent() const { return gamma_; }
    bool singular() const { return gamma_ > 0.0; }

    const MomentFn& analytic_moments() const { return moments_; }
    const std::string& label() const { return label_; }

private:
    Kernel() = default;

    KernelForm form_ = KernelForm::General;
    PointFn point_;
    ConvolutionFn conv_;
    MomentFn moments_;
    double gamma_ = 0.0;
    std::string label_;
};

} // namespace volcol
