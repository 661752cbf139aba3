#pragma once

#include <complex>

#include "pickdirichlet/pick_analysis.hpp"

namespace pickdirichlet {

struct KernelValue {
    std::complex<double> value;
    double error_bound; // |true - value| <= error_bound
};

// Point evaluation of a Dirichlet kernel with a certified absolute error
// bound. Evaluators answer through the inverse series 1/k(s,u) =
// sum c_n n^{-s-u~}, which is the quantity the spectral tests consume
// directly; k itself is derived with propagated bounds.
class KernelEvaluator {
public:
    virtual ~KernelEvaluator() = default;

    // 1/k(s,u), with error_bound <= target. Throws DepthError when the
    // available truncation cannot reach the target, DomainError when the
    // evaluation point is outside the series' half plane of convergence.
    virtual KernelValue reciprocal(std::complex<double> s, std::complex<double> u,
                                   double target) const = 0;

    // k(s,u) with a propagated bound <= target. Throws ZeroKernelError when
    // the reciprocal cannot be bounded away from zero.
    KernelValue value(std::complex<double> s, std::complex<double> u,
                      double target) const;
};

// Evaluator over a stored truncated inverse series plus a coefficient decay
// model for the unseen tail: |c_n| <= scale * (ln n)^{log_factor} * n^{-power}
// for n > depth. scale = 0 asserts the inverse series is exactly supported on
// the stored prefix (true for embedding-induced kernels).
class SeriesKernel final : public KernelEvaluator {
public:
    struct TailModel {
        double scale = 0.0;
        double power = 0.0;
        bool log_factor = false;
    };

    SeriesKernel(KernelSpec spec, TailModel model);

    // Assumes the unseen coefficients are bounded by the largest |c_n| seen
    // in the stored prefix. A working assumption for user-supplied series,
    // not a theorem; the built-in families carry proven models instead.
    static SeriesKernel assuming_observed_bound(KernelSpec spec);

    KernelValue reciprocal(std::complex<double> s, std::complex<double> u,
                           double target) const override;

    const KernelSpec& spec() const { return spec_; }

private:
    KernelSpec spec_;
    TailModel model_;
};

// Integral bound on sum_{n > depth} scale * (ln n)^{log_factor} * n^{-sigma}.
// Requires sigma > 1; returns +inf otherwise.
double coefficient_tail_bound(double scale, bool log_factor, double depth,
                              double sigma);

} // namespace pickdirichlet
