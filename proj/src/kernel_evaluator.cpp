#include "pickdirichlet/kernel_evaluator.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pickdirichlet {

namespace {

constexpr double kMinTarget = 5e-14; // below this, double precision is the limit

} // namespace

KernelValue KernelEvaluator::value(std::complex<double> s, std::complex<double> u,
                                   double target) const {
    KernelValue r = reciprocal(s, u, std::max(std::min(target, 1e-5), kMinTarget));
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double rm = std::abs(r.value);
        if (rm <= 2.0 * r.error_bound)
            throw ZeroKernelError("kernel reciprocal cannot be bounded away from zero");
        const double bound = r.error_bound / (rm * (rm - r.error_bound));
        if (bound <= target) return {1.0 / r.value, bound};
        r = reciprocal(s, u, std::max(0.4 * target * rm * rm, kMinTarget));
    }
    throw DepthError("kernel value did not reach the requested tolerance");
}

double coefficient_tail_bound(double scale, bool log_factor, double depth,
                              double sigma) {
    if (scale == 0.0) return 0.0;
    if (sigma <= 1.0) return std::numeric_limits<double>::infinity();
    const double base = scale * std::pow(depth, 1.0 - sigma);
    if (!log_factor) return base / (sigma - 1.0);
    const double s1 = sigma - 1.0;
    return base * (std::log(depth) / s1 + 1.0 / (s1 * s1));
}

SeriesKernel::SeriesKernel(KernelSpec spec, TailModel model)
    : spec_(std::move(spec)), model_(model) {
    if (model_.scale < 0.0) throw DomainError("tail model scale must be >= 0");
}

SeriesKernel SeriesKernel::assuming_observed_bound(KernelSpec spec) {
    double scale = 0.0;
    const DirichletSeries& c = spec.inverse_coefficients();
    for (std::size_t n = 2; n <= c.depth(); ++n)
        scale = std::max(scale, std::fabs(c.at(n).to_double()));
    return SeriesKernel(std::move(spec), TailModel{scale, 0.0, false});
}

KernelValue SeriesKernel::reciprocal(std::complex<double> s, std::complex<double> u,
                                     double target) const {
    if (target < kMinTarget)
        throw DepthError("requested tolerance is below double precision");
    const std::complex<double> z = s + std::conj(u);
    const double sigma = z.real() + model_.power;

    const double tail = coefficient_tail_bound(
        model_.scale, model_.log_factor, static_cast<double>(spec_.depth()), sigma);
    if (std::isinf(tail))
        throw DomainError("inverse series tail is unbounded at Re(s+u~) = " +
                          std::to_string(z.real()));

    const DirichletSeries& c = spec_.inverse_coefficients();
    // Kahan-compensated sum of c_n n^{-z}.
    std::complex<double> sum(0.0, 0.0), comp(0.0, 0.0);
    for (std::size_t n = 1; n <= c.depth(); ++n) {
        const double cn = c.at(n).to_double();
        if (cn == 0.0) continue;
        const std::complex<double> term =
            cn * std::exp(-z * std::log(static_cast<double>(n)));
        const std::complex<double> y = term - comp;
        const std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double bound = tail + 1e-15 * (1.0 + std::abs(sum));
    if (bound > target)
        throw DepthError("series depth " + std::to_string(spec_.depth()) +
                         " cannot certify tolerance " + std::to_string(target) +
                         " at Re(s+u~) = " + std::to_string(z.real()));
    return {sum, bound};
}

} // namespace pickdirichlet
