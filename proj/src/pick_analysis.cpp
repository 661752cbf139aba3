#include "pickdirichlet/pick_analysis.hpp"

#include <cmath>
#include <string>

namespace pickdirichlet {

namespace {

DirichletSeries normalize_leading(DirichletSeries a, Scalar& scale_out,
                                  double real_zero_tol) {
    const Scalar& a1 = a.at(1);
    const bool unit_ok = a.mode() == ScalarMode::exact_rational
                             ? !a1.is_zero()
                             : std::fabs(a1.to_double()) > real_zero_tol;
    if (!unit_ok)
        throw NonUnitError("kernel coefficients have a_1 = " + a1.str());
    scale_out = a1;
    if (a1 == Scalar::one(a.mode())) return a;
    DirichletSeries out(a.mode(), a.depth());
    for (std::size_t n = 1; n <= a.depth(); ++n) out.set(n, a.at(n) / a1);
    return out;
}

} // namespace

KernelSpec::KernelSpec(DirichletSeries a, std::optional<double> abscissa_hint,
                       double real_zero_tol)
    : a_(DirichletSeries::delta(a.mode(), 1)),
      scale_(Scalar::one(a.mode())),
      abscissa_hint_(abscissa_hint),
      cache_(std::make_shared<InverseCache>()) {
    a_ = normalize_leading(std::move(a), scale_, real_zero_tol);
}

KernelSpec KernelSpec::with_known_inverse(DirichletSeries a, DirichletSeries c,
                                          std::optional<double> abscissa_hint) {
    if (a.depth() != c.depth() || a.mode() != c.mode())
        throw ShapeError("kernel and inverse series disagree in depth or mode");
    if (a.at(1) != Scalar::one(a.mode()) || c.at(1) != Scalar::one(c.mode()))
        throw NonUnitError("with_known_inverse requires a_1 = c_1 = 1");

    const DirichletSeries conv = convolve(a, c);
    const DirichletSeries id = DirichletSeries::delta(conv.mode(), conv.depth());
    if (conv.mode() == ScalarMode::exact_rational) {
        if (!(conv == id))
            throw DomainError("with_known_inverse: convolve(a, c) != delta");
    } else {
        const double tol = 1e-8 * std::max(1.0, a.max_abs());
        for (std::size_t n = 1; n <= conv.depth(); ++n) {
            const double want = (n == 1) ? 1.0 : 0.0;
            if (std::fabs(conv.at(n).to_double() - want) > tol)
                throw DomainError("with_known_inverse: convolve(a, c) != delta near n = " +
                                  std::to_string(n));
        }
    }

    KernelSpec spec(std::move(a), abscissa_hint);
    std::call_once(spec.cache_->flag, [&] { spec.cache_->c = std::move(c); });
    return spec;
}

const DirichletSeries& KernelSpec::inverse_coefficients() const {
    std::call_once(cache_->flag, [&] { cache_->c = invert(a_); });
    return *cache_->c;
}

double default_violation_tol(const KernelSpec& spec) {
    return 1e-10 * std::max(1.0, spec.coefficients().max_abs());
}

PickVerdict check_complete_pick(const KernelSpec& spec, std::optional<double> tol) {
    const DirichletSeries& c = spec.inverse_coefficients();
    const double tau = tol.value_or(default_violation_tol(spec));

    PickVerdict v;
    v.depth = spec.depth();
    for (std::size_t n = 2; n <= c.depth(); ++n) {
        const Scalar& cn = c.at(n);
        const bool violates = spec.mode() == ScalarMode::exact_rational
                                  ? cn.sign() > 0
                                  : cn.to_double() > tau;
        if (violates) {
            v.is_complete_pick = false;
            v.first_violation = PickViolation{n, cn};
            return v;
        }
    }
    v.is_complete_pick = true;

    bool degenerate = true;
    for (std::size_t n = 2; n <= spec.depth() && degenerate; ++n)
        degenerate = spec.coefficients().at(n).is_zero();
    v.dimension_warning = degenerate;
    return v;
}

DirichletSeries alpha_coefficients(const KernelSpec& spec) {
    const DirichletSeries& c = spec.inverse_coefficients();
    DirichletSeries alpha(c.mode(), c.depth());
    for (std::size_t n = 2; n <= c.depth(); ++n) alpha.set(n, -c.at(n));
    return alpha;
}

GrowthReport growth_certificate(const KernelSpec& spec, std::size_t n_max,
                                std::size_t k_max) {
    if (n_max < 2 || k_max < 1)
        throw DomainError("growth_certificate requires n_max >= 2 and k_max >= 1");
    if (n_max > spec.depth())
        throw DepthError("growth_certificate: n_max " + std::to_string(n_max) +
                         " exceeds truncation depth " + std::to_string(spec.depth()));
    const PickVerdict verdict = check_complete_pick(spec);
    if (!verdict.is_complete_pick)
        throw NotPickError("growth_certificate requires a complete Pick kernel; "
                           "first violation at n = " +
                           std::to_string(verdict.first_violation->n));

    const DirichletSeries& a = spec.coefficients();
    const DirichletSeries& c = spec.inverse_coefficients();
    const bool exact = spec.mode() == ScalarMode::exact_rational;

    GrowthReport report;
    report.n_max = n_max;
    report.k_max = k_max;
    report.depth = spec.depth();
    report.tol_used = exact ? 0.0 : 1e-12 * std::max(1.0, a.max_abs());

    for (std::size_t n = 2; n <= n_max; ++n) {
        std::uint64_t nk = 1;
        for (std::size_t k = 1; k <= k_max; ++k) {
            if (nk > spec.depth() / n) break; // n^k would exceed the depth
            nk *= n;
            const Scalar lhs = a.at(nk);
            const Scalar rhs = c.at(n).abs().pow(k);
            ++report.pairs_checked;
            const bool holds = exact ? (lhs - rhs).sign() >= 0
                                     : lhs.to_double() - rhs.to_double() >=
                                           -report.tol_used;
            if (!holds)
                report.failures.push_back({GrowthFailure::Kind::power_inequality, n, k,
                                           lhs.to_double(), rhs.to_double()});
        }
    }

    for (std::size_t n = 2; n <= n_max; ++n) {
        Scalar sum = Scalar::zero(spec.mode());
        for (std::uint64_t d : divisors(n)) {
            if (d == n) continue;
            sum += a.at(d) * c.at(n / d).abs();
        }
        ++report.identities_checked;
        const Scalar& an = a.at(n);
        const bool holds = exact ? sum == an
                                 : std::fabs(sum.to_double() - an.to_double()) <=
                                       report.tol_used * (1.0 + std::fabs(an.to_double()));
        if (!holds)
            report.failures.push_back({GrowthFailure::Kind::convolution_identity, n, 0,
                                       an.to_double(), sum.to_double()});
    }
    return report;
}

} // namespace pickdirichlet
