#include "pickdirichlet/kernel_families.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "pickdirichlet/multiplicative.hpp"

namespace pickdirichlet {

namespace {

struct ComplexKahan {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> comp{0.0, 0.0};

    void add(std::complex<double> term) {
        const std::complex<double> y = term - comp;
        const std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct RealKahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::complex<double> cpow_neg(std::uint64_t n, std::complex<double> z) {
    return std::exp(-z * std::log(static_cast<double>(n)));
}

// Squarefree flags up to a growing limit, shared by the squarefree family.
class SquarefreeFlags {
public:
    static SquarefreeFlags& instance() {
        static SquarefreeFlags flags;
        return flags;
    }

    // fn(n) for every squarefree n in [2, limit].
    void for_each_squarefree(std::uint64_t limit,
                             const std::function<void(std::uint64_t)>& fn) {
        std::scoped_lock lock(mutex_);
        ensure(limit);
        for (std::uint64_t n = 2; n <= limit; ++n)
            if (flags_[n]) fn(n);
    }

private:
    void ensure(std::uint64_t limit) {
        if (limit < flags_.size()) return;
        const std::uint64_t target = std::max<std::uint64_t>(limit + 1, 2 * flags_.size());
        flags_.assign(target, true);
        for (std::uint64_t p = 2; p * p < target; ++p) {
            if (!is_prime_u64(p)) continue;
            for (std::uint64_t m = p * p; m < target; m += p * p) flags_[m] = false;
        }
    }

    std::mutex mutex_;
    std::vector<bool> flags_{false, true}; // 0 unused, 1 squarefree
};

bool is_perfect_square(std::uint64_t n) {
    const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    for (std::uint64_t s = (r > 0 ? r - 1 : 0); s <= r + 1; ++s)
        if (s * s == n) return true;
    return false;
}

// Smallest depth N with scale * N^{1-sigma}/(sigma-1) <= tol, via logs.
std::uint64_t dense_depth_for(double scale, double sigma, double tol,
                              std::uint64_t cap) {
    if (sigma <= 1.0)
        throw DomainError("inverse series tail is unbounded at Re(s+u~) = " +
                          std::to_string(sigma));
    const double ln_n = std::max(std::log(2.0),
                                 -std::log(tol * (sigma - 1.0) / scale) / (sigma - 1.0));
    const double n = std::exp(ln_n) + 1.0;
    if (n > static_cast<double>(cap))
        throw DepthError("family evaluation needs depth beyond the configured cap");
    return static_cast<std::uint64_t>(n);
}

} // namespace

FamilyId family_from_name(const std::string& name) {
    if (name == "zeta1" || name == "zeta_reciprocal") return FamilyId::zeta_reciprocal;
    if (name == "zeta2" || name == "zeta_logderiv") return FamilyId::zeta_logderiv;
    if (name == "zeta3" || name == "zeta_squarefree") return FamilyId::zeta_squarefree;
    if (name == "prime" || name == "prime_zeta") return FamilyId::prime_zeta;
    throw DomainError("unknown kernel family '" + name +
                      "' (expected zeta1|zeta2|zeta3|prime)");
}

std::string family_name(FamilyId id) {
    switch (id) {
        case FamilyId::zeta_reciprocal: return "zeta1";
        case FamilyId::zeta_logderiv: return "zeta2";
        case FamilyId::zeta_squarefree: return "zeta3";
        case FamilyId::prime_zeta: return "prime";
    }
    throw DomainError("invalid family id");
}

ScalarMode family_default_mode(FamilyId id) {
    switch (id) {
        case FamilyId::zeta_reciprocal:
        case FamilyId::zeta_squarefree: return ScalarMode::exact_rational;
        default: return ScalarMode::real64;
    }
}

KernelSpec family_coefficients(FamilyId id, std::size_t depth, ScalarMode mode) {
    if (depth < 1) throw DomainError("family depth must be >= 1");

    DirichletSeries reciprocal_series(mode, depth);
    switch (id) {
        case FamilyId::zeta_reciprocal: {
            // 1/k = 2 - zeta: coefficients (1, -1, -1, ...).
            reciprocal_series.set(1, Scalar::one(mode));
            for (std::size_t n = 2; n <= depth; ++n)
                reciprocal_series.set(n, -Scalar::one(mode));
            break;
        }
        case FamilyId::zeta_logderiv: {
            if (mode != ScalarMode::real64)
                throw ModeError("zeta2 coefficients involve log n; real64 mode required");
            // 1/k = 1 + zeta'/zeta = (zeta + zeta') / zeta.
            DirichletSeries zeta_plus_deriv(mode, depth);
            for (std::size_t n = 1; n <= depth; ++n)
                zeta_plus_deriv.set(n, Scalar::real(1.0 - std::log(static_cast<double>(n))));
            reciprocal_series =
                convolve(zeta_plus_deriv, invert(DirichletSeries::ones(mode, depth)));
            break;
        }
        case FamilyId::zeta_squarefree: {
            // 1/k = (2 zeta(2s) - zeta(s)) / zeta(2s).
            DirichletSeries zeta2s(mode, depth);
            DirichletSeries numerator(mode, depth);
            for (std::size_t n = 1; n <= depth; ++n) {
                const bool sq = is_perfect_square(n);
                if (sq) zeta2s.set(n, Scalar::one(mode));
                const long num = (sq ? 2 : 0) - 1;
                numerator.set(n, mode == ScalarMode::exact_rational
                                     ? Scalar::rational(num, 1)
                                     : Scalar::real(static_cast<double>(num)));
            }
            reciprocal_series = convolve(numerator, invert(zeta2s));
            break;
        }
        case FamilyId::prime_zeta: {
            if (mode != ScalarMode::real64)
                throw ModeError("prime-zeta coefficients are transcendental; real64 mode required");
            const double p2 = prime_zeta_p2();
            reciprocal_series.set(1, Scalar::one(mode));
            PrimeCache::instance().for_each_prime(depth, [&](std::uint64_t p) {
                const double pd = static_cast<double>(p);
                reciprocal_series.set(p, Scalar::real(-1.0 / (p2 * pd * pd)));
            });
            break;
        }
    }

    DirichletSeries a = invert(reciprocal_series);
    return KernelSpec::with_known_inverse(std::move(a), std::move(reciprocal_series));
}

double prime_zeta(double sigma, double tol) {
    if (sigma <= 1.0)
        throw DomainError("prime zeta diverges for sigma <= 1");
    if (tol <= 0.0) throw DomainError("prime_zeta requires tol > 0");

    const std::uint64_t limit =
        dense_depth_for(1.0, sigma, tol, PrimeCache::instance().hard_cap());
    RealKahan acc;
    PrimeCache::instance().for_each_prime(limit, [&](std::uint64_t p) {
        acc.add(std::pow(static_cast<double>(p), -sigma));
    });
    return acc.sum;
}

double prime_zeta_p2() {
    static const double p2 = prime_zeta(2.0, 1e-8);
    return p2;
}

KernelValue prime_zeta_complex(std::complex<double> z, double tol) {
    if (z.real() <= 1.0)
        throw DomainError("prime zeta diverges for Re(z) <= 1");
    if (tol <= 0.0) throw DomainError("prime_zeta_complex requires tol > 0");

    const std::uint64_t limit =
        dense_depth_for(1.0, z.real(), tol, PrimeCache::instance().hard_cap());
    ComplexKahan acc;
    PrimeCache::instance().for_each_prime(limit, [&](std::uint64_t p) {
        acc.add(cpow_neg(p, z));
    });
    const double tail =
        std::pow(static_cast<double>(limit), 1.0 - z.real()) / (z.real() - 1.0);
    return {acc.sum, tail + 1e-15 * (1.0 + std::abs(acc.sum))};
}

std::complex<double> prime_kernel_eval(std::complex<double> s,
                                       std::complex<double> u, double tol) {
    if (s.real() <= 0.0 || u.real() <= 0.0)
        throw DomainError("prime kernel is defined on Re(s), Re(u) > 0");
    if (tol <= 0.0) throw DomainError("prime_kernel_eval requires tol > 0");

    const std::complex<double> z = s + std::conj(u);
    const double p2 = prime_zeta_p2();

    KernelValue pz = prime_zeta_complex(2.0 + z, std::min(tol, 1e-6));
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double denom = std::abs(p2 - pz.value);
        if (denom <= 2.0 * pz.error_bound)
            throw ZeroKernelError("prime kernel denominator cannot be bounded away from zero");
        const double bound = p2 * pz.error_bound / (denom * (denom - pz.error_bound));
        if (bound <= tol) break;
        pz = prime_zeta_complex(2.0 + z, std::max(0.4 * tol * denom * denom / p2, 1e-13));
    }
    return p2 / (p2 - pz.value);
}

FamilyKernel::FamilyKernel(FamilyId id) : FamilyKernel(id, Limits()) {}

FamilyKernel::FamilyKernel(FamilyId id, Limits limits) : id_(id), limits_(limits) {}

KernelValue FamilyKernel::reciprocal(std::complex<double> s, std::complex<double> u,
                                     double target) const {
    if (target < 5e-14)
        throw DepthError("requested tolerance is below double precision");
    const std::complex<double> z = s + std::conj(u);
    const double sigma = z.real();
    const double budget = 0.9 * target;

    ComplexKahan acc;
    double tail = 0.0;

    switch (id_) {
        case FamilyId::zeta_reciprocal: {
            // |c_n| = 1 for all n >= 2.
            const std::uint64_t n_max = dense_depth_for(1.0, sigma, budget,
                                                        limits_.dense_terms);
            for (std::uint64_t n = 2; n <= n_max; ++n) acc.add(-cpow_neg(n, z));
            tail = coefficient_tail_bound(1.0, false, static_cast<double>(n_max), sigma);
            break;
        }
        case FamilyId::zeta_squarefree: {
            // |c_n| = [n squarefree]; bounded by the dense tail.
            const std::uint64_t n_max = dense_depth_for(1.0, sigma, budget,
                                                        limits_.dense_terms);
            SquarefreeFlags::instance().for_each_squarefree(
                n_max, [&](std::uint64_t n) { acc.add(-cpow_neg(n, z)); });
            tail = coefficient_tail_bound(1.0, false, static_cast<double>(n_max), sigma);
            break;
        }
        case FamilyId::zeta_logderiv: {
            // |c_n| = Lambda(n) <= ln n, supported on prime powers.
            std::uint64_t n_max = dense_depth_for(1.0, sigma, budget, limits_.dense_terms);
            while (coefficient_tail_bound(1.0, true, static_cast<double>(n_max), sigma) >
                   budget) {
                if (n_max >= limits_.dense_terms)
                    throw DepthError("family evaluation needs depth beyond the configured cap");
                n_max = std::min<std::uint64_t>(2 * n_max, limits_.dense_terms);
            }
            PrimeCache::instance().for_each_prime(n_max, [&](std::uint64_t p) {
                const double log_p = std::log(static_cast<double>(p));
                for (std::uint64_t q = p; q <= n_max; q *= p) {
                    acc.add(-log_p * cpow_neg(q, z));
                    if (q > n_max / p) break; // q * p would overflow past n_max
                }
            });
            tail = coefficient_tail_bound(1.0, true, static_cast<double>(n_max), sigma);
            break;
        }
        case FamilyId::prime_zeta: {
            // |c_p| = p^{-2}/P(2) on primes; shift the abscissa by 2.
            const double p2 = prime_zeta_p2();
            const std::uint64_t n_max =
                dense_depth_for(1.0 / p2, sigma + 2.0, budget, limits_.prime_limit);
            PrimeCache::instance().for_each_prime(n_max, [&](std::uint64_t p) {
                acc.add(-cpow_neg(p, z + 2.0) / p2);
            });
            tail = coefficient_tail_bound(1.0 / p2, false, static_cast<double>(n_max),
                                          sigma + 2.0);
            break;
        }
    }

    const std::complex<double> value = 1.0 + acc.sum;
    const double bound = tail + 1e-15 * (1.0 + std::abs(value));
    if (bound > target)
        throw DepthError("family evaluation could not certify the requested tolerance");
    return {value, bound};
}

} // namespace pickdirichlet
