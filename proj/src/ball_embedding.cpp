#include "pickdirichlet/ball_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pickdirichlet/kernel_families.hpp"
#include "pickdirichlet/multiplicative.hpp"

namespace pickdirichlet {

namespace {

constexpr double kNormalizationSlack = 1e-12;

std::complex<double> cpow_neg(std::uint64_t n, std::complex<double> z) {
    return std::exp(-z * std::log(static_cast<double>(n)));
}

} // namespace

Embedding::Embedding(std::vector<Scalar> weights_sq,
                     std::vector<std::uint64_t> generators, bool truncated_infinite,
                     std::optional<double> declared_budget, bool allow_unnormalized)
    : truncated_infinite_(truncated_infinite) {
    if (weights_sq.size() != generators.size())
        throw ShapeError("embedding weight/generator length mismatch");

    mode_ = ScalarMode::exact_rational;
    for (const Scalar& w : weights_sq) mode_ = promote(mode_, w.mode());

    std::vector<std::size_t> order(generators.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return generators[i] < generators[j]; });

    for (std::size_t idx : order) {
        const std::uint64_t n = generators[idx];
        if (n < 2)
            throw DomainError("embedding generators must be integers >= 2, got " +
                              std::to_string(n));
        Scalar w = weights_sq[idx].converted_to(mode_);
        if (w.sign() <= 0)
            throw DomainError("embedding weights must be positive");
        if (!generators_.empty() && generators_.back() == n) {
            weights_sq_.back() += w; // merged: the kernel sees only the sum
        } else {
            generators_.push_back(n);
            weights_sq_.push_back(std::move(w));
        }
    }

    Scalar total = Scalar::zero(mode_);
    for (const Scalar& w : weights_sq_) total += w;
    stored_total_ = total.to_double();

    if (mode_ == ScalarMode::exact_rational) {
        normalized_ = (total - Scalar::one(mode_)).sign() <= 0;
        unit_normalized_ = !truncated_infinite_ && total == Scalar::one(mode_);
    } else {
        normalized_ = stored_total_ <= 1.0 + kNormalizationSlack;
        unit_normalized_ = std::fabs(stored_total_ - 1.0) < kNormalizationSlack;
    }
    if (!normalized_ && !allow_unnormalized)
        throw DomainError("embedding weights exceed the unit budget: sum b_k^2 = " +
                          std::to_string(stored_total_));

    declared_budget_ = declared_budget.value_or(truncated_infinite_ ? 1.0 : stored_total_);
    if (truncated_infinite_) {
        if (declared_budget_ < stored_total_ - kNormalizationSlack)
            throw DomainError("declared weight budget is below the stored total");
        unit_normalized_ = std::fabs(declared_budget_ - 1.0) < kNormalizationSlack;
    }

    prime_generators_ = std::all_of(generators_.begin(), generators_.end(), is_prime_u64);
}

Embedding Embedding::from_weights(std::vector<double> b,
                                  std::vector<std::uint64_t> generators,
                                  bool truncated_infinite,
                                  std::optional<double> declared_budget) {
    std::vector<Scalar> wsq;
    wsq.reserve(b.size());
    for (double x : b) wsq.push_back(Scalar::real(x * x));
    return Embedding(std::move(wsq), std::move(generators), truncated_infinite,
                     declared_budget);
}

Embedding Embedding::prime_embedding(std::size_t count) {
    if (count == 0) throw DomainError("prime embedding needs at least one generator");
    const double p2 = prime_zeta_p2();
    std::vector<std::uint64_t> gens = first_primes(count);
    std::vector<Scalar> wsq;
    wsq.reserve(count);
    for (std::uint64_t p : gens) {
        const double pd = static_cast<double>(p);
        wsq.push_back(Scalar::real(1.0 / (p2 * pd * pd)));
    }
    return Embedding(std::move(wsq), std::move(gens), /*truncated_infinite=*/true,
                     /*declared_budget=*/1.0);
}

double Embedding::weight(std::size_t k) const {
    return std::sqrt(weights_sq_[k].to_double());
}

double Embedding::tail_weight() const {
    return std::max(0.0, declared_budget_ - stored_total_);
}

std::optional<std::size_t> Embedding::index_of(std::uint64_t m) const {
    const auto it = std::lower_bound(generators_.begin(), generators_.end(), m);
    if (it == generators_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - generators_.begin());
}

PointEvaluation embed_point(const Embedding& e, std::complex<double> s) {
    if (s.real() <= 0.0)
        throw DomainError("embedding is defined on the half plane Re(s) > 0");

    PointEvaluation out;
    out.s = s;
    out.vector.reserve(e.size());
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const std::complex<double> v = e.weight(k) * cpow_neg(e.generators()[k], s);
        norm_sq += std::norm(v);
        out.vector.push_back(v);
    }
    const double n_last = e.size() ? static_cast<double>(e.generators().back()) : 2.0;
    out.tail_norm_bound = e.tail_weight() * std::pow(n_last, -2.0 * s.real());

    if (norm_sq >= 1.0)
        throw DomainError("point maps outside the unit ball (unnormalized embedding "
                          "evaluated with Re(s) too small)");
    return out;
}

KernelValue kernel_eval(const Embedding& e, std::complex<double> s,
                        std::complex<double> u) {
    if (s.real() <= 0.0 || u.real() <= 0.0)
        throw DomainError("kernel is defined for Re(s), Re(u) > 0");

    const std::complex<double> z = s + std::conj(u);
    std::complex<double> ip(0.0, 0.0);
    for (std::size_t k = 0; k < e.size(); ++k)
        ip += e.weight_sq(k).to_double() * cpow_neg(e.generators()[k], z);

    const double n_last = e.size() ? static_cast<double>(e.generators().back()) : 2.0;
    const double ip_bound = e.tail_weight() * std::pow(n_last, -z.real()) +
                            1e-15 * (1.0 + std::abs(ip));
    const std::complex<double> denom = 1.0 - ip;
    const double dmag = std::abs(denom);
    if (dmag <= 2.0 * ip_bound)
        throw ZeroKernelError("1 - <f(s), f(u)> cannot be bounded away from zero");
    return {1.0 / denom, ip_bound / (dmag * (dmag - ip_bound))};
}

KernelSpec kernel_coefficients(const Embedding& e, std::size_t depth) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    DirichletSeries c(e.mode(), depth);
    c.set(1, Scalar::one(e.mode()));
    for (std::size_t k = 0; k < e.size(); ++k) {
        const std::uint64_t m = e.generators()[k];
        if (m <= depth) c.set(m, -e.weight_sq(k));
    }
    DirichletSeries a = invert(c);
    return KernelSpec::with_known_inverse(std::move(a), std::move(c));
}

Scalar norm_of(const Embedding& e, const DirichletSeries& gamma) {
    if (!e.prime_generators())
        throw DomainError("norm_of requires an embedding over distinct primes");

    const ScalarMode mode = promote(e.mode(), gamma.mode());
    Scalar total = Scalar::zero(mode);
    for (std::size_t n = 1; n <= gamma.depth(); ++n) {
        const Scalar& gn = gamma.at(n);
        if (gn.is_zero()) continue;

        const MultiIndex mu = factor(n);
        Scalar weight_term = Scalar::one(mode); // b^{2 mu(n)}
        for (std::size_t i = 0; i < mu.generators.size(); ++i) {
            const auto k = e.index_of(mu.generators[i]);
            if (!k)
                throw SupportError("coefficient at n = " + std::to_string(n) +
                                   " is not generated by the embedding's primes");
            weight_term *= e.weight_sq(*k).converted_to(mode).pow(mu.exponents[i]);
        }

        mpz_class total_fact;
        mpz_fac_ui(total_fact.get_mpz_t(), static_cast<unsigned long>(mu.total_degree()));
        const Scalar combinatorial =
            (Scalar::integer(mu.exponent_factorial()) / Scalar::integer(total_fact))
                .converted_to(mode);
        total += gn.converted_to(mode) * gn.converted_to(mode) / weight_term *
                 combinatorial;
    }
    return total;
}

Embedding embedding_from_kernel(const KernelSpec& spec, std::optional<double> tol) {
    const double tau = tol.value_or(default_violation_tol(spec));
    const PickVerdict verdict = check_complete_pick(spec, tau);
    if (!verdict.is_complete_pick)
        throw NotPickError("kernel is not complete Pick: alpha_" +
                           std::to_string(verdict.first_violation->n) + " = " +
                           (-verdict.first_violation->c_n).str() + " < 0");

    const DirichletSeries alpha = alpha_coefficients(spec);
    std::vector<Scalar> wsq;
    std::vector<std::uint64_t> gens;
    for (std::size_t n = 2; n <= alpha.depth(); ++n) {
        const Scalar& an = alpha.at(n);
        const bool positive = spec.mode() == ScalarMode::exact_rational
                                  ? an.sign() > 0
                                  : an.to_double() > tau;
        if (positive) {
            wsq.push_back(an);
            gens.push_back(n);
        }
    }
    return Embedding(std::move(wsq), std::move(gens), /*truncated_infinite=*/false,
                     std::nullopt, /*allow_unnormalized=*/true);
}

EmbeddingKernel::EmbeddingKernel(Embedding e) : embedding_(std::move(e)) {
    suffix_weight_.assign(embedding_.size() + 1, 0.0);
    for (std::size_t k = embedding_.size(); k-- > 0;)
        suffix_weight_[k] = suffix_weight_[k + 1] + embedding_.weight_sq(k).to_double();
}

KernelValue EmbeddingKernel::reciprocal(std::complex<double> s, std::complex<double> u,
                                        double target) const {
    if (target < 5e-14)
        throw DepthError("requested tolerance is below double precision");
    const std::complex<double> z = s + std::conj(u);
    const double sigma = z.real();
    if (sigma <= 0.0)
        throw DomainError("embedding kernel needs Re(s + u~) > 0");

    const Embedding& e = embedding_;
    const double budget = 0.45 * target;
    std::complex<double> ip(0.0, 0.0);
    double tail = e.tail_weight() *
                  (e.size() ? std::pow(static_cast<double>(e.generators().back()), -sigma)
                            : 0.0);
    std::size_t k = 0;
    for (; k < e.size(); ++k) {
        const double skip_bound =
            suffix_weight_[k] * std::pow(static_cast<double>(e.generators()[k]), -sigma);
        if (skip_bound + tail <= budget) {
            tail += skip_bound;
            break;
        }
        ip += e.weight_sq(k).to_double() * cpow_neg(e.generators()[k], z);
    }

    const std::complex<double> value = 1.0 - ip;
    const double bound = tail + 1e-15 * (1.0 + std::abs(value));
    if (bound > target)
        throw DepthError("embedding truncation cannot certify the requested tolerance");
    return {value, bound};
}

} // namespace pickdirichlet
