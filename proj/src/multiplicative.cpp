#include "pickdirichlet/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace pickdirichlet {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Odd-only sieve of Eratosthenes up to `limit` inclusive.
std::vector<std::uint32_t> sieve_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    const std::uint64_t half = (limit - 1) / 2; // odd numbers 3,5,...,2*half+1
    std::vector<bool> composite(half + 1, false);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p)
            composite[j] = true;
    }
    for (std::uint64_t i = 1; i <= half; ++i)
        if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
    return primes;
}

} // namespace

std::vector<std::uint64_t> first_primes(std::size_t k) {
    if (k == 0) throw DomainError("first_primes requires k >= 1");
    // p_k < k (ln k + ln ln k) for k >= 6; small cases padded by hand.
    double bound = 15.0;
    if (k >= 6) {
        const double kk = static_cast<double>(k);
        bound = kk * (std::log(kk) + std::log(std::log(kk))) * 1.2;
    }
    for (;;) {
        auto sieved = sieve_up_to(static_cast<std::uint64_t>(bound));
        if (sieved.size() >= k) {
            std::vector<std::uint64_t> out(sieved.begin(),
                                           sieved.begin() + static_cast<std::ptrdiff_t>(k));
            return out;
        }
        bound *= 2;
    }
}

MultiIndex MultiIndex::make(std::vector<std::uint32_t> exps,
                            std::vector<std::uint64_t> gens) {
    if (exps.size() != gens.size())
        throw ShapeError("multi-index exponent/generator length mismatch");
    while (!exps.empty() && exps.back() == 0) {
        exps.pop_back();
        gens.pop_back();
    }
    return MultiIndex{std::move(exps), std::move(gens)};
}

mpz_class MultiIndex::value() const {
    mpz_class v = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        mpz_class term;
        mpz_ui_pow_ui(term.get_mpz_t(), generators[i], exponents[i]);
        v *= term;
    }
    return v;
}

std::uint64_t MultiIndex::total_degree() const {
    std::uint64_t t = 0;
    for (auto e : exponents) t += e;
    return t;
}

mpz_class MultiIndex::exponent_factorial() const {
    mpz_class f = 1;
    for (auto e : exponents) {
        mpz_class term;
        mpz_fac_ui(term.get_mpz_t(), e);
        f *= term;
    }
    return f;
}

MultiIndex factor(std::uint64_t n) {
    if (n == 0) throw DomainError("factor requires n >= 1");
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> gens;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        gens.push_back(p);
        exps.push_back(e);
    }
    if (n > 1) {
        gens.push_back(n);
        exps.push_back(1);
    }
    return MultiIndex{std::move(exps), std::move(gens)};
}

PrimeCache& PrimeCache::instance() {
    static PrimeCache cache;
    return cache;
}

void PrimeCache::ensure_limit(std::uint64_t limit) {
    if (limit > hard_cap_)
        throw DepthError("prime table request " + std::to_string(limit) +
                         " exceeds the hard cap " + std::to_string(hard_cap_));
    {
        std::shared_lock lock(mutex_);
        if (limit <= limit_) return;
    }
    std::unique_lock lock(mutex_);
    if (limit <= limit_) return;
    // Resieve from scratch with headroom; growth events are rare.
    // TODO: switch to a segmented sieve so the hard cap can rise past 2e8
    // without the full resieve cost.
    const std::uint64_t target = std::min<std::uint64_t>(
        hard_cap_, std::max<std::uint64_t>(limit, 2 * limit_));
    primes_ = sieve_up_to(target);
    limit_ = target;
}

void PrimeCache::for_each_prime(std::uint64_t limit,
                                const std::function<void(std::uint64_t)>& fn) {
    ensure_limit(limit);
    std::shared_lock lock(mutex_);
    for (std::uint32_t p : primes_) {
        if (p > limit) break;
        fn(p);
    }
}

std::uint64_t PrimeCache::sieved_limit() const {
    std::shared_lock lock(mutex_);
    return limit_;
}

} // namespace pickdirichlet
