#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "pickdirichlet/errors.hpp"

namespace pickdirichlet {

bool is_prime_u64(std::uint64_t n);

// Strictly increasing list of the first k primes, by sieve.
std::vector<std::uint64_t> first_primes(std::size_t k);

// Finite multi-index mu over a generator list: n(mu) = prod generators_k ^
// exponents_k. Trailing zero exponents are trimmed; the empty multi-index
// represents n = 1.
struct MultiIndex {
    std::vector<std::uint32_t> exponents;
    std::vector<std::uint64_t> generators;

    static MultiIndex make(std::vector<std::uint32_t> exps,
                           std::vector<std::uint64_t> gens);

    bool empty() const { return exponents.empty(); }
    // n(mu) as an exact big integer.
    mpz_class value() const;
    // |mu| = sum of exponents.
    std::uint64_t total_degree() const;
    // mu! = prod exponents_k!
    mpz_class exponent_factorial() const;
};

// Prime factorization of n >= 1; generators are the primes dividing n in
// increasing order.
MultiIndex factor(std::uint64_t n);

// Process-wide monotone prime table used by prime-zeta summation and the
// streaming kernel evaluators. Grows under a single writer lock; readers of
// a completed prefix share a lock only for the duration of their visit.
class PrimeCache {
public:
    static PrimeCache& instance();

    // Ensures all primes <= limit are present. Throws DepthError past the
    // hard cap.
    void ensure_limit(std::uint64_t limit);

    // Calls fn(p) for every prime p <= limit in increasing order.
    void for_each_prime(std::uint64_t limit,
                        const std::function<void(std::uint64_t)>& fn);

    std::uint64_t sieved_limit() const;
    std::uint64_t hard_cap() const { return hard_cap_; }
    void set_hard_cap(std::uint64_t cap) { hard_cap_ = cap; }

private:
    PrimeCache() = default;

    mutable std::shared_mutex mutex_;
    std::vector<std::uint32_t> primes_;
    std::uint64_t limit_ = 1;
    std::uint64_t hard_cap_ = 200'000'000;
};

} // namespace pickdirichlet
