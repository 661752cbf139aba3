#pragma once

#include <complex>
#include <string>

#include "pickdirichlet/kernel_evaluator.hpp"
#include "pickdirichlet/pick_analysis.hpp"

namespace pickdirichlet {

// The built-in kernel families k(s,u) = phi(s + u~):
//   zeta_reciprocal   phi = 1/(2 - zeta(s))
//   zeta_logderiv     phi = zeta(s)/(zeta(s) + zeta'(s))
//   zeta_squarefree   phi = zeta(2s)/(2 zeta(2s) - zeta(s))
//   prime_zeta        k(s,u) = P(2)/(P(2) - P(2 + s + u~))
enum class FamilyId { zeta_reciprocal, zeta_logderiv, zeta_squarefree, prime_zeta };

// CLI names: zeta1, zeta2, zeta3, prime.
FamilyId family_from_name(const std::string& name);
std::string family_name(FamilyId id);

// Default scalar mode: rational where the coefficients are rational.
ScalarMode family_default_mode(FamilyId id);

// Coefficients a_n for n <= depth, produced by the generic series-division
// pipeline: the 1/k series is assembled per family and the kernel series is
// its inverse. zeta_logderiv and prime_zeta require real64 mode (ModeError
// otherwise).
KernelSpec family_coefficients(FamilyId id, std::size_t depth, ScalarMode mode);

// Prime zeta function P(sigma) = sum over primes p of p^{-sigma}, sigma > 1.
// Direct summation over p <= M with M chosen so the integral tail bound
// M^{1-sigma}/(sigma-1) < tol; absolute error < tol.
double prime_zeta(double sigma, double tol);

// Cached P(2) to absolute error 1e-8; the constant behind the default prime
// embedding weights b_k = 1/(sqrt(P(2)) p_k).
double prime_zeta_p2();

// Complex prime zeta with the same truncation rule; |error| <= tol.
KernelValue prime_zeta_complex(std::complex<double> z, double tol);

// Closed form P(2)/(P(2) - P(2 + s + u~)) with truncation error <= tol,
// treating the cached P(2) as the defining constant. Requires Re(s), Re(u) > 0.
std::complex<double> prime_kernel_eval(std::complex<double> s,
                                       std::complex<double> u, double tol);

// Streaming evaluator for a family's inverse series with the family's proven
// coefficient tail bound; depth adapts per point up to the configured caps.
class FamilyKernel final : public KernelEvaluator {
public:
    struct Limits {
        std::uint64_t dense_terms = 8'000'000;  // cap for integer-indexed streams
        std::uint64_t prime_limit = 200'000'000; // cap for the prime stream
    };

    explicit FamilyKernel(FamilyId id);
    FamilyKernel(FamilyId id, Limits limits);

    KernelValue reciprocal(std::complex<double> s, std::complex<double> u,
                           double target) const override;

    FamilyId id() const { return id_; }

private:
    FamilyId id_;
    Limits limits_;
};

} // namespace pickdirichlet
