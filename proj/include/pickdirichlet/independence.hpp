#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pickdirichlet/ball_embedding.hpp"

namespace pickdirichlet {

// Prime-exponent matrix of a generator list: one integer row per n_i over the
// union of primes dividing any generator. Q-linear relations among log n_i
// are exactly the integer relations among these rows, so all independence
// decisions happen in exact integer arithmetic; no floating-point logarithms
// are involved anywhere in the decision path.
struct ExponentMatrix {
    std::vector<std::uint64_t> generators;
    std::vector<std::uint64_t> primes;               // column labels
    std::vector<std::vector<std::int64_t>> rows;     // rows[i][j] = v_{p_j}(n_i)
};

ExponentMatrix exponent_matrix(std::span<const std::uint64_t> n_list);

struct RankResult {
    std::size_t rank; // d' = rank over Q of the exponent matrix
    ExponentMatrix matrix;
};

// Exact rank by fraction-free elimination. Entries must be >= 2.
RankResult multiplicative_rank(std::span<const std::uint64_t> n_list);

// True iff rank equals the list length, i.e. log n_i are Q-independent.
bool independence_check(std::span<const std::uint64_t> n_list);

// A concrete multiplicative relation: disjoint index sets I, J and exponents
// kappa with prod_{i in I} n_i^{kappa_i} = prod_{j in J} n_j^{kappa_j},
// verified as an exact big-integer equality before the witness is returned.
// mu and nu are the multi-indices supported on I and J; the polynomial
// q(z) = b_nu z^mu - b_mu z^nu is nonzero but vanishes on the embedded half
// plane.
struct Witness {
    std::vector<std::size_t> I, J;
    std::vector<std::uint64_t> kappa; // full length, zero outside I and J
    std::vector<std::uint64_t> mu, nu;
    double coeff_mu = 1.0; // b_mu
    double coeff_nu = 1.0; // b_nu
    mpz_class common_value;
};

// Builds a witness from the first exact integer nullspace vector of the
// exponent matrix (scaled to coprime integers, sign-normalized so I is
// non-empty); absent when the list is independent. The weights b feed the
// polynomial coefficients and default to the uniform 1/sqrt(d).
std::optional<Witness> dependence_witness(std::span<const std::uint64_t> n_list,
                                          std::span<const double> b = {});

// Evaluates q(f(s)) = b_nu prod_{i in I} (b_i n_i^{-s})^{kappa_i} -
// b_mu prod_{j in J} (b_j n_j^{-s})^{kappa_j} over the points, using the
// embedding's weights for both coefficients and components; returns the
// maximum modulus.
double verify_witness(const Witness& w, const Embedding& e,
                      std::span<const std::complex<double>> points);

} // namespace pickdirichlet
