#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "pickdirichlet/kernel_evaluator.hpp"
#include "pickdirichlet/pick_analysis.hpp"

namespace pickdirichlet {

// The map f(s) = (b_1 n_1^{-s}, b_2 n_2^{-s}, ...) from the right half plane
// into the unit ball, defined by positive weights b_k and strictly increasing
// integer generators n_k >= 2. Weights are held as b_k^2 (exact in rational
// mode); duplicate generators are merged by summing b_k^2, since the induced
// kernel depends only on the total weight at each integer.
//
// A "truncated infinite" embedding is a finite prefix of an infinite family;
// it carries the declared total weight budget so point evaluations can bound
// the dropped tail. Embeddings with sum b_k^2 > 1 (which arise from
// embedding_from_kernel) are representable but flagged unnormalized; they map
// into the ball only for Re(s) large enough, checked pointwise.
class Embedding {
public:
    Embedding(std::vector<Scalar> weights_sq, std::vector<std::uint64_t> generators,
              bool truncated_infinite = false,
              std::optional<double> declared_budget = std::nullopt,
              bool allow_unnormalized = false);

    static Embedding from_weights(std::vector<double> b,
                                  std::vector<std::uint64_t> generators,
                                  bool truncated_infinite = false,
                                  std::optional<double> declared_budget = std::nullopt);

    // First `count` primes with b_k = 1/(sqrt(P(2)) p_k): the prefix of the
    // unit-normalized universal prime embedding.
    static Embedding prime_embedding(std::size_t count);

    std::size_t size() const { return generators_.size(); }
    std::span<const std::uint64_t> generators() const { return generators_; }
    const Scalar& weight_sq(std::size_t k) const { return weights_sq_[k]; }
    double weight(std::size_t k) const; // b_k as double
    ScalarMode mode() const { return mode_; }

    bool truncated_infinite() const { return truncated_infinite_; }
    double declared_budget() const { return declared_budget_; }
    double stored_weight_total() const { return stored_total_; }
    // Upper bound on sum of b_k^2 over the dropped tail.
    double tail_weight() const;

    bool unit_normalized() const { return unit_normalized_; }
    bool normalized() const { return normalized_; } // sum b_k^2 <= 1
    bool prime_generators() const { return prime_generators_; }

    // Position of generator value m, if present.
    std::optional<std::size_t> index_of(std::uint64_t m) const;

private:
    std::vector<Scalar> weights_sq_;
    std::vector<std::uint64_t> generators_;
    ScalarMode mode_;
    bool truncated_infinite_ = false;
    double declared_budget_ = 0.0;
    double stored_total_ = 0.0;
    bool unit_normalized_ = false;
    bool normalized_ = false;
    bool prime_generators_ = false;
};

struct PointEvaluation {
    std::complex<double> s;
    std::vector<std::complex<double>> vector; // b_k n_k^{-s}
    double tail_norm_bound;                   // bound on the dropped tail of ||f(s)||^2
};

// f(s) componentwise; DomainError for Re(s) <= 0 or when the point falls
// outside the ball (possible only for unnormalized embeddings).
PointEvaluation embed_point(const Embedding& e, std::complex<double> s);

// k(s,u) = 1/(1 - <f(s), f(u)>) with a propagated bound covering the dropped
// generator tail.
KernelValue kernel_eval(const Embedding& e, std::complex<double> s,
                        std::complex<double> u);

// Kernel coefficients a_n for n <= depth: a = invert(delta - g) where
// g_m = b_k^2 at m = n_k. The returned KernelSpec carries delta - g as its
// inverse series, so the verdict is complete Pick by construction.
KernelSpec kernel_coefficients(const Embedding& e, std::size_t depth);

// ||h||^2 = sum |gamma_n|^2 / b^{2 mu(n)} * mu(n)!/|mu(n)|! for h = sum
// gamma_n n^{-s}. Requires distinct prime generators; SupportError names the
// first n with gamma_n != 0 outside their span.
Scalar norm_of(const Embedding& e, const DirichletSeries& gamma);

// Weights sqrt(alpha_n) on the generators n >= 2 with alpha_n > 0, where
// alpha comes from alpha_coefficients. NotPickError when any alpha_n < 0.
Embedding embedding_from_kernel(const KernelSpec& spec,
                                std::optional<double> tol = std::nullopt);

// Error-bounded evaluator view of the induced kernel; sums components until
// the remaining-weight bound meets the target.
class EmbeddingKernel final : public KernelEvaluator {
public:
    explicit EmbeddingKernel(Embedding e);

    KernelValue reciprocal(std::complex<double> s, std::complex<double> u,
                           double target) const override;

    const Embedding& embedding() const { return embedding_; }

private:
    Embedding embedding_;
    std::vector<double> suffix_weight_; // sum of b_j^2 for j >= k
};

} // namespace pickdirichlet
