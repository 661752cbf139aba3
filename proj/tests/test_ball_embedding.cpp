#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "pickdirichlet/ball_embedding.hpp"
#include "pickdirichlet/kernel_families.hpp"
#include "pickdirichlet/multiplicative.hpp"
#include "pickdirichlet/spectra.hpp"

using namespace pickdirichlet;

namespace {

Embedding two_three() {
    return Embedding({Scalar::rational(1, 4), Scalar::rational(1, 9)}, {2, 3});
}

// Exact dyadic-weight prefix of the prime embedding, budget exactly 1.
Embedding dyadic_primes(std::uint64_t max_prime) {
    std::vector<std::uint64_t> gens;
    for (std::uint64_t p = 2; p <= max_prime; ++p)
        if (is_prime_u64(p)) gens.push_back(p);
    std::vector<Scalar> wsq;
    for (std::size_t k = 1; k <= gens.size(); ++k) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, k == gens.size() ? k - 1 : k);
        wsq.push_back(Scalar::rational(mpq_class(mpz_class(1), den)));
    }
    return Embedding(std::move(wsq), std::move(gens));
}

Scalar multinomial_coefficient(const Embedding& e, std::uint64_t n) {
    const MultiIndex mu = factor(n);
    Scalar w = Scalar::one(ScalarMode::exact_rational);
    for (std::size_t i = 0; i < mu.generators.size(); ++i)
        w *= e.weight_sq(*e.index_of(mu.generators[i])).pow(mu.exponents[i]);
    mpz_class total_fact;
    mpz_fac_ui(total_fact.get_mpz_t(), static_cast<unsigned long>(mu.total_degree()));
    return w * Scalar::integer(total_fact) / Scalar::integer(mu.exponent_factorial());
}

} // namespace

TEST_CASE("embedding construction validates and merges") {
    CHECK_THROWS_AS(Embedding({Scalar::rational(1, 2)}, {1}), DomainError);
    CHECK_THROWS_AS(Embedding({Scalar::rational(-1, 2)}, {2}), DomainError);
    CHECK_THROWS_AS(Embedding({Scalar::rational(1, 2)}, {2, 3}), ShapeError);
    CHECK_THROWS_AS(
        Embedding({Scalar::rational(3, 4), Scalar::rational(1, 2)}, {2, 3}),
        DomainError); // sum b^2 > 1 without the explicit opt-in

    // Duplicate generators merge by summing b_k^2.
    const Embedding merged(
        {Scalar::rational(1, 8), Scalar::rational(1, 8), Scalar::rational(1, 9)},
        {2, 2, 3});
    CHECK(merged.size() == 2);
    CHECK(merged.weight_sq(0) == Scalar::rational(1, 4));
    CHECK(merged.generators()[0] == 2);

    const Embedding e = two_three();
    CHECK_FALSE(e.unit_normalized());
    CHECK(e.normalized());
    CHECK(e.prime_generators());
    CHECK(dyadic_primes(30).unit_normalized());
}

TEST_CASE("embed_point evaluates b_k n_k^{-s}") {
    const double b = std::sqrt(0.5);
    const Embedding e = Embedding::from_weights({b, b}, {2, 3});
    const PointEvaluation pe = embed_point(e, {1.0, 0.0});
    REQUIRE(pe.vector.size() == 2);
    CHECK(pe.vector[0].real() == doctest::Approx(b / 2.0));
    CHECK(pe.vector[1].real() == doctest::Approx(b / 3.0));
    CHECK(pe.tail_norm_bound == 0.0);

    // Components vanish as Re(s) grows.
    const PointEvaluation far = embed_point(e, {40.0, 2.0});
    for (const auto& v : far.vector) CHECK(std::abs(v) < 1e-11);

    CHECK_THROWS_AS(embed_point(e, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(embed_point(e, {-1.0, 0.0}), DomainError);
}

TEST_CASE("points land inside the unit ball across the half plane") {
    const Embedding e = dyadic_primes(50);
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> re(1e-3, 5.0), im(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const PointEvaluation pe = embed_point(e, {re(gen), im(gen)});
        double norm_sq = 0.0;
        for (const auto& v : pe.vector) norm_sq += std::norm(v);
        CHECK(norm_sq + pe.tail_norm_bound < 1.0);
    }
}

TEST_CASE("kernel_eval is real and at least 1 on the diagonal") {
    const Embedding e = two_three();
    for (double x : {0.2, 0.7, 1.5, 4.0}) {
        const KernelValue k = kernel_eval(e, {x, 0.0}, {x, 0.0});
        CHECK(std::fabs(k.value.imag()) < 1e-14);
        CHECK(k.value.real() >= 1.0);
    }
    CHECK_THROWS_AS(kernel_eval(e, {0.0, 0.0}, {1.0, 0.0}), DomainError);
}

TEST_CASE("kernel coefficients: hand-computed low-order values") {
    // Generators (2, 3): a_6 = 2 b_1^2 b_2^2 (ordered products 2*3 and 3*2).
    const KernelSpec k23 = kernel_coefficients(two_three(), 12);
    CHECK(k23.coefficients().at(6) == Scalar::rational(2, 36));
    CHECK(k23.coefficients().at(2) == Scalar::rational(1, 4));
    CHECK(k23.coefficients().at(5).is_zero());

    // Generators (2, 4): a_4 = b_1^4 + b_2^2 (factorizations 2*2 and 4).
    const Embedding e24({Scalar::rational(1, 4), Scalar::rational(1, 9)}, {2, 4});
    const KernelSpec k24 = kernel_coefficients(e24, 8);
    CHECK(k24.coefficients().at(4) ==
          Scalar::rational(1, 16) + Scalar::rational(1, 9));

    // The inverse series is delta - g by construction, hence complete Pick.
    const PickVerdict v = check_complete_pick(k24);
    CHECK(v.is_complete_pick);
    CHECK(k24.inverse_coefficients().at(4) == -Scalar::rational(1, 9));
}

TEST_CASE("series evaluation of the coefficients matches kernel_eval") {
    const Embedding e = two_three();
    const std::size_t depth = 2000;
    const KernelSpec spec = kernel_coefficients(e, depth);

    // Tail bound: sum_{n>N} a_n n^{-sigma} <= (N+1)^{-(sigma-1)} k(1/2, 1/2).
    const double k_at_one = std::abs(kernel_eval(e, {0.5, 0.0}, {0.5, 0.0}).value);

    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> re(1.0, 3.0), im(-4.0, 4.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::complex<double> s(re(gen), im(gen));
        const std::complex<double> u(re(gen), im(gen));
        const std::complex<double> z = s + std::conj(u);

        std::complex<double> series_sum(0.0, 0.0);
        for (std::size_t n = 1; n <= depth; ++n)
            series_sum += spec.coefficients().at(n).to_double() *
                          std::exp(-z * std::log(static_cast<double>(n)));

        const double tail =
            std::pow(depth + 1.0, -(z.real() - 1.0)) * k_at_one;
        const KernelValue direct = kernel_eval(e, s, u);
        CHECK(std::abs(series_sum - direct.value) <= tail + direct.error_bound + 1e-12);
    }
}

TEST_CASE("multinomial coefficient formula on the dyadic prime embedding") {
    const Embedding e = dyadic_primes(100);
    const KernelSpec spec = kernel_coefficients(e, 100);
    for (std::uint64_t n = 1; n <= 100; ++n)
        CHECK(spec.coefficients().at(n) == multinomial_coefficient(e, n));
}

TEST_CASE("norm formula: constants, single terms, reciprocal identity") {
    const Embedding e = two_three();

    DirichletSeries one(ScalarMode::exact_rational, 1);
    one.set(1, Scalar::rational(1, 1));
    CHECK(norm_of(e, one) == Scalar::rational(1, 1));

    // ||6^{-s}||^2 = 1/(2 b_1^2 b_2^2) = 1/a_6.
    DirichletSeries six(ScalarMode::exact_rational, 6);
    six.set(6, Scalar::rational(1, 1));
    CHECK(norm_of(e, six) == Scalar::rational(18, 1));

    const Embedding big = dyadic_primes(50);
    const KernelSpec spec = kernel_coefficients(big, 50);
    for (std::uint64_t n = 1; n <= 50; ++n) {
        DirichletSeries gamma(ScalarMode::exact_rational, n);
        gamma.set(n, Scalar::rational(1, 1));
        CHECK(norm_of(big, gamma) * spec.coefficients().at(n) == Scalar::rational(1, 1));
    }
}

TEST_CASE("norm formula support and domain errors") {
    const Embedding e = two_three();
    DirichletSeries gamma(ScalarMode::exact_rational, 5);
    gamma.set(5, Scalar::rational(1, 1));
    CHECK_THROWS_AS(norm_of(e, gamma), SupportError);

    const Embedding composite({Scalar::rational(1, 4), Scalar::rational(1, 9)}, {2, 4});
    DirichletSeries g2(ScalarMode::exact_rational, 2);
    g2.set(2, Scalar::rational(1, 1));
    CHECK_THROWS_AS(norm_of(composite, g2), DomainError);
}

TEST_CASE("Parseval additivity for distinct generators") {
    const Embedding e = two_three();
    DirichletSeries h(ScalarMode::exact_rational, 3);
    h.set(2, Scalar::rational(1, 1));
    h.set(3, Scalar::rational(1, 1));
    DirichletSeries h2(ScalarMode::exact_rational, 2);
    h2.set(2, Scalar::rational(1, 1));
    DirichletSeries h3(ScalarMode::exact_rational, 3);
    h3.set(3, Scalar::rational(1, 1));
    CHECK(norm_of(e, h) == norm_of(e, h2) + norm_of(e, h3));
}

TEST_CASE("embedding_from_kernel inverts kernel_coefficients exactly") {
    const Embedding cases[] = {
        two_three(),
        Embedding({Scalar::rational(1, 8), Scalar::rational(1, 8), Scalar::rational(1, 16),
                   Scalar::rational(1, 16)},
                  {2, 3, 4, 9}),
    };
    for (const Embedding& e : cases) {
        const Embedding back = embedding_from_kernel(kernel_coefficients(e, 40));
        REQUIRE(back.size() == e.size());
        for (std::size_t k = 0; k < e.size(); ++k) {
            CHECK(back.generators()[k] == e.generators()[k]);
            CHECK(back.weight_sq(k) == e.weight_sq(k));
        }
    }
}

TEST_CASE("embedding_from_kernel on the ordered-factorization kernel is unnormalized") {
    const KernelSpec spec =
        family_coefficients(FamilyId::zeta_reciprocal, 30, ScalarMode::exact_rational);
    const Embedding e = embedding_from_kernel(spec);
    CHECK(e.size() == 29); // every n in [2, 30] carries weight 1
    for (std::size_t k = 0; k < e.size(); ++k)
        CHECK(e.weight_sq(k) == Scalar::rational(1, 1));
    CHECK_FALSE(e.normalized());
    CHECK_FALSE(e.unit_normalized());

    // Pointwise evaluation still works far enough right.
    CHECK_NOTHROW(embed_point(e, {3.0, 0.0}));
    CHECK_THROWS_AS(embed_point(e, {0.2, 0.0}), DomainError);
}

TEST_CASE("embedding_from_kernel rejects non-Pick kernels") {
    const KernelSpec zeta(DirichletSeries::ones(ScalarMode::exact_rational, 12));
    CHECK_THROWS_AS(embedding_from_kernel(zeta), NotPickError);
}

TEST_CASE("sampled Gram matrices of the induced kernel are PSD") {
    const Embedding e = dyadic_primes(40);
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> re(0.2, 3.0), im(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t size = 2 + static_cast<std::size_t>(trial % 5);
        std::vector<std::complex<double>> pts;
        for (std::size_t i = 0; i < size; ++i) pts.emplace_back(re(gen), im(gen));
        ComplexMatrix gram(size, std::vector<std::complex<double>>(size));
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j)
                gram[i][j] = kernel_eval(e, pts[i], pts[j]).value;
        const auto eig = hermitian_eigenvalues(HermitianMatrix(std::move(gram)));
        CHECK(eig.front() >= -1e-9);
    }
}

TEST_CASE("embedding evaluator bounds and depth errors") {
    const Embedding e = Embedding::prime_embedding(10);
    const EmbeddingKernel kernel(e);
    const KernelValue r = kernel.reciprocal({1.5, 0.0}, {1.5, 0.0}, 1e-4);
    CHECK(r.error_bound <= 1e-4);

    // Ten primes cannot certify 1e-12 near the boundary of the half plane.
    CHECK_THROWS_AS(kernel.reciprocal({0.1, 0.0}, {0.1, 0.0}, 1e-12), DepthError);

    // The prime embedding matches the closed form within combined bounds.
    const std::complex<double> s(1.2, 0.8), u(0.9, -0.5);
    const Embedding big = Embedding::prime_embedding(40000);
    const KernelValue kv = kernel_eval(big, s, u);
    const std::complex<double> closed = prime_kernel_eval(s, u, 1e-12);
    CHECK(std::abs(kv.value - closed) <= kv.error_bound + 1e-12);
}
