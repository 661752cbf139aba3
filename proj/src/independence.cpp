#include "pickdirichlet/independence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pickdirichlet/multiplicative.hpp"

namespace pickdirichlet {

namespace {

// Columns of the reduced system are the generators; solving A x = 0 for
// A = transpose(exponent rows) yields the relation sum x_i log n_i = 0.
struct Reduction {
    std::vector<std::vector<mpq_class>> rref; // primes x generators
    std::vector<std::size_t> pivot_cols;
};

Reduction reduce_transpose(const ExponentMatrix& m) {
    const std::size_t rows = m.primes.size();
    const std::size_t cols = m.generators.size();
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (std::size_t j = 0; j < m.primes.size(); ++j)
            a[j][i] = m.rows[i][j];

    Reduction red;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows && sgn(a[sel][col]) == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[pivot_row]);

        const mpq_class pivot = a[pivot_row][col];
        for (std::size_t j = col; j < cols; ++j) a[pivot_row][j] /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || sgn(a[i][col]) == 0) continue;
            const mpq_class f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[pivot_row][j];
        }
        red.pivot_cols.push_back(col);
        ++pivot_row;
    }
    red.rref = std::move(a);
    return red;
}

} // namespace

ExponentMatrix exponent_matrix(std::span<const std::uint64_t> n_list) {
    if (n_list.empty()) throw DomainError("generator list must be non-empty");

    std::vector<MultiIndex> factored;
    std::set<std::uint64_t> prime_union;
    for (std::uint64_t n : n_list) {
        if (n < 2)
            throw DomainError("generators must be >= 2 (log 1 = 0 is degenerate), got " +
                              std::to_string(n));
        MultiIndex mu = factor(n);
        prime_union.insert(mu.generators.begin(), mu.generators.end());
        factored.push_back(std::move(mu));
    }

    ExponentMatrix m;
    m.generators.assign(n_list.begin(), n_list.end());
    m.primes.assign(prime_union.begin(), prime_union.end());
    for (const MultiIndex& mu : factored) {
        std::vector<std::int64_t> row(m.primes.size(), 0);
        for (std::size_t i = 0; i < mu.generators.size(); ++i) {
            const auto it =
                std::lower_bound(m.primes.begin(), m.primes.end(), mu.generators[i]);
            row[static_cast<std::size_t>(it - m.primes.begin())] = mu.exponents[i];
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

RankResult multiplicative_rank(std::span<const std::uint64_t> n_list) {
    ExponentMatrix m = exponent_matrix(n_list);
    const Reduction red = reduce_transpose(m);
    return RankResult{red.pivot_cols.size(), std::move(m)};
}

bool independence_check(std::span<const std::uint64_t> n_list) {
    return multiplicative_rank(n_list).rank == n_list.size();
}

std::optional<Witness> dependence_witness(std::span<const std::uint64_t> n_list,
                                          std::span<const double> b) {
    std::vector<double> weights(b.begin(), b.end());
    if (weights.empty())
        weights.assign(n_list.size(), 1.0 / std::sqrt(static_cast<double>(n_list.size())));
    if (weights.size() != n_list.size())
        throw ShapeError("weight list length does not match the generator list");
    for (double w : weights)
        if (!(w > 0.0)) throw DomainError("witness weights must be positive");

    const ExponentMatrix m = exponent_matrix(n_list);
    const Reduction red = reduce_transpose(m);
    const std::size_t cols = m.generators.size();
    if (red.pivot_cols.size() == cols) return std::nullopt;

    // First kernel basis vector: free variable 1 at the first non-pivot column.
    std::size_t free_col = 0;
    while (free_col < cols &&
           std::find(red.pivot_cols.begin(), red.pivot_cols.end(), free_col) !=
               red.pivot_cols.end())
        ++free_col;

    std::vector<mpq_class> x(cols, 0);
    x[free_col] = 1;
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
        x[red.pivot_cols[r]] = -red.rref[r][free_col];

    mpz_class denom_lcm = 1;
    for (const mpq_class& q : x)
        if (sgn(q) != 0) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
                                 q.get_den_mpz_t());
    std::vector<mpz_class> v(cols);
    mpz_class content = 0;
    for (std::size_t i = 0; i < cols; ++i) {
        v[i] = mpz_class(x[i] * denom_lcm);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v[i].get_mpz_t());
    }
    for (auto& vi : v) vi /= content;
    // Sign-normalize: first nonzero entry positive, so I is non-empty and the
    // witness is deterministic.
    for (const mpz_class& vi : v) {
        if (sgn(vi) == 0) continue;
        if (sgn(vi) < 0)
            for (auto& x : v) x = -x;
        break;
    }

    Witness w;
    w.kappa.assign(cols, 0);
    w.mu.assign(cols, 0);
    w.nu.assign(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        if (sgn(v[i]) == 0) continue;
        const mpz_class mag = abs(v[i]);
        if (!mag.fits_ulong_p())
            throw DomainError("witness exponent does not fit a machine word");
        const auto k = static_cast<std::uint64_t>(mag.get_ui());
        w.kappa[i] = k;
        if (sgn(v[i]) > 0) {
            w.I.push_back(i);
            w.mu[i] = k;
        } else {
            w.J.push_back(i);
            w.nu[i] = k;
        }
    }

    // b_mu and b_nu, the coefficients of the witness polynomial.
    w.coeff_mu = 1.0;
    w.coeff_nu = 1.0;
    for (std::size_t i = 0; i < cols; ++i) {
        w.coeff_mu *= std::pow(weights[i], static_cast<double>(w.mu[i]));
        w.coeff_nu *= std::pow(weights[i], static_cast<double>(w.nu[i]));
    }

    mpz_class left = 1, right = 1, power;
    for (std::size_t i : w.I) {
        mpz_ui_pow_ui(power.get_mpz_t(), n_list[i], static_cast<unsigned long>(w.kappa[i]));
        left *= power;
    }
    for (std::size_t j : w.J) {
        mpz_ui_pow_ui(power.get_mpz_t(), n_list[j], static_cast<unsigned long>(w.kappa[j]));
        right *= power;
    }
    if (left != right)
        throw DomainError("internal: witness product identity failed"); // unreachable
    w.common_value = left;
    return w;
}

double verify_witness(const Witness& w, const Embedding& e,
                      std::span<const std::complex<double>> points) {
    const std::size_t d = e.size();
    if (w.kappa.size() != d || w.mu.size() != d || w.nu.size() != d)
        throw IndexError("witness length does not match the embedding dimension");
    for (std::size_t i : w.I)
        if (i >= d) throw IndexError("witness index out of range");
    for (std::size_t j : w.J)
        if (j >= d) throw IndexError("witness index out of range");

    double coeff_mu = 1.0, coeff_nu = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        coeff_mu *= std::pow(e.weight(i), static_cast<double>(w.mu[i]));
        coeff_nu *= std::pow(e.weight(i), static_cast<double>(w.nu[i]));
    }

    double max_mod = 0.0;
    for (const std::complex<double> s : points) {
        std::complex<double> term_mu(coeff_nu, 0.0), term_nu(coeff_mu, 0.0);
        for (std::size_t i : w.I)
            term_mu *= std::pow(e.weight(i) *
                                    std::exp(-s * std::log(static_cast<double>(
                                                 e.generators()[i]))),
                                static_cast<double>(w.kappa[i]));
        for (std::size_t j : w.J)
            term_nu *= std::pow(e.weight(j) *
                                    std::exp(-s * std::log(static_cast<double>(
                                                 e.generators()[j]))),
                                static_cast<double>(w.kappa[j]));
        max_mod = std::max(max_mod, std::abs(term_mu - term_nu));
    }
    return max_mod;
}

} // namespace pickdirichlet
