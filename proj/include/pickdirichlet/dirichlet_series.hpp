#pragma once

#include <cstdint>
#include <vector>

#include "pickdirichlet/scalar.hpp"

namespace pickdirichlet {

// Truncated Dirichlet series sum a_n n^{-s}: the coefficient prefix
// (a_1, ..., a_N) with every entry in one scalar mode. Index 1 is the
// coefficient of 1^{-s} = 1.
//
// Truncation is exact: the coefficient of any convolution/inversion result
// at index n depends only on input coefficients at indices dividing n, so
// computing at depth N and then restricting to N' < N equals computing at
// depth N' directly.
class DirichletSeries {
public:
    DirichletSeries(ScalarMode mode, std::size_t depth);

    static DirichletSeries delta(ScalarMode mode, std::size_t depth);
    static DirichletSeries ones(ScalarMode mode, std::size_t depth);

    std::size_t depth() const { return coeffs_.size(); }
    ScalarMode mode() const { return mode_; }

    // 1-based coefficient access: at(n) is a_n for 1 <= n <= depth().
    const Scalar& at(std::size_t n) const;
    // Stores a_n; rational values are converted when the series is real64,
    // storing a real into a rational series throws ModeError.
    void set(std::size_t n, const Scalar& v);

    DirichletSeries truncated(std::size_t new_depth) const;
    DirichletSeries to_real64() const;

    double max_abs() const;

    friend bool operator==(const DirichletSeries& a, const DirichletSeries& b);

private:
    ScalarMode mode_;
    std::vector<Scalar> coeffs_;
};

// Sorted divisors of n, by trial division up to sqrt(n).
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Dirichlet convolution: result_n = sum over d | n of a_d b_{n/d}, truncated
// at min(a.depth(), b.depth()). Exact in rational mode; mixed modes promote.
DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b);

// Multiplicative inverse of the series: convolve(a, invert(a)) = delta up to
// truncation. c_1 = 1/a_1 and c_n = -(1/a_1) sum_{d | n, d < n} a_{n/d} c_d.
// Throws NonUnitError when a_1 = 0 (in real64 mode, when |a_1| <= zero_tol).
DirichletSeries invert(const DirichletSeries& a, double real_zero_tol = 1e-12);

} // namespace pickdirichlet
