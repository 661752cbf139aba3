#include "pickdirichlet/dirichlet_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pickdirichlet {

DirichletSeries::DirichletSeries(ScalarMode mode, std::size_t depth)
    : mode_(mode), coeffs_(depth, Scalar::zero(mode)) {
    if (depth == 0) throw DomainError("series depth must be >= 1");
}

DirichletSeries DirichletSeries::delta(ScalarMode mode, std::size_t depth) {
    DirichletSeries s(mode, depth);
    s.coeffs_[0] = Scalar::one(mode);
    return s;
}

DirichletSeries DirichletSeries::ones(ScalarMode mode, std::size_t depth) {
    DirichletSeries s(mode, depth);
    for (auto& c : s.coeffs_) c = Scalar::one(mode);
    return s;
}

const Scalar& DirichletSeries::at(std::size_t n) const {
    if (n < 1 || n > coeffs_.size())
        throw IndexError("series index " + std::to_string(n) + " out of range [1, " +
                         std::to_string(coeffs_.size()) + "]");
    return coeffs_[n - 1];
}

void DirichletSeries::set(std::size_t n, const Scalar& v) {
    if (n < 1 || n > coeffs_.size())
        throw IndexError("series index " + std::to_string(n) + " out of range [1, " +
                         std::to_string(coeffs_.size()) + "]");
    coeffs_[n - 1] = v.converted_to(mode_);
}

DirichletSeries DirichletSeries::truncated(std::size_t new_depth) const {
    if (new_depth > depth())
        throw IndexError("cannot extend a series by truncation");
    DirichletSeries s(mode_, new_depth);
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(new_depth),
              s.coeffs_.begin());
    return s;
}

DirichletSeries DirichletSeries::to_real64() const {
    DirichletSeries s(ScalarMode::real64, depth());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        s.coeffs_[i] = Scalar::real(coeffs_[i].to_double());
    return s;
}

double DirichletSeries::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::fabs(c.to_double()));
    return m;
}

bool operator==(const DirichletSeries& a, const DirichletSeries& b) {
    if (a.mode_ != b.mode_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (a.coeffs_[i] != b.coeffs_[i]) return false;
    return true;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b) {
    const ScalarMode mode = promote(a.mode(), b.mode());
    const std::size_t n = std::min(a.depth(), b.depth());
    const DirichletSeries& ax = (mode == a.mode()) ? a : a.to_real64();
    const DirichletSeries& bx = (mode == b.mode()) ? b : b.to_real64();

    DirichletSeries r(mode, n);
    for (std::size_t i = 1; i <= n; ++i) {
        const Scalar& ai = ax.at(i);
        if (ai.is_zero()) continue;
        for (std::size_t j = 1; i * j <= n; ++j) {
            const Scalar& bj = bx.at(j);
            if (bj.is_zero()) continue;
            r.set(i * j, r.at(i * j) + ai * bj);
        }
    }
    return r;
}

DirichletSeries invert(const DirichletSeries& a, double real_zero_tol) {
    const Scalar& a1 = a.at(1);
    const bool unit_ok = a.mode() == ScalarMode::exact_rational
                             ? !a1.is_zero()
                             : std::fabs(a1.to_double()) > real_zero_tol;
    if (!unit_ok)
        throw NonUnitError("series is not invertible: a_1 = " + a1.str());

    const std::size_t n = a.depth();
    DirichletSeries c(a.mode(), n);
    const Scalar inv_a1 = Scalar::one(a.mode()) / a1;
    c.set(1, inv_a1);
    for (std::size_t m = 2; m <= n; ++m) {
        Scalar acc = Scalar::zero(a.mode());
        for (std::uint64_t d : divisors(m)) {
            if (d == m) continue;
            const Scalar& cd = c.at(d);
            if (cd.is_zero()) continue;
            acc += a.at(m / d) * cd;
        }
        c.set(m, -(inv_a1 * acc));
    }
    return c;
}

} // namespace pickdirichlet
