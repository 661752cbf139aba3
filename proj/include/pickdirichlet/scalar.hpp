#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "pickdirichlet/errors.hpp"

namespace pickdirichlet {

enum class ScalarMode { exact_rational, real64 };

std::string to_string(ScalarMode mode);
ScalarMode scalar_mode_from_string(const std::string& s);

inline ScalarMode promote(ScalarMode a, ScalarMode b) {
    return (a == ScalarMode::exact_rational && b == ScalarMode::exact_rational)
               ? ScalarMode::exact_rational
               : ScalarMode::real64;
}

// One coefficient value: an exact GMP rational (kept in lowest terms with a
// positive denominator) or a double. Mixed-mode arithmetic promotes to real64.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar zero(ScalarMode mode) {
        return mode == ScalarMode::exact_rational ? rational(0, 1) : real(0.0);
    }
    static Scalar one(ScalarMode mode) {
        return mode == ScalarMode::exact_rational ? rational(1, 1) : real(1.0);
    }
    static Scalar rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }
    static Scalar rational(long num, long den);
    static Scalar integer(const mpz_class& z) { return Scalar(mpq_class(z)); }
    static Scalar real(double x) { return Scalar(x); }

    // Parses either a decimal literal or a "p/q" rational string; the target
    // mode decides the representation.
    static Scalar parse(const std::string& text, ScalarMode mode);

    ScalarMode mode() const {
        return std::holds_alternative<mpq_class>(v_) ? ScalarMode::exact_rational
                                                     : ScalarMode::real64;
    }
    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }

    const mpq_class& rat() const;
    double to_double() const;
    Scalar converted_to(ScalarMode mode) const;

    bool is_zero() const;
    int sign() const;
    Scalar abs() const;
    Scalar pow(unsigned long k) const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // Exact comparison in rational mode; double comparison otherwise
    // (mixed modes compare as doubles).
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Rational: canonical GMP form ("p/q", "/1" omitted). Real: 17 significant
    // digits, enough to round-trip.
    std::string str() const;

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(double x) : v_(x) {}

    std::variant<mpq_class, double> v_;
};

} // namespace pickdirichlet
