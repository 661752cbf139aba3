#include "pickdirichlet/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace pickdirichlet {

std::string to_string(ScalarMode mode) {
    return mode == ScalarMode::exact_rational ? "rational" : "real64";
}

ScalarMode scalar_mode_from_string(const std::string& s) {
    if (s == "rational") return ScalarMode::exact_rational;
    if (s == "real64") return ScalarMode::real64;
    throw ModeError("unknown scalar mode '" + s + "' (expected rational|real64)");
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::parse(const std::string& text, ScalarMode mode) {
    if (mode == ScalarMode::exact_rational) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw DomainError("cannot parse '" + text + "' as a rational");
        if (q.get_den() == 0) throw DomainError("rational with zero denominator");
        q.canonicalize();
        return Scalar(std::move(q));
    }
    std::size_t pos = 0;
    double x = std::stod(text, &pos);
    if (pos != text.size())
        throw DomainError("cannot parse '" + text + "' as a real");
    return Scalar(x);
}

const mpq_class& Scalar::rat() const {
    if (!is_rational()) throw ModeError("scalar is not in rational mode");
    return std::get<mpq_class>(v_);
}

double Scalar::to_double() const {
    return is_rational() ? std::get<mpq_class>(v_).get_d() : std::get<double>(v_);
}

Scalar Scalar::converted_to(ScalarMode mode) const {
    if (mode == this->mode()) return *this;
    if (mode == ScalarMode::real64) return real(to_double());
    throw ModeError("cannot lift a real64 value to exact rational");
}

bool Scalar::is_zero() const {
    return is_rational() ? sgn(std::get<mpq_class>(v_)) == 0
                         : std::get<double>(v_) == 0.0;
}

int Scalar::sign() const {
    if (is_rational()) return sgn(std::get<mpq_class>(v_));
    double x = std::get<double>(v_);
    return (x > 0.0) - (x < 0.0);
}

Scalar Scalar::abs() const {
    if (is_rational()) return Scalar(mpq_class(::abs(std::get<mpq_class>(v_))));
    return Scalar(std::fabs(std::get<double>(v_)));
}

Scalar Scalar::pow(unsigned long k) const {
    if (is_rational()) {
        const mpq_class& q = std::get<mpq_class>(v_);
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), k);
        mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), k);
        r.canonicalize();
        return Scalar(std::move(r));
    }
    return Scalar(std::pow(std::get<double>(v_), static_cast<double>(k)));
}

Scalar Scalar::operator-() const {
    if (is_rational()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
    return Scalar(-std::get<double>(v_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
        return Scalar(mpq_class(a.rat() + b.rat()));
    return Scalar::real(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
        return Scalar(mpq_class(a.rat() - b.rat()));
    return Scalar::real(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
        return Scalar(mpq_class(a.rat() * b.rat()));
    return Scalar::real(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) {
        if (sgn(b.rat()) == 0) throw DomainError("division by exact zero");
        return Scalar(mpq_class(a.rat() / b.rat()));
    }
    return Scalar::real(a.to_double() / b.to_double());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rat() == b.rat();
    return a.to_double() == b.to_double();
}

std::string Scalar::str() const {
    if (is_rational()) return std::get<mpq_class>(v_).get_str();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v_));
    return buf;
}

} // namespace pickdirichlet
