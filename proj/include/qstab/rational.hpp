#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qstab/errors.hpp"

namespace qstab {

/// Arbitrary-precision rational number. Always stored reduced with a
/// positive denominator.
class Rational {
public:
    /// All rationals live in one field; the context carries no data.
    struct Context {
        friend bool operator==(const Context&, const Context&) { return true; }
        friend bool operator!=(const Context&, const Context&) { return false; }
    };

    Rational() : q_(0) {}
    Rational(long long n) : q_(static_cast<long>(n)) {}
    Rational(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational zero(Context = {}) { return Rational(); }
    static Rational one(Context = {}) { return Rational(1); }
    [[nodiscard]] Context context() const { return {}; }

    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] int sign() const { return sgn(q_); }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Serializes as "num/den", the denominator omitted when it is 1.
    [[nodiscard]] std::string str() const { return q_.get_str(); }

    /// Parses "num" or "num/den"; rejects anything else.
    static Rational parse(std::string_view text) {
        mpq_t raw;
        mpq_init(raw);
        const std::string s(text);
        if (s.empty() || mpq_set_str(raw, s.c_str(), 10) != 0) {
            mpq_clear(raw);
            throw schema_error("Rational: cannot parse '" + s + "'");
        }
        if (mpz_sgn(mpq_denref(raw)) == 0) {
            mpq_clear(raw);
            throw schema_error("Rational: zero denominator in '" + s + "'");
        }
        mpq_class q(raw);
        mpq_clear(raw);
        q.canonicalize();
        return Rational(std::move(q));
    }

    [[nodiscard]] const mpq_class& value() const { return q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_; }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace qstab
