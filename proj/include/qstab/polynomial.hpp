#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "qstab/rational.hpp"

namespace qstab {

/// Univariate polynomial over the rationals, coefficients stored densely in
/// ascending degree with no trailing zeros. The zero polynomial has an empty
/// coefficient list.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    RationalPolynomial(std::initializer_list<Rational> ascending) : c_(ascending) { trim(); }
    explicit RationalPolynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

    static RationalPolynomial constant(Rational c) {
        return RationalPolynomial(std::vector<Rational>{std::move(c)});
    }
    /// c * x^k
    static RationalPolynomial monomial(Rational c, std::size_t k) {
        if (c.is_zero()) return {};
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = std::move(c);
        return RationalPolynomial(std::move(v));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
    [[nodiscard]] Rational coefficient(std::size_t k) const {
        return k < c_.size() ? c_[k] : Rational(0);
    }
    [[nodiscard]] Rational leading_coefficient() const {
        return c_.empty() ? Rational(0) : c_.back();
    }

    [[nodiscard]] Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    RationalPolynomial operator-() const {
        std::vector<Rational> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(-c);
        return RationalPolynomial(std::move(v));
    }

    RationalPolynomial& operator+=(const RationalPolynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    RationalPolynomial& operator-=(const RationalPolynomial& o) { return *this += -o; }

    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) {
        return a += b;
    }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) {
        return a -= b;
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return RationalPolynomial(std::move(v));
    }
    friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p) {
        if (s.is_zero()) return {};
        std::vector<Rational> v;
        v.reserve(p.c_.size());
        for (const auto& c : p.c_) v.push_back(s * c);
        return RationalPolynomial(std::move(v));
    }

    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const RationalPolynomial& a, const RationalPolynomial& b) {
        return !(a == b);
    }

    [[nodiscard]] std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].str();
            if (i > 0) out += "*x^" + std::to_string(i);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalPolynomial& p) {
        return os << p.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Compares coefficient vectors from the highest degree down (the shorter
/// polynomial is padded with zeros at high degrees); the first differing
/// coefficient decides.
inline std::strong_ordering poly_lex_compare(const RationalPolynomial& p,
                                             const RationalPolynomial& q) {
    const int dp = p.degree(), dq = q.degree();
    for (int k = std::max(dp, dq); k >= 0; --k) {
        const auto c = p.coefficient(static_cast<std::size_t>(k)) <=>
                       q.coefficient(static_cast<std::size_t>(k));
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

/// Exact quotient of polynomials, kept unreduced. Two values compare equal
/// when they agree as rational functions (cross-multiplied).
struct RationalFunction {
    RationalPolynomial num;
    RationalPolynomial den; // nonzero

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }
};

} // namespace qstab
