#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "qstab/errors.hpp"

namespace qstab {

/// Primes accepted as moduli. Small by design: exhaustive subspace
/// enumeration must terminate quickly.
inline bool is_supported_prime(std::uint32_t p) {
    constexpr std::array<std::uint32_t, 25> primes = {
        2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (auto q : primes)
        if (q == p) return true;
    return false;
}

/// Element of the prime field F_p with runtime modulus. Residues are kept
/// in the canonical range {0..p-1}; arithmetic between distinct moduli
/// throws field_mismatch.
class PrimeField {
public:
    struct Context {
        std::uint32_t p = 0;
        friend bool operator==(const Context&, const Context&) = default;
    };

    /// Unset element; any arithmetic on it is rejected. Exists so aggregates
    /// holding scalars stay default-constructible.
    PrimeField() : p_(0), v_(0) {}

    PrimeField(Context ctx, long long value) : p_(ctx.p) {
        check_modulus(p_);
        const long long m = static_cast<long long>(p_);
        long long r = value % m;
        if (r < 0) r += m;
        v_ = static_cast<std::uint32_t>(r);
    }

    static PrimeField zero(Context ctx) { return PrimeField(ctx, 0); }
    static PrimeField one(Context ctx) { return PrimeField(ctx, 1); }
    [[nodiscard]] Context context() const { return Context{p_}; }

    [[nodiscard]] std::uint32_t modulus() const { return p_; }
    [[nodiscard]] std::uint32_t residue() const { return v_; }
    [[nodiscard]] bool is_zero() const { return v_ == 0; }

    [[nodiscard]] PrimeField inverse() const {
        if (v_ == 0) throw std::domain_error("PrimeField: inverse of zero");
        // extended Euclid on (v, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = v_;
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0) t += p_;
        return PrimeField(Context{p_}, t);
    }

    PrimeField operator-() const { return PrimeField(Context{p_}, v_ == 0 ? 0 : p_ - v_); }
    PrimeField& operator+=(const PrimeField& o) {
        match(o);
        v_ = (v_ + o.v_) % p_;
        return *this;
    }
    PrimeField& operator-=(const PrimeField& o) {
        match(o);
        v_ = (v_ + p_ - o.v_) % p_;
        return *this;
    }
    PrimeField& operator*=(const PrimeField& o) {
        match(o);
        v_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v_) * o.v_) % p_);
        return *this;
    }
    PrimeField& operator/=(const PrimeField& o) { return *this *= o.inverse(); }

    friend PrimeField operator+(PrimeField a, const PrimeField& b) { return a += b; }
    friend PrimeField operator-(PrimeField a, const PrimeField& b) { return a -= b; }
    friend PrimeField operator*(PrimeField a, const PrimeField& b) { return a *= b; }
    friend PrimeField operator/(PrimeField a, const PrimeField& b) { return a /= b; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) {
        a.match(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return !(a == b); }

    // Serialization order only; F_p carries no field order.
    friend bool operator<(const PrimeField& a, const PrimeField& b) {
        if (a.p_ != b.p_) return a.p_ < b.p_;
        return a.v_ < b.v_;
    }

    [[nodiscard]] std::string str() const { return std::to_string(v_); }

    friend std::ostream& operator<<(std::ostream& os, const PrimeField& x) {
        return os << x.v_ << " (mod " << x.p_ << ")";
    }

private:
    static void check_modulus(std::uint32_t p) {
        if (!is_supported_prime(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                        " is not a supported prime (prime, <= 97)");
    }
    void match(const PrimeField& o) const {
        if (p_ == 0 || o.p_ == 0)
            throw field_mismatch("PrimeField: arithmetic on an unset element");
        if (p_ != o.p_)
            throw field_mismatch("PrimeField: mixed moduli " + std::to_string(p_) + " and " +
                                 std::to_string(o.p_));
    }

    std::uint32_t p_;
    std::uint32_t v_;
};

} // namespace qstab
