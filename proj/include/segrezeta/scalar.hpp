#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "segrezeta/errors.hpp"

namespace segrezeta {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid; p prime, a nonzero mod p.
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p),
                 newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw StructuralError("invmod: element not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace detail

inline std::uint64_t prime_below(std::uint64_t p) {
    for (std::uint64_t q = p - 1;; --q) {
        if (detail::is_prime_u64(q)) return q;
        if (q < 3) throw StructuralError("prime_below: no prime found");
    }
}

/// Exact scalar: either a rational number or a residue in a prime field F_p.
/// modulus() == 0 marks the rational kind.
class Scalar {
public:
    Scalar() : p_(0), r_(0) {}

    static Scalar rational(Rational q) {
        Scalar s;
        s.q_ = std::move(s.normalize(q));
        return s;
    }
    static Scalar rational(long long num, long long den = 1) {
        return rational(Rational(num, den));
    }
    static Scalar residue(std::int64_t v, std::uint64_t p) {
        if (p < 2 || !detail::is_prime_u64(p))
            throw StructuralError("Scalar: modulus " + std::to_string(p) +
                                  " is not prime");
        Scalar s;
        s.p_ = p;
        std::int64_t m = v % static_cast<std::int64_t>(p);
        if (m < 0) m += static_cast<std::int64_t>(p);
        s.r_ = static_cast<std::uint64_t>(m);
        return s;
    }
    static Scalar zero_like(const Scalar& other) {
        return other.is_rational() ? rational(0) : residue(0, other.p_);
    }
    static Scalar one_like(const Scalar& other) {
        return other.is_rational() ? rational(1) : residue(1, other.p_);
    }

    bool is_rational() const { return p_ == 0; }
    std::uint64_t modulus() const { return p_; }
    const Rational& value() const { return q_; }
    std::uint64_t residue_value() const { return r_; }

    bool is_zero() const { return is_rational() ? q_.is_zero() : r_ == 0; }
    bool is_one() const {
        return is_rational() ? q_ == 1 : r_ == 1;
    }

    bool same_kind(const Scalar& o) const { return p_ == o.p_; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (is_rational()) return rational(q_ + o.q_);
        return make(p_, (r_ + o.r_) % p_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        if (is_rational()) return rational(q_ - o.q_);
        return make(p_, (r_ + p_ - o.r_) % p_);
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (is_rational()) return rational(q_ * o.q_);
        return make(p_, detail::mulmod(r_, o.r_, p_));
    }
    Scalar operator-() const {
        if (is_rational()) return rational(-q_);
        return make(p_, r_ == 0 ? 0 : p_ - r_);
    }
    Scalar inverse() const {
        if (is_zero()) throw StructuralError("Scalar: inverse of zero");
        if (is_rational()) return rational(Rational(1) / q_);
        return make(p_, detail::invmod(r_, p_));
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const {
        if (p_ != o.p_) return false;
        return is_rational() ? q_ == o.q_ : r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Image in F_p; throws if the denominator vanishes mod p.
    Scalar reduce_mod(std::uint64_t p) const {
        if (!is_rational())
            throw StructuralError("Scalar: reduce_mod on a residue");
        BigInt num = boost::multiprecision::numerator(q_);
        BigInt den = boost::multiprecision::denominator(q_);
        BigInt bp = p;
        std::uint64_t n =
            static_cast<std::uint64_t>(((num % bp) + bp) % bp);
        std::uint64_t d = static_cast<std::uint64_t>(((den % bp) + bp) % bp);
        if (d == 0)
            throw StructuralError("Scalar: denominator divisible by p");
        return make(p, detail::mulmod(n, detail::invmod(d, p), p));
    }

    std::string str() const {
        if (is_rational()) return q_.str();
        return std::to_string(r_);
    }

private:
    static Scalar make(std::uint64_t p, std::uint64_t r) {
        Scalar s;
        s.p_ = p;
        s.r_ = r;
        return s;
    }
    Rational normalize(Rational& q) { return q; } // cpp_rational canonicalizes
    void check(const Scalar& o) const {
        if (p_ != o.p_)
            throw StructuralError("Scalar: mixed scalar kinds in arithmetic");
    }

    Rational q_;
    std::uint64_t p_;
    std::uint64_t r_;
};

} // namespace segrezeta
