#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "padic_ducci/error.hpp"
#include "padic_ducci/rational.hpp"

namespace padic_ducci {

/// A value of T extended by a single point +inf that compares above every
/// finite value and absorbs addition.
template <class T>
class Extended {
public:
    Extended() = default;  // +inf
    Extended(T v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static Extended infinity() { return Extended(); }

    bool is_infinite() const noexcept { return !v_.has_value(); }
    bool is_finite() const noexcept { return v_.has_value(); }
    const T& value() const {
        if (!v_) throw Error("value of an infinite valuation");
        return *v_;
    }

    friend Extended operator+(const Extended& a, const Extended& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Extended(*a.v_ + *b.v_);
    }

    friend bool operator==(const Extended& a, const Extended& b) { return a.v_ == b.v_; }
    friend auto operator<=>(const Extended& a, const Extended& b) {
        using O = std::compare_three_way_result_t<T>;
        if (a.is_infinite() || b.is_infinite())
            return static_cast<O>(a.is_infinite() <=> b.is_infinite());
        return static_cast<O>(*a.v_ <=> *b.v_);
    }

    /// Decimal text, or "inf".
    std::string str() const {
        if (!v_) return "inf";
        if constexpr (requires(const T& t) { t.str(); })
            return v_->str();
        else
            return std::to_string(*v_);
    }

private:
    std::optional<T> v_;
};

/// p-adic valuation of a rational: an integer or +inf.
using Valuation = Extended<long>;

/// Valuation of an algebraic root read off a Newton polygon; may be fractional.
using RootValuation = Extended<Rational>;

/// A prime p with 2 <= p < 2^32, validated by trial division.
class Prime {
public:
    static constexpr unsigned long max_value = 0xFFFFFFFFul;

    explicit Prime(long long p) {
        if (p < 2 || static_cast<unsigned long long>(p) > max_value || !is_prime(static_cast<unsigned long>(p)))
            throw InvalidPrime("p must be prime (got " + std::to_string(p) + ")");
        p_ = static_cast<unsigned long>(p);
    }

    unsigned long value() const noexcept { return p_; }
    Integer as_integer() const { return Integer(p_); }
    Rational as_rational() const { return Rational(as_integer()); }

    static bool is_prime(unsigned long n) {
        if (n < 2) return false;
        for (unsigned long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(const Prime&, const Prime&) = default;

private:
    unsigned long p_ = 2;
};

namespace detail {

inline long strip_factor(Integer n, const Prime& p) {
    if (n == 0) return 0;
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.as_integer().get_mpz_t()));
}

}  // namespace detail

/// Exponent k with x = p^k * (a/b), p dividing neither a nor b; +inf for zero.
inline Valuation vp(const Rational& x, const Prime& p) {
    if (x.is_zero()) return Valuation::infinity();
    return detail::strip_factor(x.numerator(), p) - detail::strip_factor(x.denominator(), p);
}

/// |x|_p = p^(-vp(x)) as an exact rational; |0|_p = 0.
inline Rational padic_abs(const Rational& x, const Prime& p) {
    const Valuation v = vp(x, p);
    if (v.is_infinite()) return Rational{};
    return pow(p.as_rational(), -v.value());
}

/// x lies in Z_p, i.e. vp(x) >= 0.
inline bool is_p_integer(const Rational& x, const Prime& p) { return vp(x, p) >= Valuation(0); }

}  // namespace padic_ducci
