#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "padic_ducci/error.hpp"

namespace padic_ducci {

using Integer = mpz_class;

/// Exact rational number kept in canonical reduced form (denominator > 0,
/// gcd(|num|, den) = 1, zero is 0/1). Equality is therefore structural.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw ParseError("zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "a" or "a/b" (optional leading '-', decimal digits). Non-reduced
    /// input such as "2/4" is accepted and canonicalized.
    static Rational parse(std::string_view text) {
        auto digits = [](std::string_view s) {
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        const std::string original(text);
        bool negative = false;
        if (!text.empty() && text.front() == '-') {
            negative = true;
            text.remove_prefix(1);
        }
        const auto slash = text.find('/');
        const std::string_view num = text.substr(0, slash);
        const std::string_view den =
            slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
        if (!digits(num) || !digits(den))
            throw ParseError("malformed rational '" + original + "'");
        Integer n(std::string(num), 10);
        Integer d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + original + "'");
        if (negative) n = -n;
        return Rational(n, d);
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    const mpq_class& raw() const noexcept { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    /// "a" for integers, "a/b" otherwise.
    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// base^exp for a possibly negative exponent; base must be nonzero when exp < 0.
inline Rational pow(const Rational& base, long exp) {
    const unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
    if (exp < 0) {
        if (num == 0) throw Error("zero raised to a negative power");
        std::swap(num, den);
    }
    return Rational(num, den);
}

}  // namespace padic_ducci
