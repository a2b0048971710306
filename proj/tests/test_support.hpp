#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths it
// is used to check (no char_poly, no newton_polygon, no mpz_remove).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "padic_ducci/padic_ducci.hpp"

namespace padic_ducci::testing {

inline Rational random_rational(std::mt19937_64& rng, long bound, bool nonzero = false) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
    long a = num(rng);
    while (nonzero && a == 0) a = num(rng);
    return Rational(Integer(a), Integer(den(rng)));
}

/// Random rational times p^e, e in [-e_bound, e_bound].
inline Rational random_scaled(std::mt19937_64& rng, long bound, const Prime& p, long e_bound, bool nonzero = false) {
    std::uniform_int_distribution<long> e(-e_bound, e_bound);
    return random_rational(rng, bound, nonzero) * pow(p.as_rational(), e(rng));
}

/// Valuation by repeated exact division; returns a huge sentinel for zero.
inline long brute_vp(const Rational& x, unsigned long p) {
    if (x.is_zero()) return 1L << 40;
    auto count = [p](Integer n) {
        if (n < 0) n = -n;
        long k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        return k;
    };
    return count(x.numerator()) - count(x.denominator());
}

/// det(tI - A) by the Leibniz permutation expansion with polynomial entries.
inline RationalPolynomial leibniz_char_poly(const RationalMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    RationalPolynomial total;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        RationalPolynomial term{inversions % 2 ? -1 : 1};
        for (std::size_t i = 0; i < n; ++i) {
            // entry (i, perm[i]) of tI - A
            RationalPolynomial e{-a(i, perm[i])};
            if (perm[i] == i) e = RationalPolynomial{-a(i, i), 1};
            term = term * e;
        }
        total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline RationalMatrix cyclic_shift(std::size_t n) {
    RationalMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s(i, (i + 1) % n) = 1;
    return s;
}

inline RationalMatrix classical_matrix() {
    return RationalMatrix{{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {-1, 0, 0, 1}};
}

inline RationalVector vec(std::initializer_list<Rational> v) { return RationalVector(v); }

inline Rational q(const char* s) { return Rational::parse(s); }

}  // namespace padic_ducci::testing
