#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padic_ducci/error.hpp"
#include "padic_ducci/rational.hpp"

namespace padic_ducci {

using RationalVector = std::vector<Rational>;

/// Dense n x n matrix of rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) : n_(rows.size()) {
        a_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw DimensionMismatch("matrix rows must have length " + std::to_string(n_));
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix diagonal(std::span<const Rational> d) {
        RationalMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const Rational> entries() const noexcept { return a_; }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && !(*this)(i, j).is_zero()) return false;
        return true;
    }

    bool is_upper_triangular() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (!(*this)(i, j).is_zero()) return false;
        return true;
    }

    Rational trace() const {
        Rational t;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> a_;
};

inline RationalVector mat_vec_mul(const RationalMatrix& a, std::span<const Rational> x) {
    const std::size_t n = a.size();
    if (x.size() != n)
        throw DimensionMismatch("dimension mismatch: matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                                ", vector has length " + std::to_string(x.size()));
    RationalVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s;
        for (std::size_t j = 0; j < n; ++j)
            if (!x[j].is_zero()) s += a(i, j) * x[j];
        y[i] = std::move(s);
    }
    return y;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw DimensionMismatch("dimension mismatch in matrix product");
    RationalMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dimension mismatch in matrix sum");
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c(i, j) += b(i, j);
    return c;
}

inline RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c(i, j) *= s;
    return c;
}

/// A^m by repeated squaring; A^0 = I.
inline RationalMatrix mat_pow(const RationalMatrix& a, unsigned long m) {
    RationalMatrix result = RationalMatrix::identity(a.size());
    RationalMatrix base = a;
    while (m > 0) {
        if (m & 1ul) result = mat_mul(result, base);
        m >>= 1;
        if (m > 0) base = mat_mul(base, base);
    }
    return result;
}

/// Determinant by Gaussian elimination over Q.
inline Rational determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Rational{};
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            const Rational f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Polynomial over Q with ascending coefficients and no trailing zeros; the
/// zero polynomial has no coefficients.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    RationalPolynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    /// t^k
    static RationalPolynomial monomial(std::size_t k, Rational coeff = 1) {
        std::vector<Rational> c(k + 1);
        c[k] = std::move(coeff);
        return RationalPolynomial(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational{}; }
    const Rational& leading() const {
        if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    RationalPolynomial monic() const {
        RationalPolynomial r = *this;
        if (r.is_zero()) return r;
        const Rational lead = r.leading();
        for (auto& x : r.c_) x /= lead;
        return r;
    }

    RationalPolynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c_[i]);
        return RationalPolynomial(std::move(d));
    }

    Rational operator()(const Rational& t) const {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return RationalPolynomial(std::move(c));
    }

    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k].is_zero()) continue;
            Rational c = c_[k];
            if (!s.empty()) {
                s += c.sign() < 0 ? " - " : " + ";
                c = abs(c);
            }
            const bool unit = c == Rational(1) || c == Rational(-1);
            if (k == 0 || !unit) s += c.str();
            else if (c.sign() < 0) s += "-";
            if (k >= 1) s += "t";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

struct PolynomialDivision {
    RationalPolynomial quotient;
    RationalPolynomial remainder;
};

inline PolynomialDivision divmod(const RationalPolynomial& f, const RationalPolynomial& g) {
    if (g.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem = f.coefficients();
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    if (f.degree() < g.degree()) return {RationalPolynomial{}, f};
    std::vector<Rational> quot(rem.size() - dg);
    const Rational& lead = g.leading();
    for (std::size_t k = rem.size(); k-- > dg;) {
        if (rem[k].is_zero()) continue;
        const Rational q = rem[k] / lead;
        for (std::size_t i = 0; i <= dg; ++i) rem[k - dg + i] -= q * g.coefficients()[i];
        quot[k - dg] = q;
    }
    rem.resize(dg);
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
inline RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
        RationalPolynomial r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// f / gcd(f, f'), made monic: same roots as f, each simple.
inline RationalPolynomial squarefree_part(const RationalPolynomial& f) {
    if (f.is_zero()) throw Error("squarefree part of the zero polynomial");
    if (f.degree() == 0) return RationalPolynomial{1};
    return divmod(f, gcd(f, f.derivative())).quotient.monic();
}

/// det(tI - A) via the Faddeev-LeVerrier recursion
///   M_0 = 0, c_n = 1,  M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
inline RationalPolynomial char_poly(const RationalMatrix& a) {
    const std::size_t n = a.size();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix m(n);
    const RationalMatrix id = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = mat_mul(a, m) + c[n - k + 1] * id;
        c[n - k] = -mat_mul(a, m).trace() / Rational(static_cast<long>(k));
    }
    return RationalPolynomial(std::move(c));
}

/// f(A) by Horner's scheme.
inline RationalMatrix evaluate(const RationalPolynomial& f, const RationalMatrix& a) {
    RationalMatrix acc(a.size());
    const RationalMatrix id = RationalMatrix::identity(a.size());
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mat_mul(acc, a) + (*it) * id;
    return acc;
}

}  // namespace padic_ducci
