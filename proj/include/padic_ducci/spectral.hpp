#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padic_ducci/error.hpp"
#include "padic_ducci/linalg.hpp"
#include "padic_ducci/padic.hpp"

namespace padic_ducci {

struct PolygonSegment {
    Rational slope;
    std::size_t length;
    friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

/// Lower convex hull of the points (i, vp(a_i)) of a monic polynomial.
/// Slopes are strictly increasing; a segment of slope s and length l accounts
/// for exactly l roots of valuation -s. Roots at zero (leading zero
/// coefficients a_0 = ... = a_{k-1} = 0) are counted separately.
struct NewtonPolygon {
    std::vector<PolygonSegment> segments;
    std::size_t zero_roots = 0;

    std::size_t degree() const {
        std::size_t d = zero_roots;
        for (const auto& s : segments) d += s.length;
        return d;
    }

    /// Root valuations in ascending order, +inf (zero roots) last.
    std::vector<RootValuation> root_valuations() const {
        std::vector<RootValuation> v;
        for (auto it = segments.rbegin(); it != segments.rend(); ++it)
            v.insert(v.end(), it->length, RootValuation(-it->slope));
        v.insert(v.end(), zero_roots, RootValuation::infinity());
        return v;
    }
};

inline NewtonPolygon newton_polygon(const RationalPolynomial& f, const Prime& p) {
    if (!f.is_monic()) throw Error("newton_polygon expects a monic polynomial");
    if (f.degree() < 1) throw Error("newton_polygon expects degree >= 1");
    struct Point { long x; long y; };
    NewtonPolygon poly;
    std::vector<Point> hull;
    const auto& c = f.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) {
            if (hull.empty()) ++poly.zero_roots;
            continue;
        }
        const Point q{static_cast<long>(i), vp(c[i], p).value()};
        // Pop b while it is not strictly below the chord a -> q.
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull.back();
            const long cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(q);
    }
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const long dx = hull[i].x - hull[i - 1].x;
        poly.segments.push_back(
            {Rational(Integer(hull[i].y - hull[i - 1].y), Integer(dx)), static_cast<std::size_t>(dx)});
    }
    return poly;
}

/// Valuations of the eigenvalues of D (with multiplicity, +inf for zero
/// eigenvalues), read off the Newton polygon of the characteristic polynomial.
inline std::vector<RootValuation> eigenvalue_valuations(const RationalMatrix& d, const Prime& p) {
    return newton_polygon(char_poly(d), p).root_valuations();
}

enum class SpectrumClass { Contractive, Unitary, Expansive, Mixed };

inline std::string_view to_string(SpectrumClass c) {
    switch (c) {
        case SpectrumClass::Contractive: return "CONTRACTIVE";
        case SpectrumClass::Unitary: return "UNITARY";
        case SpectrumClass::Expansive: return "EXPANSIVE";
        case SpectrumClass::Mixed: return "MIXED";
    }
    return "?";
}

inline SpectrumClass classify_spectrum(const std::vector<RootValuation>& valuations) {
    if (valuations.empty()) throw Error("classify_spectrum needs at least one valuation");
    const RootValuation zero(Rational{});
    bool any_zero = false, any_positive = false;
    for (const auto& v : valuations) {
        if (v < zero) return SpectrumClass::Expansive;
        (v == zero ? any_zero : any_positive) = true;
    }
    if (!any_zero) return SpectrumClass::Contractive;
    return any_positive ? SpectrumClass::Mixed : SpectrumClass::Unitary;
}

struct UnityOrder {
    unsigned long order;
    /// D^order = I, which forces every linear orbit to repeat with period
    /// dividing `order`.
    bool certified;
    friend bool operator==(const UnityOrder&, const UnityOrder&) = default;
};

/// Smallest m <= max_order such that every eigenvalue of D satisfies
/// lambda^m = 1, i.e. the squarefree part of the characteristic polynomial
/// divides t^m - 1.
inline std::optional<UnityOrder> roots_of_unity_order(const RationalMatrix& d, unsigned long max_order = 64) {
    const RationalPolynomial g = squarefree_part(char_poly(d));
    const RationalPolynomial one{1};
    const RationalPolynomial t = RationalPolynomial::monomial(1);
    RationalPolynomial power{1};  // t^m mod g
    for (unsigned long m = 1; m <= max_order; ++m) {
        power = divmod(power * t, g).remainder;
        if (power == one) return UnityOrder{m, mat_pow(d, m) == RationalMatrix::identity(d.size())};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Behavior predictions.

enum class Claim {
    Terminates,       ///< norms tend to 0 (zero vector or vanishing norms)
    NonNull,          ///< never reaches the zero vector from a nonzero seed
    NonNullPeriodic,  ///< NonNull, and eventually periodic with period dividing `period_divisor`
    UnboundedGrowth,  ///< max componentwise norm is unbounded
    ShortCycle,       ///< preperiod <= 1 and period in {1, 2} (or reaches zero by step 1)
    Indeterminate,    ///< no claim is made for this spectrum
    Unspecified,      ///< no claim is made for this iteration mode
};

struct Prediction {
    Claim claim = Claim::Indeterminate;
    std::optional<unsigned long> period_divisor;
    /// Hypothesis the claim rests on.
    std::string clause;

    std::string text() const {
        switch (claim) {
            case Claim::Terminates: return "terminates";
            case Claim::NonNull: return "non-null";
            case Claim::NonNullPeriodic: return "non-null, periodic, period | " + std::to_string(*period_divisor);
            case Claim::UnboundedGrowth: return "norm growth unbounded";
            case Claim::ShortCycle: return "eventually periodic, preperiod <= 1, period in {1,2}";
            case Claim::Indeterminate: return "indeterminate";
            case Claim::Unspecified: return "unspecified";
        }
        return "?";
    }

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct SpectralReport {
    NewtonPolygon polygon;
    std::vector<RootValuation> valuations;
    SpectrumClass spectrum = SpectrumClass::Mixed;
    std::optional<UnityOrder> unity;
    bool matrix_p_integral = false;
    /// Claim for the linear iteration, derived from the spectrum.
    Prediction linear;
    /// Claim for the norm iteration; only the diagonal law is asserted.
    Prediction norm;
};

inline Prediction predict_linear(SpectrumClass cls, const std::optional<UnityOrder>& unity) {
    switch (cls) {
        case SpectrumClass::Contractive:
            return {Claim::Terminates, std::nullopt, "contractive-spectrum"};
        case SpectrumClass::Unitary:
            if (unity && unity->certified)
                return {Claim::NonNullPeriodic, unity->order, "unit-spectrum-roots-of-unity"};
            return {Claim::NonNull, std::nullopt, "unit-spectrum"};
        case SpectrumClass::Expansive:
            return {Claim::UnboundedGrowth, std::nullopt, "expansive-spectrum"};
        case SpectrumClass::Mixed:
            break;
    }
    return {Claim::Indeterminate, std::nullopt, "none"};
}

/// Under the norm iteration a diagonal D gives v_{k+1} = -(v(lambda_i) + v_k)
/// per component, an involution: states repeat from step 1 with period 1 or 2.
inline Prediction predict_norm(const RationalMatrix& d) {
    if (d.is_diagonal()) return {Claim::ShortCycle, std::nullopt, "diagonal-valuation-involution"};
    return {Claim::Unspecified, std::nullopt, "none"};
}

inline SpectralReport predict_behavior(const RationalMatrix& d, const Prime& p, unsigned long max_order = 64) {
    SpectralReport r;
    r.polygon = newton_polygon(char_poly(d), p);
    r.valuations = r.polygon.root_valuations();
    r.spectrum = classify_spectrum(r.valuations);
    if (r.spectrum == SpectrumClass::Unitary) r.unity = roots_of_unity_order(d, max_order);
    r.matrix_p_integral =
        std::all_of(d.entries().begin(), d.entries().end(), [&](const Rational& x) { return is_p_integer(x, p); });
    r.linear = predict_linear(r.spectrum, r.unity);
    r.norm = predict_norm(d);
    return r;
}

}  // namespace padic_ducci
