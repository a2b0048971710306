#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace pd = padic_ducci;
using pd::testing::q;

namespace {

std::vector<pd::RootValuation> vals(std::initializer_list<const char*> v) {
    std::vector<pd::RootValuation> out;
    for (const char* s : v) out.push_back(std::string_view(s) == "inf" ? pd::RootValuation::infinity()
                                                                        : pd::RootValuation(q(s)));
    return out;
}

const pd::RationalMatrix kHalf{{q("1/2"), 0}, {0, q("1/2")}};

}  // namespace

TEST(NewtonPolygon, Examples) {
    const auto lin = pd::newton_polygon(pd::RationalPolynomial{-3, 1}, pd::Prime(3));
    ASSERT_EQ(lin.segments.size(), 1u);
    EXPECT_EQ(lin.segments[0], (pd::PolygonSegment{-1, 1}));
    EXPECT_EQ(lin.root_valuations(), vals({"1"}));

    const auto half = pd::newton_polygon(pd::RationalPolynomial{q("1/4"), -1, 1}, pd::Prime(2));
    ASSERT_EQ(half.segments.size(), 1u);
    EXPECT_EQ(half.segments[0], (pd::PolygonSegment{1, 2}));
    EXPECT_EQ(half.root_valuations(), vals({"-1", "-1"}));

    const auto unit = pd::newton_polygon(pd::RationalPolynomial{-1, 0, 0, 0, 1}, pd::Prime(5));
    ASSERT_EQ(unit.segments.size(), 1u);
    EXPECT_EQ(unit.segments[0], (pd::PolygonSegment{0, 4}));
}

TEST(NewtonPolygon, FractionalSlopesAndZeroRoots) {
    // t^2 - 2: both roots have 2-adic valuation 1/2.
    EXPECT_EQ(pd::newton_polygon(pd::RationalPolynomial{-2, 0, 1}, pd::Prime(2)).root_valuations(),
              vals({"1/2", "1/2"}));
    // t^3 (t - 5): three zero roots and one root of valuation 1.
    const auto p = pd::newton_polygon(pd::RationalPolynomial{0, 0, 0, -5, 1}, pd::Prime(5));
    EXPECT_EQ(p.zero_roots, 3u);
    EXPECT_EQ(p.root_valuations(), vals({"1", "inf", "inf", "inf"}));
    // (t - 1)(t - 3)(t - 9) over p = 3: one root of each valuation 0, 1, 2.
    const auto f = pd::RationalPolynomial{-1, 1} * pd::RationalPolynomial{-3, 1} * pd::RationalPolynomial{-9, 1};
    const auto poly = pd::newton_polygon(f, pd::Prime(3));
    EXPECT_EQ(poly.segments.size(), 3u);
    EXPECT_EQ(poly.root_valuations(), vals({"0", "1", "2"}));
}

TEST(NewtonPolygon, RejectsNonMonic) {
    EXPECT_THROW(pd::newton_polygon(pd::RationalPolynomial{1, 2}, pd::Prime(2)), pd::Error);
}

TEST(EigenvalueValuations, Examples) {
    EXPECT_EQ(pd::eigenvalue_valuations(kHalf, pd::Prime(2)), vals({"-1", "-1"}));
    EXPECT_EQ(pd::eigenvalue_valuations(pd::RationalMatrix::identity(3), pd::Prime(7)), vals({"0", "0", "0"}));
    EXPECT_EQ(pd::eigenvalue_valuations(pd::RationalMatrix{{3, 0}, {0, 9}}, pd::Prime(3)), vals({"1", "2"}));
}

TEST(ClassifySpectrum, Examples) {
    EXPECT_EQ(pd::classify_spectrum(vals({"1", "2"})), pd::SpectrumClass::Contractive);
    EXPECT_EQ(pd::classify_spectrum(vals({"0", "0", "0", "0"})), pd::SpectrumClass::Unitary);
    EXPECT_EQ(pd::classify_spectrum(vals({"-1", "-1"})), pd::SpectrumClass::Expansive);
    EXPECT_EQ(pd::classify_spectrum(vals({"0", "1"})), pd::SpectrumClass::Mixed);
    EXPECT_EQ(pd::classify_spectrum(vals({"0", "inf"})), pd::SpectrumClass::Mixed);
    EXPECT_EQ(pd::classify_spectrum(vals({"inf", "inf"})), pd::SpectrumClass::Contractive);
    EXPECT_EQ(pd::classify_spectrum(vals({"5", "-1/2"})), pd::SpectrumClass::Expansive);
    EXPECT_THROW(pd::classify_spectrum({}), pd::Error);
}

TEST(RootsOfUnityOrder, Examples) {
    EXPECT_EQ(pd::roots_of_unity_order(pd::RationalMatrix::identity(3)), (pd::UnityOrder{1, true}));
    EXPECT_EQ(pd::roots_of_unity_order(pd::testing::cyclic_shift(4)), (pd::UnityOrder{4, true}));
    EXPECT_EQ(pd::roots_of_unity_order(kHalf), std::nullopt);
    EXPECT_EQ(pd::roots_of_unity_order(pd::RationalMatrix{{-1}}), (pd::UnityOrder{2, true}));
    // Unipotent Jordan block: eigenvalue 1 but no power is the identity.
    EXPECT_EQ(pd::roots_of_unity_order(pd::RationalMatrix{{1, 1}, {0, 1}}), (pd::UnityOrder{1, false}));
    // Order 6 rotation needs max_order >= 6.
    EXPECT_EQ(pd::roots_of_unity_order(pd::RationalMatrix{{1, -1}, {1, 0}}, 5), std::nullopt);
    EXPECT_EQ(pd::roots_of_unity_order(pd::RationalMatrix{{1, -1}, {1, 0}}), (pd::UnityOrder{6, true}));
}

TEST(PredictBehavior, Examples) {
    const auto contractive = pd::predict_behavior(pd::RationalMatrix{{9, 0}, {0, 3}}, pd::Prime(3));
    EXPECT_EQ(contractive.spectrum, pd::SpectrumClass::Contractive);
    EXPECT_EQ(contractive.linear.claim, pd::Claim::Terminates);
    EXPECT_EQ(contractive.linear.text(), "terminates");
    EXPECT_EQ(contractive.norm.claim, pd::Claim::ShortCycle);

    const auto shift = pd::predict_behavior(pd::testing::cyclic_shift(4), pd::Prime(5));
    EXPECT_EQ(shift.spectrum, pd::SpectrumClass::Unitary);
    EXPECT_EQ(shift.linear.claim, pd::Claim::NonNullPeriodic);
    EXPECT_EQ(shift.linear.period_divisor, 4ul);
    EXPECT_EQ(shift.linear.text(), "non-null, periodic, period | 4");
    EXPECT_TRUE(shift.matrix_p_integral);
    EXPECT_EQ(shift.norm.claim, pd::Claim::Unspecified);

    const auto half = pd::predict_behavior(kHalf, pd::Prime(2));
    EXPECT_EQ(half.spectrum, pd::SpectrumClass::Expansive);
    EXPECT_EQ(half.linear.text(), "norm growth unbounded");
    EXPECT_FALSE(half.matrix_p_integral);

    const auto mixed = pd::predict_behavior(pd::RationalMatrix{{1, 0}, {0, 2}}, pd::Prime(2));
    EXPECT_EQ(mixed.spectrum, pd::SpectrumClass::Mixed);
    EXPECT_EQ(mixed.linear.claim, pd::Claim::Indeterminate);

    const auto jordan = pd::predict_behavior(pd::RationalMatrix{{1, 1}, {0, 1}}, pd::Prime(3));
    EXPECT_EQ(jordan.linear.claim, pd::Claim::NonNull);
}

TEST(SpectralProperties, TriangularOracleAndPolygonShape) {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 600; ++trial) {
        const pd::Prime p(std::array<long, 3>{2, 3, 5}[trial % 3]);
        const std::size_t n = 1 + trial % 6;
        pd::RationalMatrix a(n);
        std::vector<pd::RootValuation> expected;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) a(i, j) = pd::testing::random_scaled(rng, 7, p, 3);
            const long v = pd::testing::brute_vp(a(i, i), p.value());
            expected.push_back(a(i, i).is_zero() ? pd::RootValuation::infinity() : pd::RootValuation(v));
        }
        std::sort(expected.begin(), expected.end());
        const auto poly = pd::newton_polygon(pd::char_poly(a), p);
        EXPECT_EQ(poly.degree(), n);
        for (std::size_t s = 1; s < poly.segments.size(); ++s)
            EXPECT_LT(poly.segments[s - 1].slope, poly.segments[s].slope);
        EXPECT_EQ(pd::eigenvalue_valuations(a, p), expected);
    }
}

TEST(SpectralProperties, DeterminantConsistency) {
    std::mt19937_64 rng(405);
    int nonsingular = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const pd::Prime p(std::array<long, 3>{2, 3, 5}[trial % 3]);
        const std::size_t n = 1 + trial % 5;
        pd::RationalMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = pd::testing::random_scaled(rng, 6, p, 2);
        const pd::Rational det = pd::determinant(a);
        if (det.is_zero()) continue;
        ++nonsingular;
        pd::Rational sum;
        for (const auto& v : pd::eigenvalue_valuations(a, p)) {
            ASSERT_TRUE(v.is_finite());
            sum += v.value();
        }
        EXPECT_EQ(sum, pd::Rational(pd::testing::brute_vp(det, p.value())));
    }
    EXPECT_GT(nonsingular, 200);
}

TEST(SpectralProperties, CorollaryReadingMatchesContractive) {
    // "All eigenvalue norms lie in {p^-1, p^-2, ...}" (zero allowed) iff CONTRACTIVE.
    std::mt19937_64 rng(406);
    for (int trial = 0; trial < 300; ++trial) {
        const pd::Prime p(std::array<long, 3>{2, 3, 5}[trial % 3]);
        const std::size_t n = 1 + trial % 4;
        std::vector<pd::Rational> diag(n);
        for (auto& d : diag) d = pd::testing::random_scaled(rng, 5, p, 2);
        const auto v = pd::eigenvalue_valuations(pd::RationalMatrix::diagonal(diag), p);
        const bool norms_below_one = std::all_of(diag.begin(), diag.end(), [&](const pd::Rational& d) {
            return pd::padic_abs(d, p) < pd::Rational(1);
        });
        EXPECT_EQ(norms_below_one, pd::classify_spectrum(v) == pd::SpectrumClass::Contractive);
    }
}

TEST(SpectralProperties, UnityOrderImpliesUnitary) {
    std::mt19937_64 rng(407);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 4;
        pd::RationalMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng() % 3) - 1;
        const auto unity = pd::roots_of_unity_order(a, 24);
        if (!unity) continue;
        for (long pv : {2, 3, 5, 7})
            EXPECT_EQ(pd::classify_spectrum(pd::eigenvalue_valuations(a, pd::Prime(pv))), pd::SpectrumClass::Unitary);
        if (unity->certified) EXPECT_EQ(pd::mat_pow(a, unity->order), pd::RationalMatrix::identity(n));
    }
}

TEST(SpectralProperties, PredictionSoundnessOnLinearOrbits) {
    std::mt19937_64 rng(408);
    for (int trial = 0; trial < 90; ++trial) {
        const pd::Prime p(std::array<long, 3>{2, 3, 5}[trial % 3]);
        const std::size_t n = 1 + trial % 3;
        pd::RationalVector seed(n);
        while (pd::is_zero_vector(seed))
            for (auto& v : seed) v = pd::testing::random_rational(rng, 6);

        // Expansive diagonal: every entry has negative valuation.
        std::vector<pd::Rational> diag(n);
        for (auto& d : diag) d = pd::testing::random_rational(rng, 5, true) / pd::pow(p.as_rational(), 3);
        for (auto& d : diag)
            while (pd::vp(d, p) >= pd::Valuation(0)) d /= p.as_rational();
        const auto expansive = pd::RationalMatrix::diagonal(diag);
        ASSERT_EQ(pd::predict_behavior(expansive, p).spectrum, pd::SpectrumClass::Expansive);
        const auto r = pd::run_orbit(pd::DucciInstance(p, expansive, seed, pd::IterationMode::Linear));
        EXPECT_TRUE(std::holds_alternative<pd::outcome::NormDiverged>(r.outcome));
    }
}
