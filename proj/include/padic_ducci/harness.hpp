#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "padic_ducci/ducci.hpp"
#include "padic_ducci/error.hpp"
#include "padic_ducci/spectral.hpp"

namespace padic_ducci {

// ---------------------------------------------------------------------------
// Counter-based generator: each (seed, profile, instance) triple owns an
// independent stream, so generation order does not matter.

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t profile, std::uint64_t instance)
        : key_(mix(mix(mix(seed) ^ (profile + 0x632be59bd9b4e019ull)) ^ (instance + 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw Error("empty range");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    long between(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Instance generation.

enum class ProfileKind { ContractiveEntries, UnitTriangular, Permutation, DiagonalRandom, ExpansiveDiagonal, DenseRandom };

inline std::string_view to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::ContractiveEntries: return "CONTRACTIVE_ENTRIES";
        case ProfileKind::UnitTriangular: return "UNIT_TRIANGULAR";
        case ProfileKind::Permutation: return "PERMUTATION";
        case ProfileKind::DiagonalRandom: return "DIAGONAL_RANDOM";
        case ProfileKind::ExpansiveDiagonal: return "EXPANSIVE_DIAGONAL";
        case ProfileKind::DenseRandom: return "DENSE_RANDOM";
    }
    return "?";
}

inline ProfileKind parse_profile_kind(std::string_view s) {
    for (auto k : {ProfileKind::ContractiveEntries, ProfileKind::UnitTriangular, ProfileKind::Permutation,
                   ProfileKind::DiagonalRandom, ProfileKind::ExpansiveDiagonal, ProfileKind::DenseRandom})
        if (to_string(k) == s) return k;
    throw ParseError("unknown profile kind \"" + std::string(s) + "\"");
}

struct GeneratorProfile {
    ProfileKind kind = ProfileKind::DenseRandom;
    std::size_t n = 2;
    Prime p{2};
    /// Bound on numerators, denominators and p-exponents.
    long value_bound = 10;

    std::string label() const {
        return std::string(to_string(kind)) + "/n=" + std::to_string(n) + "/p=" + std::to_string(p.value()) +
               "/b=" + std::to_string(value_bound);
    }

    void validate() const {
        if (n == 0) throw Error("profile dimension must be positive");
        if (value_bound < 1) throw Error("value_bound must be positive");
    }
};

namespace detail {

/// Numerator uniform in [-B, B], denominator in [1, B].
inline Rational random_rational(CounterRng& rng, long bound) {
    const long num = rng.between(-bound, bound);
    const long den = rng.between(1, bound);
    return Rational(Integer(num), Integer(den));
}

inline Integer strip_p(Integer n, const Prime& p) {
    mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.as_integer().get_mpz_t());
    return n;
}

/// Nonzero rational with valuation exactly 0.
inline Rational random_unit(CounterRng& rng, long bound, const Prime& p) {
    long num = 0;
    while (num == 0) num = rng.between(-bound, bound);
    const long den = rng.between(1, bound);
    return Rational(strip_p(Integer(num), p), strip_p(Integer(den), p));
}

inline Rational p_power(const Prime& p, long e) { return pow(p.as_rational(), e); }

}  // namespace detail

inline bool satisfies_profile(const GeneratorProfile& profile, const DucciInstance& inst) {
    const auto& d = inst.matrix;
    const std::size_t n = d.size();
    if (n != profile.n || !(inst.p == profile.p) || is_zero_vector(inst.seed)) return false;
    const Valuation zero(0), one(1);
    switch (profile.kind) {
        case ProfileKind::ContractiveEntries:
            return std::all_of(d.entries().begin(), d.entries().end(),
                               [&](const Rational& x) { return vp(x, inst.p) >= one; });
        case ProfileKind::UnitTriangular:
            if (!d.is_upper_triangular()) return false;
            for (std::size_t i = 0; i < n; ++i)
                if (vp(d(i, i), inst.p) != zero) return false;
            return true;
        case ProfileKind::Permutation:
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t row_ones = 0, col_ones = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    for (const Rational* x : {&d(i, j), &d(j, i)})
                        if (!x->is_zero() && *x != Rational(1)) return false;
                    row_ones += d(i, j) == Rational(1);
                    col_ones += d(j, i) == Rational(1);
                }
                if (row_ones != 1 || col_ones != 1) return false;
            }
            return true;
        case ProfileKind::DiagonalRandom:
        case ProfileKind::ExpansiveDiagonal:
            if (!d.is_diagonal()) return false;
            for (std::size_t i = 0; i < n; ++i) {
                if (d(i, i).is_zero()) return false;
                if (profile.kind == ProfileKind::ExpansiveDiagonal && vp(d(i, i), inst.p) >= zero) return false;
            }
            return true;
        case ProfileKind::DenseRandom:
            return true;
    }
    return false;
}

/// Draws one instance for `profile`; the result is a pure function of `rng`'s
/// key. The seed vector is always nonzero.
inline DucciInstance gen_instance(const GeneratorProfile& profile, CounterRng& rng,
                                  IterationMode mode = IterationMode::Linear) {
    profile.validate();
    const std::size_t n = profile.n;
    const long b = profile.value_bound;
    const Prime& p = profile.p;
    RationalMatrix d(n);
    switch (profile.kind) {
        case ProfileKind::ContractiveEntries:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const Rational r = detail::random_rational(rng, b);
                    d(i, j) = Rational(r.numerator() * p.as_integer(), detail::strip_p(r.denominator(), p));
                }
            break;
        case ProfileKind::UnitTriangular:
            for (std::size_t i = 0; i < n; ++i) {
                d(i, i) = detail::random_unit(rng, b, p);
                for (std::size_t j = i + 1; j < n; ++j) d(i, j) = detail::random_rational(rng, b);
            }
            break;
        case ProfileKind::Permutation: {
            std::vector<std::size_t> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[i] = i;
            for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
            for (std::size_t i = 0; i < n; ++i) d(i, perm[i]) = 1;
            break;
        }
        case ProfileKind::DiagonalRandom:
            for (std::size_t i = 0; i < n; ++i)
                d(i, i) = detail::random_unit(rng, b, p) * detail::p_power(p, rng.between(-b, b));
            break;
        case ProfileKind::ExpansiveDiagonal:
            for (std::size_t i = 0; i < n; ++i)
                d(i, i) = detail::random_unit(rng, b, p) * detail::p_power(p, rng.between(-b, -1));
            break;
        case ProfileKind::DenseRandom:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) d(i, j) = detail::random_rational(rng, b);
            break;
    }
    RationalVector seed(n);
    while (is_zero_vector(seed))
        for (auto& x : seed) x = detail::random_rational(rng, b);
    DucciInstance inst(p, std::move(d), std::move(seed), mode);
    if (!satisfies_profile(profile, inst))
        throw Error("generated instance violates profile " + profile.label());
    return inst;
}

// ---------------------------------------------------------------------------
// Prediction vs observation.

enum class Verdict { Confirmed, Refuted, Unresolved };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Confirmed: return "CONFIRMED";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::Unresolved: return "UNRESOLVED";
    }
    return "?";
}

/// REFUTED only when the observation logically contradicts the claim;
/// budget exhaustion is always UNRESOLVED. A zero seed (termination at step 0)
/// falls outside every claim's hypothesis.
inline Verdict judge(const Prediction& pred, const OrbitReport& report) {
    using namespace outcome;
    const auto& o = report.outcome;
    if (std::holds_alternative<Unresolved>(o)) return Verdict::Unresolved;
    const auto* term = std::get_if<Terminated>(&o);
    const auto* cycle = std::get_if<Cycle>(&o);
    switch (pred.claim) {
        case Claim::Terminates:
            if (term || std::holds_alternative<NormVanished>(o)) return Verdict::Confirmed;
            if (cycle) return Verdict::Refuted;
            return Verdict::Unresolved;
        case Claim::NonNull:
            if (term) return term->step == 0 ? Verdict::Unresolved : Verdict::Refuted;
            if (cycle) return Verdict::Confirmed;
            return Verdict::Unresolved;
        case Claim::NonNullPeriodic:
            if (term) return term->step == 0 ? Verdict::Unresolved : Verdict::Refuted;
            if (cycle) return *pred.period_divisor % cycle->period == 0 ? Verdict::Confirmed : Verdict::Refuted;
            return Verdict::Unresolved;
        case Claim::UnboundedGrowth:
            if (std::holds_alternative<NormDiverged>(o)) return Verdict::Confirmed;
            if (term) return term->step == 0 ? Verdict::Unresolved : Verdict::Refuted;
            if (cycle) return Verdict::Refuted;
            return Verdict::Unresolved;
        case Claim::ShortCycle:
            if (term) return term->step <= 1 ? Verdict::Confirmed : Verdict::Refuted;
            if (cycle)
                return cycle->preperiod <= 1 && cycle->period <= 2 ? Verdict::Confirmed : Verdict::Refuted;
            return Verdict::Unresolved;
        case Claim::Indeterminate:
        case Claim::Unspecified:
            return Verdict::Unresolved;
    }
    return Verdict::Unresolved;
}

template <class T>
struct Labeled {
    std::string id;
    T value;
};

struct DiscrepancyRecord {
    std::string instance_id;
    Prediction prediction;
    OrbitReport observed;
    Verdict verdict = Verdict::Unresolved;
    /// Context filled in by sweeps.
    std::optional<DucciInstance> instance;
    std::optional<SpectrumClass> spectrum;
    std::optional<std::string> profile;
};

inline DiscrepancyRecord compare_prediction(const Labeled<Prediction>& pred, const Labeled<OrbitReport>& report) {
    if (pred.id != report.id)
        throw Error("prediction for '" + pred.id + "' compared with observation of '" + report.id + "'");
    DiscrepancyRecord r;
    r.instance_id = pred.id;
    r.prediction = pred.value;
    r.observed = report.value;
    r.verdict = judge(pred.value, report.value);
    return r;
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepConfig {
    std::vector<GeneratorProfile> profiles;
    std::size_t instances_per_profile = 1;
    std::vector<IterationMode> modes{IterationMode::Linear};
    OrbitLimits limits;
    std::uint64_t rng_seed = 0;
    unsigned long max_order = 64;
    /// Worker threads; does not affect the report.
    unsigned workers = 1;
};

struct SweepSummaryRow {
    std::string profile;
    IterationMode mode;
    std::size_t confirmed = 0;
    std::size_t refuted = 0;
    std::size_t unresolved = 0;
};

struct SweepResult {
    std::vector<DiscrepancyRecord> records;
    std::vector<SweepSummaryRow> summary;
};

inline std::string instance_id(std::size_t profile_index, std::size_t instance_index) {
    return "p" + std::to_string(profile_index) + "-i" + std::to_string(instance_index);
}

/// Evaluates every (profile, instance, mode) triple. The linear-iteration
/// claim derived from the spectrum is checked against both iteration modes.
/// Records are ordered by profile, instance, then mode, whatever the worker count.
inline SweepResult run_sweep(const SweepConfig& config) {
    config.limits.validate();
    for (const auto& prof : config.profiles) prof.validate();
    const std::size_t per = config.instances_per_profile;
    const std::size_t modes = config.modes.size();
    const std::size_t tasks = config.profiles.size() * per;
    std::vector<std::vector<DiscrepancyRecord>> slots(tasks);

    auto evaluate = [&](std::size_t task) {
        const std::size_t pi = task / per, ii = task % per;
        const GeneratorProfile& prof = config.profiles[pi];
        CounterRng rng(config.rng_seed, pi, ii);
        DucciInstance inst = gen_instance(prof, rng);
        const SpectralReport spectral = predict_behavior(inst.matrix, inst.p, config.max_order);
        const std::string id = instance_id(pi, ii);
        for (IterationMode mode : config.modes) {
            inst.mode = mode;
            DiscrepancyRecord rec = compare_prediction({id, spectral.linear}, {id, run_orbit(inst, config.limits)});
            rec.instance = inst;
            rec.spectrum = spectral.spectrum;
            rec.profile = prof.label();
            slots[task].push_back(std::move(rec));
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(tasks)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) evaluate(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t t; (t = next.fetch_add(1)) < tasks;) evaluate(t);
                    } catch (...) {
                        errors[w] = std::current_exception();
                        next = tasks;
                    }
                });
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    SweepResult result;
    result.records.reserve(tasks * modes);
    for (auto& slot : slots)
        for (auto& rec : slot) result.records.push_back(std::move(rec));
    for (std::size_t pi = 0; pi < config.profiles.size(); ++pi)
        for (std::size_t mi = 0; mi < modes; ++mi) {
            SweepSummaryRow row{config.profiles[pi].label(), config.modes[mi]};
            for (std::size_t ii = 0; ii < per; ++ii) {
                switch (result.records[(pi * per + ii) * modes + mi].verdict) {
                    case Verdict::Confirmed: ++row.confirmed; break;
                    case Verdict::Refuted: ++row.refuted; break;
                    case Verdict::Unresolved: ++row.unresolved; break;
                }
            }
            result.summary.push_back(std::move(row));
        }
    return result;
}

}  // namespace padic_ducci
