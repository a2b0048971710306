#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "padic_ducci/error.hpp"
#include "padic_ducci/linalg.hpp"
#include "padic_ducci/padic.hpp"

namespace padic_ducci {

/// NORM_MODE: x -> |D x|_p componentwise. LINEAR_MODE: x -> D x, with the
/// componentwise norms only monitored.
enum class IterationMode { Norm, Linear };

inline std::string_view to_string(IterationMode m) { return m == IterationMode::Norm ? "norm" : "linear"; }

inline IterationMode parse_mode(std::string_view s) {
    if (s == "norm") return IterationMode::Norm;
    if (s == "linear") return IterationMode::Linear;
    throw ParseError("mode must be \"norm\" or \"linear\" (got \"" + std::string(s) + "\")");
}

struct DucciInstance {
    Prime p;
    RationalMatrix matrix;
    RationalVector seed;
    IterationMode mode = IterationMode::Linear;

    DucciInstance(Prime prime, RationalMatrix d, RationalVector x, IterationMode m)
        : p(prime), matrix(std::move(d)), seed(std::move(x)), mode(m) {
        if (matrix.size() == 0) throw DimensionMismatch("matrix must be at least 1x1");
        if (seed.size() != matrix.size())
            throw DimensionMismatch("dimension mismatch: matrix is " + std::to_string(matrix.size()) + "x" +
                                    std::to_string(matrix.size()) + ", seed has length " +
                                    std::to_string(seed.size()));
    }

    std::size_t dimension() const noexcept { return matrix.size(); }

    friend bool operator==(const DucciInstance&, const DucciInstance&) = default;
};

struct OrbitLimits {
    std::size_t max_steps = 10'000;
    std::size_t max_stored_states = 1'000'000;
    /// Max componentwise norm above which the run stops as NormDiverged; the
    /// reciprocal is the matching vanishing bound. Unset means p^50.
    std::optional<Rational> divergence_threshold;

    Rational threshold_for(const Prime& p) const {
        if (divergence_threshold) return *divergence_threshold;
        return pow(p.as_rational(), 50);
    }

    void validate() const {
        if (max_steps == 0) throw Error("max_steps must be positive");
        if (max_stored_states == 0) throw Error("max_stored_states must be positive");
        if (divergence_threshold && divergence_threshold->sign() <= 0)
            throw Error("divergence_threshold must be positive");
    }
};

namespace outcome {
struct Terminated { std::size_t step; friend bool operator==(const Terminated&, const Terminated&) = default; };
struct Cycle { std::size_t preperiod; std::size_t period; friend bool operator==(const Cycle&, const Cycle&) = default; };
struct NormDiverged { std::size_t step; friend bool operator==(const NormDiverged&, const NormDiverged&) = default; };
/// Every componentwise norm fell below 1/threshold.
struct NormVanished { std::size_t step; friend bool operator==(const NormVanished&, const NormVanished&) = default; };
struct Unresolved { std::size_t steps_run; friend bool operator==(const Unresolved&, const Unresolved&) = default; };
}  // namespace outcome

using OrbitOutcome = std::variant<outcome::Terminated, outcome::Cycle, outcome::NormDiverged,
                                  outcome::NormVanished, outcome::Unresolved>;

/// Componentwise min and max valuation of one state.
struct ValuationRange {
    Valuation min;
    Valuation max;
    friend bool operator==(const ValuationRange&, const ValuationRange&) = default;
};

struct OrbitReport {
    OrbitOutcome outcome;
    /// One entry per visited state, seed first.
    std::vector<ValuationRange> valuation_trace;
    std::size_t states_visited = 0;
    /// Number of steps applied before stopping.
    std::size_t steps = 0;

    friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

// ---------------------------------------------------------------------------
// Orbit engine shared by the classical and p-adic maps.

namespace detail {

enum class Probe { Continue, Diverged, Vanished };

/// Iterates `step` from `seed`, checking in order: zero state, exact
/// repetition (first-seen index table keyed by `key`), `probe` bound checks,
/// step and storage budgets. `visit` sees every state in order.
template <class State, class StepFn, class ZeroFn, class KeyFn, class ProbeFn, class VisitFn>
OrbitOutcome walk_orbit(State state, StepFn&& step, ZeroFn&& is_zero, KeyFn&& key, ProbeFn&& probe,
                        VisitFn&& visit, std::size_t max_steps, std::size_t max_stored_states,
                        std::size_t& states_visited) {
    using Key = std::decay_t<decltype(key(state))>;
    std::map<Key, std::size_t> first_seen;
    for (std::size_t k = 0;; ++k) {
        visit(state);
        states_visited = k + 1;
        if (is_zero(state)) return outcome::Terminated{k};
        Key code = key(state);
        if (auto it = first_seen.find(code); it != first_seen.end())
            return outcome::Cycle{it->second, k - it->second};
        switch (probe(state)) {
            case Probe::Diverged: return outcome::NormDiverged{k};
            case Probe::Vanished: return outcome::NormVanished{k};
            case Probe::Continue: break;
        }
        if (k == max_steps || first_seen.size() >= max_stored_states) return outcome::Unresolved{k};
        first_seen.emplace(std::move(code), k);
        state = step(state);
    }
}

inline std::size_t outcome_steps(const OrbitOutcome& o) {
    return std::visit(
        [](const auto& v) -> std::size_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, outcome::Terminated>) return v.step;
            else if constexpr (std::is_same_v<T, outcome::Cycle>) return v.preperiod + v.period;
            else if constexpr (std::is_same_v<T, outcome::Unresolved>) return v.steps_run;
            else return v.step;
        },
        o);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical integer Ducci map on 4-tuples.

using ClassicalState = std::array<std::int64_t, 4>;

/// (x1,x2,x3,x4) -> (|x1-x2|, |x2-x3|, |x3-x4|, |x4-x1|)
inline std::vector<std::int64_t> classical_step(std::span<const std::int64_t> x) {
    if (x.size() != 4) throw DimensionMismatch("classical Ducci map needs exactly 4 entries");
    std::vector<std::int64_t> y(4);
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i] < 0) throw Error("classical Ducci map is defined on nonnegative integers");
        const std::int64_t a = x[i], b = x[(i + 1) % 4];
        y[i] = a > b ? a - b : b - a;
    }
    return y;
}

struct ClassicalOrbit {
    OrbitOutcome outcome;
    /// Visited states, seed first.
    std::vector<ClassicalState> states;
};

inline ClassicalOrbit classical_orbit(const ClassicalState& seed, std::size_t max_steps = 1000) {
    ClassicalOrbit result;
    std::size_t visited = 0;
    result.outcome = detail::walk_orbit(
        seed,
        [](const ClassicalState& s) {
            const auto y = classical_step(s);
            return ClassicalState{y[0], y[1], y[2], y[3]};
        },
        [](const ClassicalState& s) { return s == ClassicalState{}; },
        [](const ClassicalState& s) { return s; },
        [](const ClassicalState&) { return detail::Probe::Continue; },
        [&](const ClassicalState& s) { result.states.push_back(s); }, max_steps, max_steps + 1, visited);
    return result;
}

// ---------------------------------------------------------------------------
// p-adic Ducci operator.

/// |D x|_p componentwise; every output entry is 0 or a power of p.
inline RationalVector norm_step(const DucciInstance& inst, std::span<const Rational> x) {
    RationalVector y = mat_vec_mul(inst.matrix, x);
    for (auto& v : y) v = padic_abs(v, inst.p);
    return y;
}

inline RationalVector linear_step(const DucciInstance& inst, std::span<const Rational> x) {
    return mat_vec_mul(inst.matrix, x);
}

inline RationalVector ducci_step(const DucciInstance& inst, std::span<const Rational> x) {
    return inst.mode == IterationMode::Norm ? norm_step(inst, x) : linear_step(inst, x);
}

inline bool is_zero_vector(std::span<const Rational> x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.is_zero(); });
}

inline ValuationRange valuation_range(std::span<const Rational> x, const Prime& p) {
    ValuationRange r{Valuation::infinity(), Valuation::infinity()};
    bool first = true;
    for (const auto& v : x) {
        const Valuation w = vp(v, p);
        if (first) {
            r = {w, w};
            first = false;
        } else {
            r.min = std::min(r.min, w);
            r.max = std::max(r.max, w);
        }
    }
    return r;
}

/// Canonical text encoding of a state: reduced components joined by ','.
inline std::string encode_state(std::span<const Rational> x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ',';
        s += x[i].str();
    }
    return s;
}

/// Iterates the instance's step function until termination, exact
/// repetition, a norm bound crossing, or budget exhaustion.
inline OrbitReport run_orbit(const DucciInstance& inst, const OrbitLimits& limits = {}) {
    limits.validate();
    const Rational threshold = limits.threshold_for(inst.p);
    const Rational vanish = Rational(1) / threshold;
    OrbitReport report;
    // State ranges are computed once per visit and shared between probe and trace.
    const auto max_norm = [&](const ValuationRange& r) { return pow(inst.p.as_rational(), -r.min.value()); };
    report.outcome = detail::walk_orbit(
        inst.seed, [&](const RationalVector& x) { return ducci_step(inst, x); },
        [](const RationalVector& x) { return is_zero_vector(x); },
        [](const RationalVector& x) { return encode_state(x); },
        [&](const RationalVector&) {
            const Rational norm = max_norm(report.valuation_trace.back());
            if (norm > threshold) return detail::Probe::Diverged;
            if (norm < vanish) return detail::Probe::Vanished;
            return detail::Probe::Continue;
        },
        [&](const RationalVector& x) { report.valuation_trace.push_back(valuation_range(x, inst.p)); },
        limits.max_steps, limits.max_stored_states, report.states_visited);
    report.steps = report.states_visited - 1;
    return report;
}

inline std::string_view outcome_name(const OrbitOutcome& o) {
    static constexpr std::array<std::string_view, 5> names{"terminated", "cycle", "norm_diverged", "norm_vanished",
                                                           "unresolved"};
    return names[o.index()];
}

}  // namespace padic_ducci
