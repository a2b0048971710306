#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "padic_ducci/ducci.hpp"
#include "padic_ducci/error.hpp"
#include "padic_ducci/harness.hpp"
#include "padic_ducci/spectral.hpp"

namespace padic_ducci::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars.

inline Json to_json(const Rational& r) { return r.str(); }

/// Integer, or "inf".
inline Json to_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

/// Rational string, or "inf".
inline Json to_json(const RootValuation& v) { return v.str(); }

inline Json to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline Json to_json(const RationalPolynomial& f) { return to_json(f.coefficients()); }

namespace detail {

template <class J>
const J& field(const J& obj, const std::string& name) {
    if (!obj.is_object()) throw InputError("<root>", "expected a JSON object");
    const auto it = obj.find(name);
    if (it == obj.end()) throw InputError(name, "missing field");
    return *it;
}

template <class J>
Rational rational_field(const J& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(Integer(j.template get<long>()));
    if (!j.is_string()) throw InputError(where, "expected a rational string");
    try {
        return Rational::parse(j.template get<std::string>());
    } catch (const ParseError& e) {
        throw InputError(where, e.what());
    }
}

template <class J>
long long integer_field(const J& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where, "expected an integer");
    return j.template get<long long>();
}

template <class J>
std::size_t count_field(const J& j, const std::string& where) {
    const long long v = integer_field(j, where);
    if (v <= 0) throw InputError(where, "must be positive");
    return static_cast<std::size_t>(v);
}

}  // namespace detail

template <class J>
Prime prime_from_json(const J& j, const std::string& where = "p") {
    try {
        return Prime(detail::integer_field(j, where));
    } catch (const InvalidPrime& e) {
        throw InputError(where, e.what());
    }
}

template <class J>
RationalMatrix matrix_from_json(const J& j, const std::string& where = "matrix") {
    if (!j.is_array() || j.empty()) throw InputError(where, "expected a nonempty array of rows");
    const std::size_t n = j.size();
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_name = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array()) throw InputError(row_name, "expected an array");
        if (j[i].size() != n)
            throw InputError(row_name, "dimension mismatch (matrix must be square, row has length " +
                                           std::to_string(j[i].size()) + ", expected " + std::to_string(n) + ")");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = detail::rational_field(j[i][k], row_name + "[" + std::to_string(k) + "]");
    }
    return m;
}

template <class J>
RationalVector vector_from_json(const J& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    RationalVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(detail::rational_field(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

// ---------------------------------------------------------------------------
// Instances.

inline Json to_json(const DucciInstance& inst) {
    Json j;
    j["p"] = inst.p.value();
    j["mode"] = std::string(to_string(inst.mode));
    j["matrix"] = to_json(inst.matrix);
    j["seed"] = to_json(inst.seed);
    return j;
}

/// Validates prime, shape and every rational; errors name the offending field.
template <class J>
DucciInstance instance_from_json(const J& j) {
    using detail::field;
    const Prime p = prime_from_json(field(j, "p"));
    const auto& mode_json = field(j, "mode");
    if (!mode_json.is_string()) throw InputError("mode", "expected \"norm\" or \"linear\"");
    IterationMode mode;
    try {
        mode = parse_mode(mode_json.template get<std::string>());
    } catch (const ParseError& e) {
        throw InputError("mode", e.what());
    }
    RationalMatrix m = matrix_from_json(field(j, "matrix"));
    RationalVector seed = vector_from_json(field(j, "seed"), "seed");
    if (seed.size() != m.size())
        throw InputError("seed", "dimension mismatch (matrix is " + std::to_string(m.size()) + "x" +
                                     std::to_string(m.size()) + ", seed has length " + std::to_string(seed.size()) +
                                     ")");
    return DucciInstance(p, std::move(m), std::move(seed), mode);
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path.string(), std::string("invalid JSON: ") + e.what());
    }
}

inline DucciInstance parse_instance_file(const std::filesystem::path& path) {
    return instance_from_json(read_json_file(path));
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const OrbitOutcome& o) {
    Json j;
    j["kind"] = std::string(outcome_name(o));
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, outcome::Cycle>) {
                j["preperiod"] = v.preperiod;
                j["period"] = v.period;
            } else if constexpr (std::is_same_v<T, outcome::Unresolved>) {
                j["steps_run"] = v.steps_run;
            } else {
                j["step"] = v.step;
            }
        },
        o);
    return j;
}

inline Json to_json(const OrbitReport& r) {
    Json j;
    j["outcome"] = to_json(r.outcome);
    if (const auto* c = std::get_if<outcome::Cycle>(&r.outcome)) {
        j["preperiod"] = c->preperiod;
        j["period"] = c->period;
    }
    j["steps"] = r.steps;
    j["states_visited"] = r.states_visited;
    Json trace = Json::array();
    for (const auto& range : r.valuation_trace) trace.push_back(Json::array({to_json(range.min), to_json(range.max)}));
    j["valuation_trace"] = std::move(trace);
    return j;
}

inline Json to_json(const Prediction& p) {
    Json j;
    j["claim"] = p.text();
    j["paper_clause"] = p.clause;
    if (p.period_divisor) j["period_divisor"] = *p.period_divisor;
    return j;
}

inline Json to_json(const NewtonPolygon& poly) {
    Json segs = Json::array();
    for (const auto& s : poly.segments) {
        Json seg;
        seg["slope"] = s.slope.str();
        seg["length"] = s.length;
        segs.push_back(std::move(seg));
    }
    Json j;
    j["segments"] = std::move(segs);
    j["zero_roots"] = poly.zero_roots;
    return j;
}

inline Json to_json(const SpectralReport& r) {
    Json j;
    Json vals = Json::array();
    for (const auto& v : r.valuations) vals.push_back(to_json(v));
    j["valuations"] = std::move(vals);
    j["class"] = std::string(to_string(r.spectrum));
    if (r.unity) j["unity_order"] = r.unity->order;
    j["certified"] = r.unity.has_value() && r.unity->certified;
    j["prediction"] = to_json(r.linear);
    j["norm_mode_prediction"] = to_json(r.norm);
    j["polygon"] = to_json(r.polygon);
    j["matrix_p_integral"] = r.matrix_p_integral;
    return j;
}

inline Json to_json(const DiscrepancyRecord& rec) {
    Json j;
    j["instance_id"] = rec.instance_id;
    if (rec.profile) j["profile"] = *rec.profile;
    if (rec.instance) {
        j["mode"] = std::string(to_string(rec.instance->mode));
        j["instance"] = to_json(*rec.instance);
    }
    if (rec.spectrum) j["class"] = std::string(to_string(*rec.spectrum));
    j["prediction"] = to_json(rec.prediction);
    j["observed"] = to_json(rec.observed);
    j["verdict"] = std::string(to_string(rec.verdict));
    return j;
}

// ---------------------------------------------------------------------------
// Sweep configuration and report files.

template <class J>
OrbitLimits limits_from_json(const J& j) {
    OrbitLimits l;
    if (!j.is_object()) throw InputError("limits", "expected an object");
    if (j.contains("max_steps")) l.max_steps = detail::count_field(j["max_steps"], "limits.max_steps");
    if (j.contains("max_stored_states"))
        l.max_stored_states = detail::count_field(j["max_stored_states"], "limits.max_stored_states");
    if (j.contains("divergence_threshold")) {
        l.divergence_threshold = detail::rational_field(j["divergence_threshold"], "limits.divergence_threshold");
        if (l.divergence_threshold->sign() <= 0) throw InputError("limits.divergence_threshold", "must be positive");
    }
    return l;
}

template <class J>
SweepConfig sweep_config_from_json(const J& j) {
    using detail::field;
    SweepConfig c;
    const auto& profiles = field(j, "profiles");
    if (!profiles.is_array()) throw InputError("profiles", "expected an array");
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const std::string where = "profiles[" + std::to_string(i) + "]";
        const auto& pj = profiles[i];
        if (!pj.is_object()) throw InputError(where, "expected an object");
        GeneratorProfile prof;
        if (!pj.contains("kind") || !pj["kind"].is_string()) throw InputError(where + ".kind", "missing profile kind");
        try {
            prof.kind = parse_profile_kind(pj["kind"].template get<std::string>());
        } catch (const ParseError& e) {
            throw InputError(where + ".kind", e.what());
        }
        if (!pj.contains("n")) throw InputError(where + ".n", "missing field");
        prof.n = detail::count_field(pj["n"], where + ".n");
        if (!pj.contains("p")) throw InputError(where + ".p", "missing field");
        prof.p = prime_from_json(pj["p"], where + ".p");
        if (pj.contains("value_bound"))
            prof.value_bound = static_cast<long>(detail::count_field(pj["value_bound"], where + ".value_bound"));
        c.profiles.push_back(prof);
    }
    c.instances_per_profile = detail::count_field(field(j, "instances_per_profile"), "instances_per_profile");
    if (j.contains("modes")) {
        const auto& mj = j["modes"];
        if (!mj.is_array()) throw InputError("modes", "expected an array");
        c.modes.clear();
        for (const auto& m : mj) {
            if (!m.is_string()) throw InputError("modes", "expected \"norm\" or \"linear\"");
            try {
                c.modes.push_back(parse_mode(m.template get<std::string>()));
            } catch (const ParseError& e) {
                throw InputError("modes", e.what());
            }
        }
    }
    if (j.contains("limits")) c.limits = limits_from_json(j["limits"]);
    if (j.contains("rng_seed")) {
        const auto& s = j["rng_seed"];
        if (!s.is_number_integer()) throw InputError("rng_seed", "expected an integer");
        c.rng_seed = s.is_number_unsigned() ? s.template get<std::uint64_t>()
                                            : static_cast<std::uint64_t>(s.template get<std::int64_t>());
    }
    if (j.contains("max_order"))
        c.max_order = static_cast<unsigned long>(detail::count_field(j["max_order"], "max_order"));
    if (j.contains("workers")) c.workers = static_cast<unsigned>(detail::count_field(j["workers"], "workers"));
    return c;
}

/// One compact JSON object per line.
inline std::string records_jsonl(const SweepResult& r) {
    std::string out;
    for (const auto& rec : r.records) {
        out += to_json(rec).dump();
        out += '\n';
    }
    return out;
}

inline std::string summary_csv(const SweepResult& r) {
    std::string out = "profile,mode,confirmed,refuted,unresolved\n";
    for (const auto& row : r.summary)
        out += row.profile + "," + std::string(to_string(row.mode)) + "," + std::to_string(row.confirmed) + "," +
               std::to_string(row.refuted) + "," + std::to_string(row.unresolved) + "\n";
    return out;
}

/// Writes records.jsonl and summary.csv into `dir`, creating it if needed.
inline void write_sweep_report(const std::filesystem::path& dir, const SweepResult& r) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_text_file(dir / "records.jsonl", records_jsonl(r));
    write_text_file(dir / "summary.csv", summary_csv(r));
}

}  // namespace padic_ducci::io
