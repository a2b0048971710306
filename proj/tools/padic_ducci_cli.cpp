// padic-ducci: command-line front end for the p-adic Ducci library.
//
// Exit codes: 0 success (including REFUTED verdicts), 1 usage error,
// 2 input validation error, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic_ducci/padic_ducci.hpp"

namespace pd = padic_ducci;
using pd::io::Json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr std::size_t kMaxTraceLines = 1000;

struct OrbitFlags {
    std::optional<std::size_t> max_steps;
    std::optional<std::size_t> max_states;
    std::optional<std::string> threshold;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-steps", max_steps, "Step budget (default 10000)");
        cmd->add_option("--max-states", max_states, "Stored-state budget for cycle detection (default 1000000)");
        cmd->add_option("--threshold", threshold, "Divergence threshold on the max componentwise norm (default p^50)");
    }

    pd::OrbitLimits limits() const {
        pd::OrbitLimits l;
        if (max_steps) {
            if (*max_steps == 0) throw pd::InputError("--max-steps", "must be positive");
            l.max_steps = *max_steps;
        }
        if (max_states) {
            if (*max_states == 0) throw pd::InputError("--max-states", "must be positive");
            l.max_stored_states = *max_states;
        }
        if (threshold) {
            try {
                l.divergence_threshold = pd::Rational::parse(*threshold);
            } catch (const pd::ParseError& e) {
                throw pd::InputError("--threshold", e.what());
            }
            if (l.divergence_threshold->sign() <= 0) throw pd::InputError("--threshold", "must be positive");
        }
        return l;
    }
};

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string state_line(const pd::ClassicalState& s) {
    return std::to_string(s[0]) + " " + std::to_string(s[1]) + " " + std::to_string(s[2]) + " " +
           std::to_string(s[3]);
}

std::string describe(const pd::OrbitOutcome& o) {
    using namespace pd::outcome;
    if (const auto* t = std::get_if<Terminated>(&o)) return "terminated at step " + std::to_string(t->step);
    if (const auto* c = std::get_if<Cycle>(&o))
        return "cycle: preperiod " + std::to_string(c->preperiod) + ", period " + std::to_string(c->period);
    if (const auto* u = std::get_if<Unresolved>(&o)) return "unresolved after " + std::to_string(u->steps_run) + " steps";
    return std::string(pd::outcome_name(o));
}

int run_abs(long long p_value, const std::string& x_text, bool json) {
    const pd::Prime p = [&] {
        try {
            return pd::Prime(p_value);
        } catch (const pd::InvalidPrime& e) {
            throw pd::InputError("--p", e.what());
        }
    }();
    pd::Rational x;
    try {
        x = pd::Rational::parse(x_text);
    } catch (const pd::ParseError& e) {
        throw pd::InputError("x", e.what());
    }
    const pd::Rational a = pd::padic_abs(x, p);
    if (json) {
        Json j;
        j["p"] = p.value();
        j["x"] = x.str();
        j["valuation"] = pd::io::to_json(pd::vp(x, p));
        j["abs"] = a.str();
        print_json(j);
    } else {
        std::cout << a << '\n';
    }
    return 0;
}

int run_classical(const std::vector<long long>& values, bool trace, std::size_t max_steps, bool json) {
    pd::ClassicalState seed{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (values[i] < 0) throw pd::InputError("x" + std::to_string(i + 1), "must be a nonnegative integer");
        seed[i] = values[i];
    }
    const pd::ClassicalOrbit orbit = pd::classical_orbit(seed, max_steps);
    if (json) {
        Json j;
        j["outcome"] = pd::io::to_json(orbit.outcome);
        if (trace) {
            Json states = Json::array();
            for (const auto& s : orbit.states) states.push_back(Json::array({s[0], s[1], s[2], s[3]}));
            j["trace"] = std::move(states);
        }
        print_json(j);
        return 0;
    }
    if (trace) {
        const std::size_t steps = orbit.states.size() - 1;
        for (std::size_t k = 1; k <= steps && k <= kMaxTraceLines; ++k) std::cout << state_line(orbit.states[k]) << '\n';
        if (steps > kMaxTraceLines) std::cout << "... (" << steps - kMaxTraceLines << " more steps)\n";
    }
    std::cout << describe(orbit.outcome) << '\n';
    return 0;
}

int run_orbit_cmd(const std::string& path, const OrbitFlags& flags) {
    const pd::DucciInstance inst = pd::io::parse_instance_file(path);
    print_json(pd::io::to_json(pd::run_orbit(inst, flags.limits())));
    return 0;
}

int run_spectrum(const std::string& path, unsigned long max_order) {
    const pd::DucciInstance inst = pd::io::parse_instance_file(path);
    print_json(pd::io::to_json(pd::predict_behavior(inst.matrix, inst.p, max_order)));
    return 0;
}

int run_predict(const std::string& path, bool check, unsigned long max_order, const OrbitFlags& flags) {
    const pd::DucciInstance inst = pd::io::parse_instance_file(path);
    const pd::SpectralReport spectral = pd::predict_behavior(inst.matrix, inst.p, max_order);
    Json j;
    j["mode"] = std::string(pd::to_string(inst.mode));
    j["class"] = std::string(pd::to_string(spectral.spectrum));
    j["prediction"] = pd::io::to_json(spectral.linear);
    j["norm_mode_prediction"] = pd::io::to_json(spectral.norm);
    if (check) {
        const pd::OrbitReport report = pd::run_orbit(inst, flags.limits());
        j["observed"] = pd::io::to_json(report);
        j["verdict"] = std::string(pd::to_string(pd::judge(spectral.linear, report)));
        if (inst.mode == pd::IterationMode::Norm && spectral.norm.claim != pd::Claim::Unspecified)
            j["norm_mode_verdict"] = std::string(pd::to_string(pd::judge(spectral.norm, report)));
    }
    print_json(j);
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir, std::optional<unsigned> workers,
                  bool json) {
    pd::SweepConfig config = pd::io::sweep_config_from_json(pd::io::read_json_file(config_path));
    if (workers) config.workers = *workers;
    const pd::SweepResult result = pd::run_sweep(config);
    pd::io::write_sweep_report(out_dir, result);
    if (json) {
        Json rows = Json::array();
        for (const auto& r : result.summary) {
            Json row;
            row["profile"] = r.profile;
            row["mode"] = std::string(pd::to_string(r.mode));
            row["confirmed"] = r.confirmed;
            row["refuted"] = r.refuted;
            row["unresolved"] = r.unresolved;
            rows.push_back(std::move(row));
        }
        print_json(rows);
    } else {
        std::cout << pd::io::summary_csv(result);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ducci dynamics over the p-adic rationals"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Force JSON output for every subcommand");

    long long abs_p = 0;
    std::string abs_x;
    auto* abs_cmd = app.add_subcommand("abs", "Print the p-adic absolute value of a rational");
    abs_cmd->add_option("--p", abs_p, "Prime")->required();
    abs_cmd->add_option("x", abs_x, "Rational \"a\" or \"a/b\"")->required();

    std::string instance_path;
    OrbitFlags orbit_flags;
    auto* orbit_cmd = app.add_subcommand("orbit", "Run an orbit and print its report");
    orbit_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
    orbit_flags.attach(orbit_cmd);

    unsigned long max_order = 64;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Print the spectral report of an instance matrix");
    spectrum_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
    spectrum_cmd->add_option("--max-order", max_order, "Largest root-of-unity order tried");

    bool check = false;
    auto* predict_cmd = app.add_subcommand("predict", "Predict orbit behavior from the spectrum");
    predict_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
    predict_cmd->add_flag("--check", check, "Also run the orbit and report the verdict");
    predict_cmd->add_option("--max-order", max_order, "Largest root-of-unity order tried");
    orbit_flags.attach(predict_cmd);

    std::string config_path, out_dir;
    std::optional<unsigned> workers;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a prediction-vs-observation sweep");
    sweep_cmd->add_option("--config", config_path, "Sweep config JSON file")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory")->required();
    sweep_cmd->add_option("--workers", workers, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);

    std::vector<long long> classical_values;
    bool trace = false;
    std::size_t classical_steps = 1000;
    auto* classical_cmd = app.add_subcommand("classical", "Run the classical integer Ducci map on four integers");
    classical_cmd->add_option("x", classical_values, "Four nonnegative integers")->required()->expected(4);
    classical_cmd->add_flag("--trace", trace, "Print every state");
    classical_cmd->add_option("--max-steps", classical_steps, "Step budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*abs_cmd) return run_abs(abs_p, abs_x, json);
        if (*orbit_cmd) return run_orbit_cmd(instance_path, orbit_flags);
        if (*spectrum_cmd) return run_spectrum(instance_path, max_order);
        if (*predict_cmd) return run_predict(instance_path, check, max_order, orbit_flags);
        if (*sweep_cmd) return run_sweep_cmd(config_path, out_dir, workers, json);
        if (*classical_cmd) return run_classical(classical_values, trace, classical_steps, json);
    } catch (const pd::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}
