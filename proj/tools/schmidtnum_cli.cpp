// Copyright 2026 The schmidtnum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// schmidtnum command-line front end. Talks to the library only through the C
// interface in schmidtnum/schmidtnum.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schmidtnum/schmidtnum.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Raised for problems the CLI detects itself; `field` names the culprit.
struct ConfigError {
    std::string field;
    std::string reason;
};

// Raised when a library call fails.
struct LibraryError {
    sn_status status;
    std::string message;
};

void check(sn_status status) {
    if (status != SN_OK) {
        throw LibraryError{status, sn_last_error()};
    }
}

int exit_code_for(sn_status status) {
    switch (status) {
        case SN_ERR_NO_CONVERGENCE:
        case SN_ERR_METRIC_NOT_PSD:
        case SN_ERR_DEGENERATE_METRIC:
        case SN_ERR_NOT_REAL:
        case SN_ERR_INTERNAL:
            return kExitNumerical;
        default:
            return kExitValidation;
    }
}

struct StringDeleter {
    void operator()(char *s) const { sn_string_free(s); }
};
struct StateDeleter {
    void operator()(sn_state *s) const { sn_state_free(s); }
};
struct OperatorDeleter {
    void operator()(sn_operator *op) const { sn_operator_free(op); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;
using OwnedState = std::unique_ptr<sn_state, StateDeleter>;
using OwnedOperator = std::unique_ptr<sn_operator, OperatorDeleter>;

std::string take(char *s) { return std::string(OwnedString(s).get()); }

// Every setting, as given on the command line or in a config file. Unset
// values fall back to the defaults in Settings.
struct Flags {
    std::optional<double> epsilon;
    std::optional<double> db;
    std::optional<double> delta_phi_deg;
    std::optional<std::string> op;
    std::optional<std::string> file;
    std::optional<std::string> state;
    std::optional<int> r;
    std::optional<int> cutoff;
    std::optional<int> d;
    std::optional<double> expectation;
    std::optional<int> restarts;
    std::optional<int> max_iters;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::uint64_t> enumeration_cap;
    std::optional<double> step_deg;
    std::optional<double> coarse_step_deg;
    std::optional<double> refine_tol_deg;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

template <typename T>
void merge_key(const json &cfg, const char *key, std::optional<T> &slot) {
    if (slot.has_value() || !cfg.contains(key)) {
        return;
    }
    try {
        slot = cfg.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError{key, "has the wrong type in the config file"};
    }
}

json read_json_file(const std::string &path, const char *field) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError{field, "cannot open '" + path + "'"};
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return json::parse(buf.str(), nullptr, false);
}

std::string read_text_file(const std::string &path, const char *field) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError{field, "cannot open '" + path + "'"};
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Flags win over config values.
void merge_config(const std::string &path, const std::string &command, Flags &f) {
    const json cfg = read_json_file(path, "config");
    if (cfg.is_discarded() || !cfg.is_object()) {
        throw ConfigError{"config", "'" + path + "' is not a JSON object"};
    }
    static const std::vector<std::string> known = {
        "command", "epsilon", "db", "delta_phi_deg", "operator", "file", "state", "r",
        "cutoff", "d", "expectation", "restarts", "max_iters", "seed", "threads",
        "enumeration_cap", "step_deg", "coarse_step_deg", "refine_tol_deg", "out", "format"};
    for (const auto &item : cfg.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError{item.key(), "is not a recognized config field"};
        }
    }
    if (cfg.contains("command") && cfg["command"] != command) {
        throw ConfigError{"command", "config file is for '" + cfg["command"].dump() +
                                         "', not '" + command + "'"};
    }
    if (cfg.contains("epsilon") && cfg.contains("db")) {
        throw ConfigError{"db", "epsilon and db are mutually exclusive"};
    }
    // A squeezing flag on the command line replaces either config key.
    const bool squeezing_flag = f.epsilon.has_value() || f.db.has_value();
    if (!squeezing_flag) {
        merge_key(cfg, "epsilon", f.epsilon);
        merge_key(cfg, "db", f.db);
    }
    merge_key(cfg, "delta_phi_deg", f.delta_phi_deg);
    merge_key(cfg, "operator", f.op);
    merge_key(cfg, "file", f.file);
    merge_key(cfg, "state", f.state);
    merge_key(cfg, "r", f.r);
    merge_key(cfg, "cutoff", f.cutoff);
    merge_key(cfg, "d", f.d);
    merge_key(cfg, "expectation", f.expectation);
    merge_key(cfg, "restarts", f.restarts);
    merge_key(cfg, "max_iters", f.max_iters);
    merge_key(cfg, "seed", f.seed);
    merge_key(cfg, "threads", f.threads);
    merge_key(cfg, "enumeration_cap", f.enumeration_cap);
    merge_key(cfg, "step_deg", f.step_deg);
    merge_key(cfg, "coarse_step_deg", f.coarse_step_deg);
    merge_key(cfg, "refine_tol_deg", f.refine_tol_deg);
    merge_key(cfg, "out", f.out);
    merge_key(cfg, "format", f.format);
}

void add_options(CLI::App &app, Flags &f, std::string &config) {
    auto *eps = app.add_option("--epsilon", f.epsilon, "squeezing parameter in (0, 1)");
    auto *db = app.add_option("--db", f.db, "squeezing in dB, converted to epsilon");
    eps->excludes(db);
    db->excludes(eps);
    app.add_option("--delta-phi-deg", f.delta_phi_deg, "phase randomization half-width (deg)");
    app.add_option("--operator", f.op, "matched | flat_sinc | projector | file | identity");
    app.add_option("--file", f.file, "operator JSON for --operator file");
    app.add_option("--state", f.state, "pure state JSON");
    app.add_option("--r", f.r, "Schmidt number bound r");
    app.add_option("--cutoff", f.cutoff, "Fock cutoff N (default 100)");
    app.add_option("--d", f.d, "local dimension for --operator identity");
    app.add_option("--expectation", f.expectation, "measured <L> for verdict");
    app.add_option("--restarts", f.restarts, "oracle restarts (default 100)");
    app.add_option("--max-iters", f.max_iters, "oracle iterations per restart (default 500)");
    app.add_option("--seed", f.seed, "oracle seed (default 0)");
    app.add_option("--threads", f.threads, "worker threads, 0 = all cores (default 1)");
    app.add_option("--enumeration-cap", f.enumeration_cap,
                   "largest principal-subset count searched exhaustively");
    app.add_option("--step-deg", f.step_deg, "scan grid step (default 1)");
    app.add_option("--coarse-step-deg", f.coarse_step_deg, "threshold grid step (default 0.5)");
    app.add_option("--refine-tol-deg", f.refine_tol_deg, "threshold bisection tolerance (default 0.01)");
    app.add_option("--out", f.out, "write the result here instead of stdout");
    app.add_option("--format", f.format, "json | csv");
    app.add_option("--config", config, "JSON config file; flags override its values");
}

// Validated settings with defaults applied.
struct Settings {
    std::string command;
    std::optional<double> epsilon;
    std::optional<double> delta_phi_deg;
    std::string op;
    std::optional<std::string> file;
    std::optional<std::string> state;
    int r = 1;
    int cutoff = 100;
    std::optional<int> d;
    std::optional<double> expectation;
    sn_fr_options fr{};
    double step_deg = 1.0;
    double coarse_step_deg = 0.5;
    double refine_tol_deg = 0.01;
    std::optional<std::string> out;
    std::string format;
};

Settings resolve(const std::string &command, const Flags &f) {
    Settings s;
    s.command = command;
    if (f.db) {
        if (!(*f.db > 0.0)) {
            throw ConfigError{"db", "must be positive"};
        }
        double eps = 0.0;
        check(sn_db_to_epsilon(*f.db, &eps));
        s.epsilon = eps;
    } else {
        s.epsilon = f.epsilon;
    }
    if (s.epsilon && !(*s.epsilon > 0.0 && *s.epsilon < 1.0)) {
        throw ConfigError{"epsilon", "must lie in (0, 1)"};
    }
    s.delta_phi_deg = f.delta_phi_deg;
    if (s.delta_phi_deg && !(*s.delta_phi_deg >= 0.0 && *s.delta_phi_deg <= 180.0)) {
        throw ConfigError{"delta_phi_deg", "must lie in [0, 180]"};
    }
    const bool scenario_command = command == "scan" || command == "threshold";
    s.op = f.op.value_or(scenario_command ? "matched" : "");
    static const std::vector<std::string> kinds = {"matched", "flat_sinc", "projector", "file",
                                                   "identity"};
    if (command != "schmidt") {
        if (s.op.empty()) {
            throw ConfigError{"operator", "is required"};
        }
        if (std::find(kinds.begin(), kinds.end(), s.op) == kinds.end()) {
            throw ConfigError{"operator", "unknown kind '" + s.op + "'"};
        }
        if (scenario_command && s.op != "matched" && s.op != "flat_sinc") {
            throw ConfigError{"operator", command + " needs matched or flat_sinc"};
        }
    }
    s.file = f.file;
    s.state = f.state;
    s.r = f.r.value_or(1);
    if (s.r < 1) {
        throw ConfigError{"r", "must be at least 1"};
    }
    s.cutoff = f.cutoff.value_or(100);
    if (s.cutoff < 0) {
        throw ConfigError{"cutoff", "must be nonnegative"};
    }
    if (scenario_command && s.cutoff < s.r) {
        throw ConfigError{"cutoff", "must be at least r"};
    }
    s.d = f.d;
    if (s.d && *s.d < 1) {
        throw ConfigError{"d", "must be positive"};
    }
    s.expectation = f.expectation;
    sn_fr_options_default(&s.fr);
    s.fr.restarts = f.restarts.value_or(s.fr.restarts);
    s.fr.max_iters = f.max_iters.value_or(s.fr.max_iters);
    s.fr.seed = f.seed.value_or(s.fr.seed);
    s.fr.threads = f.threads.value_or(1);
    s.fr.enumeration_cap = f.enumeration_cap.value_or(s.fr.enumeration_cap);
    if (s.fr.restarts < 1) {
        throw ConfigError{"restarts", "must be positive"};
    }
    if (s.fr.max_iters < 1) {
        throw ConfigError{"max_iters", "must be positive"};
    }
    if (s.fr.threads < 0) {
        throw ConfigError{"threads", "must be nonnegative"};
    }
    s.step_deg = f.step_deg.value_or(1.0);
    if (!(s.step_deg > 0.0 && s.step_deg <= 180.0)) {
        throw ConfigError{"step_deg", "must lie in (0, 180]"};
    }
    s.coarse_step_deg = f.coarse_step_deg.value_or(0.5);
    if (!(s.coarse_step_deg > 0.0 && s.coarse_step_deg <= 180.0)) {
        throw ConfigError{"coarse_step_deg", "must lie in (0, 180]"};
    }
    s.refine_tol_deg = f.refine_tol_deg.value_or(0.01);
    if (!(s.refine_tol_deg > 0.0)) {
        throw ConfigError{"refine_tol_deg", "must be positive"};
    }
    s.out = f.out;
    s.format = f.format.value_or(command == "scan" ? "csv" : "json");
    if (s.format != "json" && s.format != "csv") {
        throw ConfigError{"format", "must be json or csv"};
    }
    if (s.format == "csv" && command != "scan" && command != "fr") {
        throw ConfigError{"format", "csv is only available for scan and fr"};
    }
    return s;
}

double require_epsilon(const Settings &s) {
    if (!s.epsilon) {
        throw ConfigError{"epsilon", "is required (or give db)"};
    }
    return *s.epsilon;
}

double require_delta_phi(const Settings &s) {
    if (!s.delta_phi_deg) {
        throw ConfigError{"delta_phi_deg", "is required for operator '" + s.op + "'"};
    }
    return *s.delta_phi_deg;
}

OwnedState load_state(const std::string &path) {
    const std::string text = read_text_file(path, "state");
    sn_state *raw = nullptr;
    check(sn_state_from_json(text.c_str(), &raw));
    return OwnedState(raw);
}

// The TMSV with the configured epsilon and cutoff stands in when no state
// file is given.
OwnedState state_or_tmsv(const Settings &s) {
    if (s.state) {
        return load_state(*s.state);
    }
    sn_state *raw = nullptr;
    check(sn_state_tmsv(require_epsilon(s), 0.0, s.cutoff, &raw));
    return OwnedState(raw);
}

OwnedOperator build_operator(const Settings &s) {
    sn_operator *raw = nullptr;
    if (s.op == "matched") {
        check(sn_operator_matched(require_epsilon(s), require_delta_phi(s), s.cutoff, &raw));
    } else if (s.op == "flat_sinc") {
        const double dphi = require_delta_phi(s);
        if (!(dphi > 0.0)) {
            throw ConfigError{"delta_phi_deg", "must be positive for flat_sinc"};
        }
        check(sn_operator_flat_sinc(dphi, s.cutoff, &raw));
    } else if (s.op == "projector") {
        const OwnedState target = state_or_tmsv(s);
        check(sn_operator_projector(target.get(), &raw));
    } else if (s.op == "file") {
        if (!s.file) {
            throw ConfigError{"file", "is required for operator 'file'"};
        }
        const std::string text = read_text_file(*s.file, "file");
        check(sn_operator_from_json(text.c_str(), &raw));
    } else {
        if (!s.d) {
            throw ConfigError{"d", "is required for operator 'identity'"};
        }
        check(sn_operator_identity(*s.d, *s.d, &raw));
    }
    return OwnedOperator(raw);
}

sn_scenario build_scenario(const Settings &s) {
    sn_scenario sc;
    sn_scenario_default(&sc);
    sc.epsilon = require_epsilon(s);
    sc.cutoff = s.cutoff;
    sc.r = s.r;
    sc.kind = s.op == "flat_sinc" ? SN_OPERATOR_FLAT_SINC : SN_OPERATOR_MATCHED;
    sc.threads = s.fr.threads;
    return sc;
}

const char *source_name(sn_fr_source source) {
    switch (source) {
        case SN_FR_CLOSED_FORM: return "closed_form";
        case SN_FR_ENUMERATION: return "enumeration";
        case SN_FR_GREEDY: return "greedy";
        case SN_FR_ORACLE: return "oracle";
    }
    return "closed_form";
}

std::string pretty(const std::string &json_text) {
    return json::parse(json_text).dump(2) + "\n";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string run_fr(const Settings &s) {
    const OwnedOperator op = build_operator(s);
    sn_fr_result res{};
    check(sn_fr(op.get(), s.r, &s.fr, &res));
    if (s.format == "csv") {
        return "r,f_r,source,approximate\n" + std::to_string(s.r) + "," + format_double(res.value) +
               "," + source_name(res.source) + "," + (res.approximate ? "true" : "false") + "\n";
    }
    const json j = {{"r", s.r},
                    {"f_r", res.value},
                    {"source", source_name(res.source)},
                    {"approximate", res.approximate != 0}};
    return j.dump(2) + "\n";
}

std::string run_verdict(const Settings &s) {
    const OwnedOperator op = build_operator(s);
    double expectation = 0.0;
    if (s.expectation) {
        expectation = *s.expectation;
    } else if (s.state) {
        const OwnedState psi = load_state(*s.state);
        check(sn_expectation_state(op.get(), psi.get(), &expectation));
    } else if (s.op == "matched" || s.op == "flat_sinc") {
        // Phase-randomized squeezed vacuum with the configured parameters.
        check(sn_expectation_tmsv_mixed(op.get(), require_epsilon(s), require_delta_phi(s),
                                        &expectation, nullptr));
    } else {
        throw ConfigError{"expectation", "give --expectation or --state for this operator"};
    }
    char *out = nullptr;
    check(sn_verdict_json(op.get(), expectation, s.r, 0.0, &s.fr, &out));
    return pretty(take(out));
}

std::vector<double> scan_grid(double step) {
    std::vector<double> grid;
    for (int i = 1; i * step < 180.0 - 1e-9; ++i) {
        grid.push_back(i * step);
    }
    grid.push_back(180.0);
    return grid;
}

std::string run_scan(const Settings &s) {
    const sn_scenario sc = build_scenario(s);
    const std::vector<double> grid = scan_grid(s.step_deg);
    char *out = nullptr;
    if (s.format == "csv") {
        check(sn_tmsv_scan_csv(&sc, grid.data(), grid.size(), &out));
        return take(out);
    }
    check(sn_tmsv_scan_json(&sc, grid.data(), grid.size(), &out));
    return pretty(take(out));
}

std::string run_threshold(const Settings &s) {
    const sn_scenario sc = build_scenario(s);
    char *out = nullptr;
    check(sn_tmsv_threshold_json(&sc, s.coarse_step_deg, s.refine_tol_deg, &out));
    return pretty(take(out));
}

std::string run_oracle(const Settings &s) {
    const OwnedOperator op = build_operator(s);
    char *out = nullptr;
    check(sn_oracle_json(op.get(), s.r, &s.fr, &out));
    return pretty(take(out));
}

std::string run_schmidt(const Settings &s) {
    const OwnedState psi = state_or_tmsv(s);
    char *out = nullptr;
    check(sn_state_schmidt_json(psi.get(), 1e-10, &out));
    return pretty(take(out));
}

std::string dispatch(const Settings &s) {
    if (s.command == "fr") return run_fr(s);
    if (s.command == "verdict") return run_verdict(s);
    if (s.command == "scan") return run_scan(s);
    if (s.command == "threshold") return run_threshold(s);
    if (s.command == "oracle") return run_oracle(s);
    return run_schmidt(s);
}

void emit(const Settings &s, const std::string &text) {
    if (!s.out) {
        std::cout << text;
        return;
    }
    std::ofstream file(*s.out, std::ios::binary);
    if (!file) {
        throw ConfigError{"out", "cannot write '" + *s.out + "'"};
    }
    file << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Schmidt-number witnesses for bipartite states"};
    app.require_subcommand(1);
    Flags flags;
    std::string config;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"fr", "maximal SN-r expectation value f_r of an operator"},
        {"verdict", "witness report for a measured or computed expectation value"},
        {"scan", "margin curve over delta_phi for a squeezed-vacuum scenario"},
        {"threshold", "largest delta_phi with positive margin"},
        {"oracle", "randomized alternating search for f_r on the dense operator"},
        {"schmidt", "Schmidt decomposition of a pure state"},
    };
    for (const auto &[name, help] : commands) {
        add_options(*app.add_subcommand(name, help), flags, config);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        if (!config.empty()) {
            merge_config(config, command, flags);
        }
        const Settings settings = resolve(command, flags);
        emit(settings, dispatch(settings));
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.field << ": " << e.reason << "\n";
        return kExitValidation;
    } catch (const LibraryError &e) {
        std::cerr << "error: " << sn_status_name(e.status) << ": " << e.message << "\n";
        return exit_code_for(e.status);
    }
    return 0;
}
