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

#include "schmidtnum/schmidtnum.h"

#include <cstdlib>
#include <cstring>
#include <numbers>
#include <string>
#include <variant>

#include "schmidtnum/error.hpp"
#include "schmidtnum/io.hpp"
#include "schmidtnum/tmsv.hpp"

using namespace schmidtnum;

struct sn_state {
    PureState state;
};

struct sn_operator {
    std::variant<GammaOperator, DenseOperator, ProjectorOperator> op;
};

namespace {

thread_local std::string g_last_error;

sn_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return SN_ERR_NOT_HERMITIAN;
        case ErrorCode::NonFinite: return SN_ERR_NON_FINITE;
        case ErrorCode::MetricNotPSD: return SN_ERR_METRIC_NOT_PSD;
        case ErrorCode::DegenerateMetric: return SN_ERR_DEGENERATE_METRIC;
        case ErrorCode::ZeroState: return SN_ERR_ZERO_STATE;
        case ErrorCode::BadParameter: return SN_ERR_BAD_PARAMETER;
        case ErrorCode::DimensionMismatch: return SN_ERR_DIMENSION_MISMATCH;
        case ErrorCode::NotReal: return SN_ERR_NOT_REAL;
        case ErrorCode::TooSmall: return SN_ERR_TOO_SMALL;
        case ErrorCode::RankTooHigh: return SN_ERR_RANK_TOO_HIGH;
        case ErrorCode::NoConvergence: return SN_ERR_NO_CONVERGENCE;
        case ErrorCode::ConfigInvalid: return SN_ERR_CONFIG_INVALID;
        case ErrorCode::ParseError: return SN_ERR_PARSE;
    }
    return SN_ERR_INTERNAL;
}

template <typename F>
sn_status guard(F &&f) {
    try {
        f();
        g_last_error.clear();
        return SN_OK;
    } catch (const Error &e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return SN_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SN_ERR_INTERNAL;
    }
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

double to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

FrGammaOptions gamma_options(const sn_fr_options *options) {
    FrGammaOptions g;
    if (options != nullptr) {
        g.enumeration_cap = options->enumeration_cap;
        g.threads = options->threads;
    }
    return g;
}

OracleOptions oracle_options(const sn_fr_options *options) {
    OracleOptions o;
    if (options != nullptr) {
        o.restarts = options->restarts;
        o.max_iters = options->max_iters;
        o.seed = options->seed;
        o.threads = options->threads;
    }
    return o;
}

sn_fr_source to_c(FrSource s) {
    switch (s) {
        case FrSource::ClosedForm: return SN_FR_CLOSED_FORM;
        case FrSource::Enumeration: return SN_FR_ENUMERATION;
        case FrSource::Greedy: return SN_FR_GREEDY;
        case FrSource::Oracle: return SN_FR_ORACLE;
    }
    return SN_FR_CLOSED_FORM;
}

struct FrValue {
    double value;
    FrSource source;
    bool approximate;
};

DenseOperator dense_of(const sn_operator &h) {
    return std::visit(
        [](const auto &op) -> DenseOperator {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, GammaOperator>) {
                return op.to_dense(op.n(), op.n());
            } else if constexpr (std::is_same_v<T, DenseOperator>) {
                return op;
            } else {
                return op.to_dense();
            }
        },
        h.op);
}

FrValue compute_fr(const sn_operator &h, int r, const sn_fr_options *options) {
    if (const auto *g = std::get_if<GammaOperator>(&h.op)) {
        const WitnessReport w = witness_verdict(*g, 0.0, r, std::nullopt, gamma_options(options));
        return {w.f_r, w.f_r_source, w.approximate};
    }
    if (const auto *p = std::get_if<ProjectorOperator>(&h.op)) {
        return {f_r_projector(*p, r), FrSource::ClosedForm, false};
    }
    const RSESolution sol = fr_oracle(std::get<DenseOperator>(h.op), r, oracle_options(options));
    return {sol.value, FrSource::Oracle, false};
}

tmsv::Scenario to_scenario(const sn_scenario *s) {
    tmsv::Scenario out;
    out.epsilon = s->epsilon;
    out.cutoff = s->cutoff;
    out.r = s->r;
    if (s->kind == SN_OPERATOR_MATCHED) {
        out.kind = tmsv::OperatorKind::Matched;
    } else if (s->kind == SN_OPERATOR_FLAT_SINC) {
        out.kind = tmsv::OperatorKind::FlatSinc;
    } else {
        throw Error(ErrorCode::BadParameter, "unknown operator kind");
    }
    out.fr_options.threads = s->threads;
    tmsv::validate(out);
    return out;
}

}  // namespace

extern "C" {

const char *sn_last_error(void) { return g_last_error.c_str(); }

const char *sn_status_name(sn_status status) {
    switch (status) {
        case SN_OK: return "OK";
        case SN_ERR_NOT_HERMITIAN: return "NotHermitian";
        case SN_ERR_NON_FINITE: return "NonFinite";
        case SN_ERR_METRIC_NOT_PSD: return "MetricNotPSD";
        case SN_ERR_DEGENERATE_METRIC: return "DegenerateMetric";
        case SN_ERR_ZERO_STATE: return "ZeroState";
        case SN_ERR_BAD_PARAMETER: return "BadParameter";
        case SN_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case SN_ERR_NOT_REAL: return "NotReal";
        case SN_ERR_TOO_SMALL: return "TooSmall";
        case SN_ERR_RANK_TOO_HIGH: return "RankTooHigh";
        case SN_ERR_NO_CONVERGENCE: return "NoConvergence";
        case SN_ERR_CONFIG_INVALID: return "ConfigInvalid";
        case SN_ERR_PARSE: return "ParseError";
        case SN_ERR_NULL_ARGUMENT: return "NullArgument";
        case SN_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

void sn_string_free(char *s) { std::free(s); }

void sn_fr_options_default(sn_fr_options *options) {
    if (options == nullptr) {
        return;
    }
    const FrGammaOptions g;
    const OracleOptions o;
    options->enumeration_cap = g.enumeration_cap;
    options->restarts = o.restarts;
    options->max_iters = o.max_iters;
    options->seed = o.seed;
    options->threads = 1;
}

void sn_scenario_default(sn_scenario *scenario) {
    if (scenario == nullptr) {
        return;
    }
    const tmsv::Scenario s;
    scenario->epsilon = s.epsilon;
    scenario->cutoff = s.cutoff;
    scenario->kind = SN_OPERATOR_MATCHED;
    scenario->r = s.r;
    scenario->threads = 1;
}

#define SN_REQUIRE(p)                                                   \
    do {                                                                \
        if ((p) == nullptr) {                                           \
            g_last_error = "null argument: " #p;                        \
            return SN_ERR_NULL_ARGUMENT;                                \
        }                                                               \
    } while (0)

sn_status sn_state_from_json(const char *json, sn_state **out) {
    SN_REQUIRE(json);
    SN_REQUIRE(out);
    return guard([&] { *out = new sn_state{io::pure_state_from_json(io::parse(json))}; });
}

sn_status sn_state_tmsv(double epsilon, double phase, int cutoff, sn_state **out) {
    SN_REQUIRE(out);
    return guard([&] { *out = new sn_state{tmsv_pure(epsilon, phase, cutoff)}; });
}

sn_status sn_state_to_json(const sn_state *state, char **out) {
    SN_REQUIRE(state);
    SN_REQUIRE(out);
    return guard([&] { *out = dup_string(io::to_json(state->state).dump()); });
}

sn_status sn_state_schmidt_json(const sn_state *state, double rank_tol, char **out) {
    SN_REQUIRE(state);
    SN_REQUIRE(out);
    return guard([&] {
        *out = dup_string(io::to_json(schmidt_decompose(state->state, rank_tol)).dump());
    });
}

sn_status sn_state_schmidt_rank(const sn_state *state, double rank_tol, int *out) {
    SN_REQUIRE(state);
    SN_REQUIRE(out);
    return guard([&] { *out = schmidt_rank(state->state, rank_tol); });
}

void sn_state_free(sn_state *state) { delete state; }

sn_status sn_operator_from_json(const char *json, sn_operator **out) {
    SN_REQUIRE(json);
    SN_REQUIRE(out);
    return guard([&] {
        auto parsed = io::operator_from_json(io::parse(json));
        *out = std::visit([](auto &&op) { return new sn_operator{std::move(op)}; }, parsed);
    });
}

sn_status sn_operator_matched(double epsilon, double delta_phi_deg, int cutoff,
                              sn_operator **out) {
    SN_REQUIRE(out);
    return guard([&] {
        *out = new sn_operator{tmsv_gamma(epsilon, to_rad(delta_phi_deg), cutoff)};
    });
}

sn_status sn_operator_flat_sinc(double delta_phi_deg, int cutoff, sn_operator **out) {
    SN_REQUIRE(out);
    return guard([&] { *out = new sn_operator{flat_sinc_gamma(to_rad(delta_phi_deg), cutoff)}; });
}

sn_status sn_operator_projector(const sn_state *target, sn_operator **out) {
    SN_REQUIRE(target);
    SN_REQUIRE(out);
    return guard([&] { *out = new sn_operator{ProjectorOperator(target->state)}; });
}

sn_status sn_operator_identity(int d_a, int d_b, sn_operator **out) {
    SN_REQUIRE(out);
    return guard([&] { *out = new sn_operator{DenseOperator::identity(d_a, d_b)}; });
}

sn_status sn_operator_to_json(const sn_operator *op, char **out) {
    SN_REQUIRE(op);
    SN_REQUIRE(out);
    return guard([&] {
        if (const auto *g = std::get_if<GammaOperator>(&op->op)) {
            *out = dup_string(io::to_json(*g).dump());
        } else {
            *out = dup_string(io::to_json(dense_of(*op)).dump());
        }
    });
}

void sn_operator_free(sn_operator *op) { delete op; }

sn_status sn_fr(const sn_operator *op, int r, const sn_fr_options *options, sn_fr_result *out) {
    SN_REQUIRE(op);
    SN_REQUIRE(out);
    return guard([&] {
        const FrValue v = compute_fr(*op, r, options);
        out->value = v.value;
        out->source = to_c(v.source);
        out->approximate = v.approximate ? 1 : 0;
    });
}

sn_status sn_expectation_state(const sn_operator *op, const sn_state *state, double *out) {
    SN_REQUIRE(op);
    SN_REQUIRE(state);
    SN_REQUIRE(out);
    return guard([&] {
        *out = std::visit([&](const auto &o) { return expectation_pure(o, state->state); }, op->op);
    });
}

sn_status sn_expectation_tmsv_mixed(const sn_operator *op, double epsilon, double delta_phi_deg,
                                    double *value, double *trace_deficit) {
    SN_REQUIRE(op);
    SN_REQUIRE(value);
    return guard([&] {
        const auto *g = std::get_if<GammaOperator>(&op->op);
        if (g == nullptr) {
            throw Error(ErrorCode::DimensionMismatch,
                        "mixed squeezed-vacuum expectation needs a gamma operator");
        }
        const auto rho = DiagonalMixedState::tmsv_phase_randomized(epsilon, to_rad(delta_phi_deg),
                                                                   g->n() - 1);
        const MixedExpectation e = expectation_mixed(*g, rho);
        *value = e.value;
        if (trace_deficit != nullptr) {
            *trace_deficit = e.trace_deficit;
        }
    });
}

sn_status sn_verdict_json(const sn_operator *op, double expectation, int r, double detection_tol,
                          const sn_fr_options *options, char **out) {
    SN_REQUIRE(op);
    SN_REQUIRE(out);
    return guard([&] {
        const FrValue v = compute_fr(*op, r, options);
        const std::optional<double> tol =
            detection_tol > 0.0 ? std::optional<double>(detection_tol) : std::nullopt;
        const WitnessReport report =
            make_witness_report(r, v.value, expectation, v.source, v.approximate, tol);
        *out = dup_string(io::to_json(report).dump());
    });
}

sn_status sn_oracle_json(const sn_operator *op, int r, const sn_fr_options *options, char **out) {
    SN_REQUIRE(op);
    SN_REQUIRE(out);
    return guard([&] {
        const RSESolution sol = fr_oracle(dense_of(*op), r, oracle_options(options));
        *out = dup_string(io::to_json(sol).dump());
    });
}

sn_status sn_rse_residual_json(const sn_operator *op, const sn_state *state, int r, char **out) {
    SN_REQUIRE(op);
    SN_REQUIRE(state);
    SN_REQUIRE(out);
    return guard([&] {
        const RSESolution sol = rse_residual(dense_of(*op), state->state, r);
        *out = dup_string(io::to_json(sol).dump());
    });
}

sn_status sn_tmsv_scan_csv(const sn_scenario *scenario, const double *angles_deg, size_t count,
                           char **out) {
    SN_REQUIRE(scenario);
    SN_REQUIRE(out);
    if (count > 0) {
        SN_REQUIRE(angles_deg);
    }
    return guard([&] {
        const std::vector<double> angles(angles_deg, angles_deg + count);
        *out = dup_string(io::margin_curve_csv(tmsv::margin_curve(to_scenario(scenario), angles)));
    });
}

sn_status sn_tmsv_scan_json(const sn_scenario *scenario, const double *angles_deg, size_t count,
                            char **out) {
    SN_REQUIRE(scenario);
    SN_REQUIRE(out);
    if (count > 0) {
        SN_REQUIRE(angles_deg);
    }
    return guard([&] {
        const std::vector<double> angles(angles_deg, angles_deg + count);
        *out = dup_string(io::to_json(tmsv::margin_curve(to_scenario(scenario), angles)).dump());
    });
}

sn_status sn_tmsv_threshold_json(const sn_scenario *scenario, double coarse_step_deg,
                                 double refine_tol_deg, char **out) {
    SN_REQUIRE(scenario);
    SN_REQUIRE(out);
    return guard([&] {
        const tmsv::ThresholdReport report =
            tmsv::threshold(to_scenario(scenario), coarse_step_deg, refine_tol_deg);
        *out = dup_string(io::to_json(report).dump());
    });
}

sn_status sn_db_to_epsilon(double db, double *out) {
    SN_REQUIRE(out);
    return guard([&] { *out = tmsv::db_to_epsilon(db); });
}

sn_status sn_epsilon_to_db(double epsilon, double *out) {
    SN_REQUIRE(out);
    return guard([&] { *out = tmsv::epsilon_to_db(epsilon); });
}

}  // extern "C"
