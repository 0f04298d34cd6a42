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

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "schmidtnum/tmsv.hpp"

// JSON and CSV formats exchanged by the CLI and the C API.
namespace schmidtnum::io {

using Json = nlohmann::json;

// {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]}
Json to_json(const PureState &psi);
PureState pure_state_from_json(const Json &j);

// {"n": int, "re": [[...]], "im": [[...]]}
Json to_json(const GammaOperator &op);
GammaOperator gamma_from_json(const Json &j);

// {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]}
Json to_json(const DenseOperator &op);
DenseOperator dense_from_json(const Json &j);

/// Operator files carry either the gamma schema ("n") or the dense one
/// ("d_a", "d_b").
std::variant<GammaOperator, DenseOperator> operator_from_json(const Json &j);

Json to_json(const SchmidtDecomposition &s);

Json to_json(const WitnessReport &report);
WitnessReport witness_report_from_json(const Json &j);

Json to_json(const RSESolution &solution);

Json to_json(const tmsv::Scenario &s);
tmsv::Scenario scenario_from_json(const Json &j);

Json to_json(const tmsv::ThresholdReport &report);
tmsv::ThresholdReport threshold_report_from_json(const Json &j);

/// Header delta_phi_deg,expectation,f_r,margin; 12 significant digits.
std::string margin_curve_csv(const tmsv::MarginCurve &curve);
tmsv::MarginCurve margin_curve_from_csv(std::string_view text);

Json to_json(const tmsv::MarginCurve &curve);

Json parse(std::string_view text);

}  // namespace schmidtnum::io
