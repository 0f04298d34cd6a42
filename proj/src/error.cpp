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

#include "schmidtnum/error.hpp"

namespace schmidtnum {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::MetricNotPSD: return "MetricNotPSD";
        case ErrorCode::DegenerateMetric: return "DegenerateMetric";
        case ErrorCode::ZeroState: return "ZeroState";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotReal: return "NotReal";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::RankTooHigh: return "RankTooHigh";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace schmidtnum
