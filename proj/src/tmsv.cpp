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

#include "schmidtnum/tmsv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schmidtnum/error.hpp"

namespace schmidtnum::tmsv {

namespace {

double to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::BadParameter, "epsilon must lie in (0, 1)");
    }
}

void require_angle(double deg) {
    if (!(deg > 0.0 && deg <= 180.0)) {
        throw Error(ErrorCode::BadParameter,
                    "angle " + std::to_string(deg) + " deg outside (0, 180]");
    }
}

}  // namespace

std::string_view operator_kind_name(OperatorKind kind) noexcept {
    return kind == OperatorKind::Matched ? "matched" : "flat_sinc";
}

OperatorKind parse_operator_kind(std::string_view name) {
    if (name == "matched") {
        return OperatorKind::Matched;
    }
    if (name == "flat_sinc") {
        return OperatorKind::FlatSinc;
    }
    throw Error(ErrorCode::ParseError, "unknown operator kind '" + std::string(name) + "'");
}

void validate(const Scenario &s) {
    require_epsilon(s.epsilon);
    if (s.r < 1) {
        throw Error(ErrorCode::BadParameter, "r must be at least 1");
    }
    if (s.cutoff < s.r) {
        throw Error(ErrorCode::BadParameter, "cutoff must be at least r");
    }
}

double expectation_closed_form(double epsilon, double delta_phi_rad, int k_max) {
    require_epsilon(epsilon);
    if (k_max < 0 || !(delta_phi_rad >= 0.0 && delta_phi_rad <= std::numbers::pi)) {
        throw Error(ErrorCode::BadParameter, "need k_max >= 0 and delta_phi in [0, pi]");
    }
    const double e2 = epsilon * epsilon;
    double series = 0.0;
    for (int k = k_max; k >= 1; --k) {
        const double s = sinc(delta_phi_rad * k);
        series += std::pow(e2, k) * s * s;
    }
    return (1.0 - e2) / (1.0 + e2) * (1.0 + 2.0 * series);
}

double closed_form_remainder_bound(double epsilon, int k_max) {
    require_epsilon(epsilon);
    return 2.0 * std::pow(epsilon, 2.0 * (k_max + 1)) / (1.0 - epsilon * epsilon);
}

double f2_matched(double epsilon, double delta_phi_rad, int k_search) {
    require_epsilon(epsilon);
    if (k_search < 1) {
        throw Error(ErrorCode::BadParameter, "k_search must be at least 1");
    }
    const double e2 = epsilon * epsilon;
    double best = -1.0;
    for (int k = 1; k <= k_search; ++k) {
        const double ek = std::pow(e2, k);
        const double s = sinc(delta_phi_rad * k);
        const double v = 0.5 * (1.0 - e2) *
                         (1.0 + ek + std::sqrt((1.0 - ek) * (1.0 - ek) + 4.0 * ek * s * s));
        best = std::max(best, v);
    }
    return best;
}

MarginPoint margin_at(const Scenario &s, double delta_phi_deg) {
    validate(s);
    require_angle(delta_phi_deg);
    const double dphi = to_rad(delta_phi_deg);
    MarginPoint p;
    if (s.kind == OperatorKind::Matched) {
        p.expectation = expectation_closed_form(s.epsilon, dphi);
        if (s.r == 1) {
            p.f_r = 1.0 - s.epsilon * s.epsilon;
        } else if (s.r == 2) {
            p.f_r = f2_matched(s.epsilon, dphi);
        } else {
            const FrGammaResult fr = fr_gamma(tmsv_gamma(s.epsilon, dphi, s.cutoff), s.r, s.fr_options);
            p.f_r = fr.value;
            p.f_r_source = fr.source;
            p.approximate = fr.approximate;
        }
    } else {
        const GammaOperator op = flat_sinc_gamma(dphi, s.cutoff);
        const DiagonalMixedState rho =
            DiagonalMixedState::tmsv_phase_randomized(s.epsilon, dphi, s.cutoff);
        p.expectation = expectation_mixed(op, rho).value;
        if (s.r == 1) {
            p.f_r = f1_gamma(op);
        } else if (s.r == 2) {
            p.f_r = f2_gamma(op);
        } else {
            const FrGammaResult fr = fr_gamma(op, s.r, s.fr_options);
            p.f_r = fr.value;
            p.f_r_source = fr.source;
            p.approximate = fr.approximate;
        }
    }
    p.margin = p.expectation - p.f_r;
    return p;
}

MarginCurve margin_curve(const Scenario &s, const std::vector<double> &angles_deg) {
    validate(s);
    for (std::size_t i = 0; i < angles_deg.size(); ++i) {
        require_angle(angles_deg[i]);
        if (i > 0 && !(angles_deg[i] > angles_deg[i - 1])) {
            throw Error(ErrorCode::BadParameter, "angles must be strictly increasing");
        }
    }
    MarginCurve curve;
    for (double deg : angles_deg) {
        const MarginPoint p = margin_at(s, deg);
        curve.delta_phi_deg.push_back(deg);
        curve.expectation.push_back(p.expectation);
        curve.f_r.push_back(p.f_r);
        curve.margin.push_back(p.margin);
        curve.approximate = curve.approximate || p.approximate;
    }
    return curve;
}

std::vector<double> normalized_margin(const MarginCurve &curve) {
    std::vector<double> out = curve.margin;
    if (out.empty()) {
        return out;
    }
    const double peak = *std::max_element(out.begin(), out.end());
    if (peak > 0.0) {
        for (double &m : out) {
            m /= peak;
        }
    }
    return out;
}

std::vector<double> angle_grid(double step_deg) {
    if (!(step_deg > 0.0 && step_deg <= 180.0)) {
        throw Error(ErrorCode::BadParameter, "grid step must lie in (0, 180]");
    }
    const int count = static_cast<int>(std::ceil(180.0 / step_deg - 1e-9));
    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 1; i < count; ++i) {
        grid.push_back(i * step_deg);
    }
    grid.push_back(180.0);
    return grid;
}

ThresholdReport threshold(const Scenario &s, double coarse_step_deg, double refine_tol_deg) {
    validate(s);
    if (!(refine_tol_deg > 0.0)) {
        throw Error(ErrorCode::BadParameter, "refine tolerance must be positive");
    }
    ThresholdReport report;
    report.scenario = s;
    const MarginCurve curve = margin_curve(s, angle_grid(coarse_step_deg));
    report.approximate_f_r = curve.approximate;

    const auto &deg = curve.delta_phi_deg;
    const auto &m = curve.margin;
    for (std::size_t i = 0; i + 1 < deg.size(); ++i) {
        if (m[i] > 0.0 && m[i + 1] <= 0.0) {
            double lo = deg[i];
            double hi = deg[i + 1];
            while (hi - lo > refine_tol_deg) {
                const double mid = 0.5 * (lo + hi);
                const MarginPoint p = margin_at(s, mid);
                report.approximate_f_r = report.approximate_f_r || p.approximate;
                (p.margin > 0.0 ? lo : hi) = mid;
            }
            report.crossings_deg.push_back(0.5 * (lo + hi));
        }
    }
    if (!report.crossings_deg.empty()) {
        report.threshold_deg = report.crossings_deg.back();
    } else {
        report.threshold_deg = (!m.empty() && m.back() > 0.0) ? 180.0 : 0.0;
    }
    return report;
}

double db_to_epsilon(double db) {
    if (!(db >= 0.0) || !std::isfinite(db)) {
        throw Error(ErrorCode::BadParameter, "squeezing in dB must be finite and nonnegative");
    }
    // Variance ratio 10^{db/10} = e^{2s}.
    return std::tanh(db * std::numbers::ln10 / 20.0);
}

double epsilon_to_db(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::BadParameter, "epsilon must lie in [0, 1)");
    }
    return 20.0 * std::atanh(epsilon) / std::numbers::ln10;
}

}  // namespace schmidtnum::tmsv
