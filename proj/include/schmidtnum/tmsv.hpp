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

#include <string_view>
#include <vector>

#include "schmidtnum/schmidt_number.hpp"

// Phase-randomized two-mode squeezed vacuum. Angles are half-widths of the
// uniform phase window; public functions here take degrees unless the name
// says otherwise.
namespace schmidtnum::tmsv {

enum class OperatorKind {
    Matched,   // tmsv_gamma with the state's own epsilon and delta_phi
    FlatSinc,  // gamma(m, n) = sinc(delta_phi (m - n))
};

std::string_view operator_kind_name(OperatorKind kind) noexcept;
OperatorKind parse_operator_kind(std::string_view name);

struct Scenario {
    double epsilon = 1.0 / 3.0;
    int cutoff = 100;
    OperatorKind kind = OperatorKind::Matched;
    int r = 1;
    FrGammaOptions fr_options{};
};

void validate(const Scenario &s);

/// (1-eps^2)/(1+eps^2) (1 + 2 sum_{k=1}^{k_max} eps^{2k} sinc^2(delta_phi k)),
/// delta_phi in radians.
double expectation_closed_form(double epsilon, double delta_phi_rad, int k_max = 300);

/// Upper bound on the series tail dropped by expectation_closed_form.
double closed_form_remainder_bound(double epsilon, int k_max = 300);

/// f_2 of the matched operator from the pair (0, k), scanning k = 1..k_search.
double f2_matched(double epsilon, double delta_phi_rad, int k_search = 200);

struct MarginPoint {
    double expectation = 0.0;
    double f_r = 0.0;
    double margin = 0.0;
    FrSource f_r_source = FrSource::ClosedForm;
    bool approximate = false;
};

MarginPoint margin_at(const Scenario &s, double delta_phi_deg);

struct MarginCurve {
    std::vector<double> delta_phi_deg;
    std::vector<double> expectation;
    std::vector<double> f_r;
    std::vector<double> margin;
    bool approximate = false;
};

MarginCurve margin_curve(const Scenario &s, const std::vector<double> &angles_deg);

/// margin / max(margin) for display; the stored curve stays raw.
std::vector<double> normalized_margin(const MarginCurve &curve);

/// Evenly spaced angles step, 2 step, ..., ending exactly at 180.
std::vector<double> angle_grid(double step_deg);

struct ThresholdReport {
    Scenario scenario;
    double threshold_deg = 0.0;
    /// Every positive-to-nonpositive crossing, refined.
    std::vector<double> crossings_deg;
    bool approximate_f_r = false;
};

/// Grid-scans the margin over (0, 180] and bisects the last crossing from
/// positive to nonpositive margin. Returns 0 when the margin is never
/// positive on the grid and 180 when it never drops.
ThresholdReport threshold(const Scenario &s, double coarse_step_deg = 0.5,
                          double refine_tol_deg = 0.01);

double db_to_epsilon(double db);
double epsilon_to_db(double epsilon);

}  // namespace schmidtnum::tmsv
