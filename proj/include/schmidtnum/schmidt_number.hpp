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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "schmidtnum/operators.hpp"

namespace schmidtnum {

/// Where an f_r value came from. Enumeration and closed forms are exact;
/// greedy and oracle values are achieved expectations, hence lower bounds.
enum class FrSource { ClosedForm, Enumeration, Greedy, Oracle };

std::string_view fr_source_name(FrSource source) noexcept;
FrSource parse_fr_source(std::string_view name);

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Sum of the r largest squared Schmidt coefficients of the projector target.
double f_r_projector(const ProjectorOperator &projector, int r);

/// The maximizing vector for f_r_projector: the target truncated to its r
/// largest Schmidt terms and renormalized.
PureState projector_rse_vector(const ProjectorOperator &projector, int r);

double f1_gamma(const GammaOperator &op);

/// Largest eigenvalue among all principal 2x2 submatrices of gamma.
double f2_gamma(const GammaOperator &op);

// ---------------------------------------------------------------------------
// Principal-submatrix search
// ---------------------------------------------------------------------------

struct FrGammaOptions {
    std::uint64_t enumeration_cap = 2'000'000;
    int threads = 1;
};

struct FrGammaResult {
    double value = 0.0;
    FrSource source = FrSource::Enumeration;
    bool approximate = false;
    /// Indices q_1 < ... < q_r of the maximizing principal submatrix.
    std::vector<int> subset;
    /// Top eigenvector of that submatrix (entry i belongs to subset[i]).
    ComplexVector weights;
};

/// Maximum over r-subsets of the top eigenvalue of the principal submatrix.
/// Exact when C(n, r) <= enumeration_cap; otherwise a hill-climbing search
/// seeded by the r largest diagonal entries, flagged approximate.
FrGammaResult fr_gamma(const GammaOperator &op, int r, const FrGammaOptions &options = {});

/// sum_i weights[i] |q_i, q_i> on an n x n space.
PureState rse_vector(const GammaOperator &op, const FrGammaResult &result);

// ---------------------------------------------------------------------------
// r-SE solutions
// ---------------------------------------------------------------------------

struct RSESolution {
    double value = 0.0;
    PureState vector = PureState::normalized(ComplexMatrix::Ones(1, 1));
    double chi_norm = 0.0;
    /// Norm of chi projected onto span{|e_k, f_k'>}, k, k' below the Schmidt
    /// rank of `vector`.
    double biorth_residual = 0.0;
    bool converged = true;
    int iterations = 0;
    int best_restart = -1;
};

/// Evaluates L|psi> = g|psi> + |chi> for a given psi of Schmidt rank <= r.
RSESolution rse_residual(const DenseOperator &op, const PureState &psi, int r,
                         double rank_tol = kDefaultRankTol);

struct OracleOptions {
    int restarts = 100;
    int max_iters = 500;
    std::uint64_t seed = 0;
    int threads = 1;
    double tol = 1e-10;
};

/// Multi-start alternating maximization of <psi|L|psi> over
/// psi = sum_{k<r} |x_k, y_k>. Each half-step solves the generalized
/// eigenproblem for one side with the other side fixed. The result is the
/// best restart (ties keep the lowest restart index); its value is an
/// achieved SN-r expectation and therefore a lower bound on f_r.
RSESolution fr_oracle(const DenseOperator &op, int r, const OracleOptions &options = {});

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

inline constexpr double kClosedFormDetectionTol = 1e-9;
inline constexpr double kOracleDetectionTol = 1e-6;

double default_detection_tol(FrSource source) noexcept;

struct WitnessReport {
    int r = 1;
    double f_r = 0.0;
    double expectation = 0.0;
    double margin = 0.0;
    bool verdict = false;
    double detection_tol = kClosedFormDetectionTol;
    FrSource f_r_source = FrSource::ClosedForm;
    bool approximate = false;
};

/// margin = expectation - f_r; verdict iff margin > detection_tol.
WitnessReport make_witness_report(int r, double f_r, double expectation, FrSource source,
                                  bool approximate, std::optional<double> detection_tol = {});

WitnessReport witness_verdict(const GammaOperator &op, double rho_expectation, int r,
                              std::optional<double> detection_tol = {},
                              const FrGammaOptions &options = {});

WitnessReport witness_verdict(const ProjectorOperator &op, double rho_expectation, int r,
                              std::optional<double> detection_tol = {});

}  // namespace schmidtnum
