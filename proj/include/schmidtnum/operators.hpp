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

#include <vector>

#include "schmidtnum/bipartite.hpp"

namespace schmidtnum {

/// Hermitian operator on H_A (x) H_B as a dense (d_a d_b) x (d_a d_b) matrix,
/// composite index a * d_b + b.
class DenseOperator {
  public:
    static DenseOperator from_matrix(ComplexMatrix matrix, int d_a, int d_b);
    static DenseOperator identity(int d_a, int d_b);

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    int d_a() const noexcept { return d_a_; }
    int d_b() const noexcept { return d_b_; }

  private:
    DenseOperator(ComplexMatrix matrix, int d_a, int d_b)
        : matrix_(std::move(matrix)), d_a_(d_a), d_b_(d_b) {}

    ComplexMatrix matrix_;
    int d_a_;
    int d_b_;
};

/// L = sum_{m,n} gamma(m, n) |m, m><n, n|, stored as the n x n matrix gamma.
class GammaOperator {
  public:
    static GammaOperator from_matrix(ComplexMatrix gamma);

    const ComplexMatrix &gamma() const noexcept { return gamma_; }
    int n() const noexcept { return static_cast<int>(gamma_.rows()); }

    /// Embeds L into H_A (x) H_B; requires n <= min(d_a, d_b).
    DenseOperator to_dense(int d_a, int d_b) const;

  private:
    explicit GammaOperator(ComplexMatrix gamma) : gamma_(std::move(gamma)) {}

    ComplexMatrix gamma_;
};

/// |phi><phi| together with the Schmidt decomposition of phi.
class ProjectorOperator {
  public:
    explicit ProjectorOperator(PureState target, double rank_tol = kDefaultRankTol);

    const PureState &target() const noexcept { return target_; }
    const SchmidtDecomposition &schmidt() const noexcept { return schmidt_; }

    DenseOperator to_dense() const;

  private:
    PureState target_;
    SchmidtDecomposition schmidt_;
};

/// Gamma form of an operator in rotated local bases:
/// L = (U (x) V) [sum gamma(m,n) |m,m><n,n|] (U (x) V)^dagger with U = left,
/// V = right.
struct RotatedGamma {
    GammaOperator gamma;
    ComplexMatrix left;
    ComplexMatrix right;
};

RotatedGamma projector_as_gamma(const ProjectorOperator &projector);

/// sin(x)/x, with the series 1 - x^2/6 for |x| < 1e-8.
double sinc(double x);

/// Phase-averaged squeezed-vacuum projector:
/// gamma(m,n) = (1 - eps^2) eps^{m+n} sinc(delta_phi (m - n)), m, n = 0..cutoff.
GammaOperator tmsv_gamma(double epsilon, double delta_phi, int cutoff);

/// gamma(m,n) = sinc(delta_phi (m - n)), m, n = 0..cutoff.
GammaOperator flat_sinc_gamma(double delta_phi, int cutoff);

/// Mixed state supported on span{|m, m>}, stored as its density matrix in
/// that basis. Truncated states keep their trace deficit instead of being
/// renormalized.
class DiagonalMixedState {
  public:
    /// Phase-randomized squeezed vacuum, phase uniform on [-delta_phi, delta_phi].
    static DiagonalMixedState tmsv_phase_randomized(double epsilon, double delta_phi, int cutoff);

    /// sum_k weights[k] |c_k><c_k| with c_k coefficient vectors over |m, m>.
    /// Weights must be nonnegative and sum to 1 within 1e-10; each vector is
    /// normalized before mixing.
    static DiagonalMixedState mixture(const std::vector<double> &weights,
                                      const std::vector<ComplexVector> &vectors);

    const ComplexMatrix &density() const noexcept { return density_; }
    int n() const noexcept { return static_cast<int>(density_.rows()); }
    double trace() const { return density_.trace().real(); }
    double trace_deficit() const { return 1.0 - trace(); }

  private:
    explicit DiagonalMixedState(ComplexMatrix density) : density_(std::move(density)) {}

    ComplexMatrix density_;
};

struct MixedExpectation {
    double value;
    double trace_deficit;
};

double expectation_pure(const GammaOperator &op, const PureState &psi);
double expectation_pure(const DenseOperator &op, const PureState &psi);
double expectation_pure(const ProjectorOperator &op, const PureState &psi);

/// Tr(rho L) for both operator and state living on the |m, m> subspace.
MixedExpectation expectation_mixed(const GammaOperator &op, const DiagonalMixedState &rho);

/// W = lambda * I (x) I - L.
DenseOperator witness_from(const DenseOperator &op, double lambda);
DenseOperator witness_from(const GammaOperator &op, int d_a, int d_b, double lambda);

}  // namespace schmidtnum
