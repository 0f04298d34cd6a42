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

#include "schmidtnum/numerics.hpp"

namespace schmidtnum {

/// Normalized pure state on H_A (x) H_B stored as its coefficient matrix:
/// entry (a, b) is the amplitude of |a, b>. The composite vector index of
/// |a, b> is a * d_b + b everywhere in the library.
class PureState {
  public:
    /// Takes coefficients that are already normalized (Frobenius norm 1
    /// within 1e-10); throws BadParameter otherwise.
    static PureState from_coefficients(ComplexMatrix coeffs);

    /// Rescales arbitrary nonzero coefficients to unit norm.
    static PureState normalized(ComplexMatrix coeffs);

    static PureState from_vector(const ComplexVector &amplitudes, int d_a, int d_b);

    const ComplexMatrix &coeffs() const noexcept { return coeffs_; }
    int d_a() const noexcept { return static_cast<int>(coeffs_.rows()); }
    int d_b() const noexcept { return static_cast<int>(coeffs_.cols()); }
    int dim() const noexcept { return d_a() * d_b(); }

    /// Flattened amplitudes in composite order.
    ComplexVector vector() const;

  private:
    explicit PureState(ComplexMatrix coeffs) : coeffs_(std::move(coeffs)) {}

    ComplexMatrix coeffs_;
};

/// psi = sum_k coefficients[k] |e_k, f_k> where e_k is column k of
/// left_basis and f_k is column k of right_basis. Both bases are complete
/// (d_a x d_a and d_b x d_b); only the first rank() columns carry weight.
struct SchmidtDecomposition {
    ComplexMatrix left_basis;
    ComplexMatrix right_basis;
    RealVector coefficients;

    int rank() const noexcept { return static_cast<int>(coefficients.size()); }
    PureState reconstruct() const;
};

SchmidtDecomposition schmidt_decompose(const PureState &psi, double rank_tol = kDefaultRankTol);

int schmidt_rank(const PureState &psi, double rank_tol = kDefaultRankTol);

/// Two-mode squeezed vacuum truncated to photon numbers 0..cutoff on a
/// (cutoff+1) x (cutoff+1) space, amplitudes sqrt(1-eps^2) (eps e^{i phase})^k
/// on |k, k>, renormalized after truncation.
PureState tmsv_pure(double epsilon, double phase, int cutoff);

/// Probability weight lost by truncating the squeezed vacuum at `cutoff`,
/// i.e. eps^{2(cutoff+1)}.
double tmsv_norm_deficit(double epsilon, int cutoff);

/// (S (x) T)|psi>, renormalized; coefficient matrix S * M * T^T.
PureState apply_local(const PureState &psi, const ComplexMatrix &s, const ComplexMatrix &t);

PureState product_state(const ComplexVector &u, const ComplexVector &v);

/// sum_k w_k |k, k> on d_a x d_b, renormalized.
PureState diagonal_state(const ComplexVector &weights, int d_a, int d_b);

/// (1/sqrt(d)) sum_{k<d} |k, k>.
PureState maximally_entangled(int d);

}  // namespace schmidtnum
