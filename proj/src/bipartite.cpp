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

#include "schmidtnum/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidtnum/error.hpp"

namespace schmidtnum {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kZeroNorm = 1e-300;

void require_dims(int d_a, int d_b) {
    if (d_a < 1 || d_b < 1) {
        throw Error(ErrorCode::BadParameter, "subsystem dimensions must be positive");
    }
}

}  // namespace

PureState PureState::from_coefficients(ComplexMatrix coeffs) {
    require_dims(static_cast<int>(coeffs.rows()), static_cast<int>(coeffs.cols()));
    numerics::require_finite(coeffs, "state coefficients");
    const double norm = coeffs.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw Error(ErrorCode::BadParameter,
                    "state is not normalized (norm " + std::to_string(norm) + ")");
    }
    return PureState(std::move(coeffs));
}

PureState PureState::normalized(ComplexMatrix coeffs) {
    require_dims(static_cast<int>(coeffs.rows()), static_cast<int>(coeffs.cols()));
    numerics::require_finite(coeffs, "state coefficients");
    const double norm = coeffs.norm();
    if (!(norm > kZeroNorm)) {
        throw Error(ErrorCode::ZeroState, "state vector vanishes");
    }
    coeffs /= norm;
    return PureState(std::move(coeffs));
}

PureState PureState::from_vector(const ComplexVector &amplitudes, int d_a, int d_b) {
    require_dims(d_a, d_b);
    if (amplitudes.size() != static_cast<Eigen::Index>(d_a) * d_b) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count differs from d_a * d_b");
    }
    ComplexMatrix m(d_a, d_b);
    for (int a = 0; a < d_a; ++a) {
        for (int b = 0; b < d_b; ++b) {
            m(a, b) = amplitudes(a * d_b + b);
        }
    }
    return normalized(std::move(m));
}

ComplexVector PureState::vector() const {
    ComplexVector v(dim());
    for (int a = 0; a < d_a(); ++a) {
        for (int b = 0; b < d_b(); ++b) {
            v(a * d_b() + b) = coeffs_(a, b);
        }
    }
    return v;
}

PureState SchmidtDecomposition::reconstruct() const {
    const int r = rank();
    ComplexMatrix m = left_basis.leftCols(r) * coefficients.cast<Complex>().asDiagonal() *
                      right_basis.leftCols(r).transpose();
    return PureState::normalized(std::move(m));
}

SchmidtDecomposition schmidt_decompose(const PureState &psi, double rank_tol) {
    const numerics::SVDResult s = numerics::svd(psi.coeffs());
    const RealVector &sv = s.singular_values;
    if (sv.size() == 0 || !(sv(0) > kZeroNorm)) {
        throw Error(ErrorCode::ZeroState, "all singular values vanish");
    }
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) {
        ++rank;
    }
    SchmidtDecomposition out;
    out.left_basis = s.left;
    // M = U S W^dagger = sum_k s_k u_k (conj w_k)^T, so f_k = conj(w_k).
    out.right_basis = s.right.conjugate();
    out.coefficients = sv.head(rank);
    return out;
}

int schmidt_rank(const PureState &psi, double rank_tol) {
    return schmidt_decompose(psi, rank_tol).rank();
}

PureState tmsv_pure(double epsilon, double phase, int cutoff) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::BadParameter, "epsilon must lie in (0, 1)");
    }
    if (cutoff < 0 || !std::isfinite(phase)) {
        throw Error(ErrorCode::BadParameter, "cutoff must be nonnegative and phase finite");
    }
    const int n = cutoff + 1;
    const Complex q = std::polar(epsilon, phase);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    Complex amp(std::sqrt(1.0 - epsilon * epsilon), 0.0);
    for (int k = 0; k < n; ++k) {
        m(k, k) = amp;
        amp *= q;
    }
    return PureState::normalized(std::move(m));
}

double tmsv_norm_deficit(double epsilon, int cutoff) {
    return std::pow(epsilon, 2.0 * (cutoff + 1));
}

PureState apply_local(const PureState &psi, const ComplexMatrix &s, const ComplexMatrix &t) {
    if (s.rows() != psi.d_a() || s.cols() != psi.d_a() || t.rows() != psi.d_b() ||
        t.cols() != psi.d_b()) {
        throw Error(ErrorCode::DimensionMismatch, "local operators must match subsystem sizes");
    }
    return PureState::normalized(s * psi.coeffs() * t.transpose());
}

PureState product_state(const ComplexVector &u, const ComplexVector &v) {
    return PureState::normalized(u * v.transpose());
}

PureState diagonal_state(const ComplexVector &weights, int d_a, int d_b) {
    require_dims(d_a, d_b);
    if (weights.size() > std::min(d_a, d_b)) {
        throw Error(ErrorCode::DimensionMismatch, "more diagonal weights than min(d_a, d_b)");
    }
    ComplexMatrix m = ComplexMatrix::Zero(d_a, d_b);
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        m(k, k) = weights(k);
    }
    return PureState::normalized(std::move(m));
}

PureState maximally_entangled(int d) {
    require_dims(d, d);
    return diagonal_state(ComplexVector::Ones(d), d, d);
}

}  // namespace schmidtnum
