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

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace schmidtnum {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-10;

}  // namespace schmidtnum

namespace schmidtnum::numerics {

/// Eigenpairs with eigenvalues sorted descending; column i of `vectors`
/// belongs to `values[i]`.
struct HermitianEig {
    RealVector values;
    ComplexMatrix vectors;
};

/// A = left * diag(singular_values) * right^dagger, both factors square and
/// unitary, singular values descending.
struct SVDResult {
    ComplexMatrix left;
    RealVector singular_values;
    ComplexMatrix right;
};

// Throws NonFinite if any entry is NaN or Inf.
void require_finite(const ComplexMatrix &a, std::string_view what);

bool is_hermitian(const ComplexMatrix &a, double tol);

HermitianEig hermitian_eig(const ComplexMatrix &a, double tol = kDefaultTol);

double max_eigenvalue(const ComplexMatrix &a);

SVDResult svd(const ComplexMatrix &a);

/// Solves A v = g B v on the numerical range of the positive semi-definite
/// metric B. Both matrices are projected onto B's eigenvectors whose
/// eigenvalue exceeds rank_tol * max eigenvalue, and the returned vectors are
/// B-normalized (v^dagger B v = 1). The result has as many eigenpairs as the
/// numerical rank of B.
HermitianEig generalized_hermitian_eig(const ComplexMatrix &a, const ComplexMatrix &b,
                                       double rank_tol = kDefaultRankTol);

}  // namespace schmidtnum::numerics
