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

#include "schmidtnum/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidtnum/error.hpp"

namespace schmidtnum::numerics {

namespace {

void require_square(const ComplexMatrix &a, std::string_view what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " must be a nonempty square matrix");
    }
}

// Eigen returns ascending order; flip to descending.
HermitianEig descending(const RealVector &values, const ComplexMatrix &vectors) {
    HermitianEig out;
    out.values = values.reverse();
    out.vectors = vectors.rowwise().reverse();
    return out;
}

}  // namespace

void require_finite(const ComplexMatrix &a, std::string_view what) {
    if (!a.allFinite()) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or infinite entries");
    }
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).norm() <= tol * a.norm();
}

HermitianEig hermitian_eig(const ComplexMatrix &a, double tol) {
    require_square(a, "hermitian_eig input");
    require_finite(a, "hermitian_eig input");
    if (!is_hermitian(a, tol)) {
        throw Error(ErrorCode::NotHermitian, "matrix deviates from its adjoint beyond tolerance");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "self-adjoint eigensolver failed");
    }
    return descending(solver.eigenvalues(), solver.eigenvectors());
}

double max_eigenvalue(const ComplexMatrix &a) {
    if (a.rows() == 1) {
        return a(0, 0).real();
    }
    if (a.rows() == 2) {
        const double p = a(0, 0).real();
        const double q = a(1, 1).real();
        return 0.5 * (p + q) + 0.5 * std::sqrt((p - q) * (p - q) + 4.0 * std::norm(a(0, 1)));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(a.rows() - 1);
}

SVDResult svd(const ComplexMatrix &a) {
    if (a.size() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "svd input is empty");
    }
    require_finite(a, "svd input");
    Eigen::BDCSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SVDResult out;
    out.left = solver.matrixU();
    out.singular_values = solver.singularValues();
    out.right = solver.matrixV();
    return out;
}

HermitianEig generalized_hermitian_eig(const ComplexMatrix &a, const ComplexMatrix &b,
                                       double rank_tol) {
    require_square(a, "operator block");
    require_square(b, "metric block");
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and metric differ in size");
    }
    require_finite(a, "operator block");
    require_finite(b, "metric block");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> metric(b);
    const RealVector &mu = metric.eigenvalues();
    const double scale = std::max(std::abs(mu(0)), std::abs(mu(mu.size() - 1)));
    if (mu(0) < -rank_tol * scale) {
        throw Error(ErrorCode::MetricNotPSD, "metric has a negative eigenvalue");
    }
    const double top = mu(mu.size() - 1);
    if (!(top > 0.0)) {
        throw Error(ErrorCode::DegenerateMetric, "metric has numerical rank 0");
    }

    // Whitening W = Q_k diag(mu_k^{-1/2}) over the retained range of B.
    const double cut = rank_tol * top;
    Eigen::Index first = 0;
    while (first < mu.size() && mu(first) <= cut) {
        ++first;
    }
    const Eigen::Index kept = mu.size() - first;
    ComplexMatrix whiten = metric.eigenvectors().rightCols(kept);
    for (Eigen::Index j = 0; j < kept; ++j) {
        whiten.col(j) /= std::sqrt(mu(first + j));
    }

    ComplexMatrix reduced = whiten.adjoint() * a * whiten;
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(reduced);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "reduced eigensolver failed");
    }
    HermitianEig out = descending(solver.eigenvalues(), solver.eigenvectors());
    out.vectors = (whiten * out.vectors).eval();
    return out;
}

}  // namespace schmidtnum::numerics
