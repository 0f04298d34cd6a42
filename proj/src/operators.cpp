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

#include "schmidtnum/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schmidtnum/error.hpp"

namespace schmidtnum {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kImagTol = 1e-8;

void require_hermitian(const ComplexMatrix &m, double tol, std::string_view what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
    }
    numerics::require_finite(m, what);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
    }
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

double real_checked(Complex z) {
    if (std::abs(z.imag()) > kImagTol) {
        throw Error(ErrorCode::NotReal,
                    "expectation value has imaginary part " + std::to_string(z.imag()));
    }
    return z.real();
}

void require_delta_phi(double delta_phi, bool allow_zero) {
    const bool ok = allow_zero ? (delta_phi >= 0.0) : (delta_phi > 0.0);
    if (!ok || delta_phi > std::numbers::pi) {
        throw Error(ErrorCode::BadParameter, allow_zero ? "delta_phi must lie in [0, pi]"
                                                        : "delta_phi must lie in (0, pi]");
    }
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::BadParameter, "epsilon must lie in (0, 1)");
    }
}

void require_cutoff(int cutoff) {
    if (cutoff < 0) {
        throw Error(ErrorCode::BadParameter, "cutoff must be nonnegative");
    }
}

// Neumaier compensated summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

DenseOperator DenseOperator::from_matrix(ComplexMatrix matrix, int d_a, int d_b) {
    if (d_a < 1 || d_b < 1 || matrix.rows() != static_cast<Eigen::Index>(d_a) * d_b) {
        throw Error(ErrorCode::DimensionMismatch, "dense operator must be (d_a d_b) square");
    }
    numerics::require_finite(matrix, "dense operator");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    require_hermitian(matrix, kHermitianTol * scale, "dense operator");
    return DenseOperator(hermitian_part(matrix), d_a, d_b);
}

DenseOperator DenseOperator::identity(int d_a, int d_b) {
    if (d_a < 1 || d_b < 1) {
        throw Error(ErrorCode::BadParameter, "subsystem dimensions must be positive");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(d_a) * d_b;
    return DenseOperator(ComplexMatrix::Identity(dim, dim), d_a, d_b);
}

GammaOperator GammaOperator::from_matrix(ComplexMatrix gamma) {
    require_hermitian(gamma, kHermitianTol, "gamma matrix");
    return GammaOperator(hermitian_part(gamma));
}

DenseOperator GammaOperator::to_dense(int d_a, int d_b) const {
    if (n() > std::min(d_a, d_b)) {
        throw Error(ErrorCode::DimensionMismatch, "gamma does not fit into min(d_a, d_b)");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(d_a) * d_b;
    ComplexMatrix dense = ComplexMatrix::Zero(dim, dim);
    for (int m = 0; m < n(); ++m) {
        for (int k = 0; k < n(); ++k) {
            dense(m * d_b + m, k * d_b + k) = gamma_(m, k);
        }
    }
    return DenseOperator::from_matrix(std::move(dense), d_a, d_b);
}

ProjectorOperator::ProjectorOperator(PureState target, double rank_tol)
    : target_(std::move(target)), schmidt_(schmidt_decompose(target_, rank_tol)) {}

DenseOperator ProjectorOperator::to_dense() const {
    const ComplexVector v = target_.vector();
    return DenseOperator::from_matrix(v * v.adjoint(), target_.d_a(), target_.d_b());
}

RotatedGamma projector_as_gamma(const ProjectorOperator &projector) {
    const SchmidtDecomposition &s = projector.schmidt();
    const ComplexVector kappa = s.coefficients.cast<Complex>();
    return RotatedGamma{GammaOperator::from_matrix(kappa * kappa.adjoint()), s.left_basis,
                        s.right_basis};
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

GammaOperator tmsv_gamma(double epsilon, double delta_phi, int cutoff) {
    require_epsilon(epsilon);
    require_delta_phi(delta_phi, true);
    require_cutoff(cutoff);
    const int n = cutoff + 1;
    RealVector powers(n);
    powers(0) = 1.0;
    for (int k = 1; k < n; ++k) {
        powers(k) = powers(k - 1) * epsilon;
    }
    const double norm = 1.0 - epsilon * epsilon;
    ComplexMatrix g(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            g(m, k) = norm * powers(m) * powers(k) * sinc(delta_phi * (m - k));
        }
    }
    return GammaOperator::from_matrix(std::move(g));
}

GammaOperator flat_sinc_gamma(double delta_phi, int cutoff) {
    require_delta_phi(delta_phi, false);
    require_cutoff(cutoff);
    const int n = cutoff + 1;
    ComplexMatrix g(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            g(m, k) = sinc(delta_phi * (m - k));
        }
    }
    return GammaOperator::from_matrix(std::move(g));
}

DiagonalMixedState DiagonalMixedState::tmsv_phase_randomized(double epsilon, double delta_phi,
                                                             int cutoff) {
    // Same matrix elements as the phase-averaged projector.
    return DiagonalMixedState(tmsv_gamma(epsilon, delta_phi, cutoff).gamma());
}

DiagonalMixedState DiagonalMixedState::mixture(const std::vector<double> &weights,
                                               const std::vector<ComplexVector> &vectors) {
    if (weights.empty() || weights.size() != vectors.size()) {
        throw Error(ErrorCode::DimensionMismatch, "need one vector per weight");
    }
    const Eigen::Index n = vectors.front().size();
    double total = 0.0;
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0.0)) {
            throw Error(ErrorCode::BadParameter, "mixture weights must be nonnegative");
        }
        if (vectors[k].size() != n || n == 0) {
            throw Error(ErrorCode::DimensionMismatch, "mixture vectors differ in length");
        }
        const double norm = vectors[k].norm();
        if (!(norm > 0.0)) {
            throw Error(ErrorCode::ZeroState, "mixture vector vanishes");
        }
        const ComplexVector c = vectors[k] / norm;
        rho += weights[k] * (c * c.adjoint());
        total += weights[k];
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::BadParameter, "mixture weights must sum to 1");
    }
    return DiagonalMixedState(std::move(rho));
}

double expectation_pure(const GammaOperator &op, const PureState &psi) {
    if (op.n() > std::min(psi.d_a(), psi.d_b())) {
        throw Error(ErrorCode::DimensionMismatch, "gamma operator larger than the state space");
    }
    ComplexVector diag(op.n());
    for (int m = 0; m < op.n(); ++m) {
        diag(m) = psi.coeffs()(m, m);
    }
    return real_checked(diag.dot(op.gamma() * diag));
}

double expectation_pure(const DenseOperator &op, const PureState &psi) {
    if (op.d_a() != psi.d_a() || op.d_b() != psi.d_b()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and state dimensions differ");
    }
    const ComplexVector v = psi.vector();
    return real_checked(v.dot(op.matrix() * v));
}

double expectation_pure(const ProjectorOperator &op, const PureState &psi) {
    if (op.target().d_a() != psi.d_a() || op.target().d_b() != psi.d_b()) {
        throw Error(ErrorCode::DimensionMismatch, "projector and state dimensions differ");
    }
    // <phi|psi> = Tr(M_phi^dagger M_psi)
    const Complex overlap = (op.target().coeffs().conjugate().cwiseProduct(psi.coeffs())).sum();
    return std::norm(overlap);
}

MixedExpectation expectation_mixed(const GammaOperator &op, const DiagonalMixedState &rho) {
    if (op.n() != rho.n()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and state cutoffs differ");
    }
    // Smallest terms first for the truncated squeezed states.
    CompensatedSum re;
    CompensatedSum im;
    for (int m = op.n() - 1; m >= 0; --m) {
        for (int k = op.n() - 1; k >= 0; --k) {
            const Complex term = rho.density()(m, k) * op.gamma()(k, m);
            re.add(term.real());
            im.add(term.imag());
        }
    }
    return MixedExpectation{real_checked(Complex(re.value(), im.value())), rho.trace_deficit()};
}

DenseOperator witness_from(const DenseOperator &op, double lambda) {
    if (!std::isfinite(lambda)) {
        throw Error(ErrorCode::BadParameter, "witness offset must be finite");
    }
    const Eigen::Index dim = op.matrix().rows();
    return DenseOperator::from_matrix(lambda * ComplexMatrix::Identity(dim, dim) - op.matrix(),
                                      op.d_a(), op.d_b());
}

DenseOperator witness_from(const GammaOperator &op, int d_a, int d_b, double lambda) {
    return witness_from(op.to_dense(d_a, d_b), lambda);
}

}  // namespace schmidtnum
