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

#include <cmath>

#include "gtest/gtest.h"

#include "schmidtnum/error.hpp"
#include "test_util.hpp"

using namespace schmidtnum;
using namespace schmidtnum::numerics;
using schmidtnum::testing::random_complex;
using schmidtnum::testing::code_of;
using schmidtnum::testing::random_hermitian;

TEST(hermitian_eig, identity) {
    const HermitianEig eig = hermitian_eig(ComplexMatrix::Identity(3, 3));
    ASSERT_EQ(eig.values.size(), 3);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(eig.values(i), 1.0, 1e-14);
    }
}

TEST(hermitian_eig, diagonal_sorted_descending) {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    const HermitianEig eig = hermitian_eig(a);
    EXPECT_NEAR(eig.values(0), 3.0, 1e-14);
    EXPECT_NEAR(eig.values(1), 2.0, 1e-14);
    EXPECT_NEAR(eig.values(2), 1.0, 1e-14);
    // Standard basis vectors up to phase: 3 -> e0, 2 -> e2, 1 -> e1.
    EXPECT_NEAR(std::abs(eig.vectors(0, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.vectors(2, 1)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.vectors(1, 2)), 1.0, 1e-14);
}

TEST(hermitian_eig, trace_equals_eigenvalue_sum) {
    std::mt19937_64 rng(11);
    const ComplexMatrix a = random_hermitian(rng, 5);
    double diag_sum = 0.0;
    for (int i = 0; i < 5; ++i) {
        diag_sum += a(i, i).real();
    }
    EXPECT_NEAR(hermitian_eig(a).values.sum(), diag_sum, 1e-10);
}

TEST(hermitian_eig, residuals_and_order) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 9;
        const ComplexMatrix a = random_hermitian(rng, n);
        const HermitianEig eig = hermitian_eig(a);
        for (int i = 0; i < n; ++i) {
            const ComplexVector v = eig.vectors.col(i);
            EXPECT_LE((a * v - eig.values(i) * v).norm(), 1e-10 * a.norm());
            if (i > 0) {
                EXPECT_GE(eig.values(i - 1), eig.values(i));
            }
        }
        EXPECT_LE((eig.vectors.adjoint() * eig.vectors - ComplexMatrix::Identity(n, n)).norm(),
                  1e-10);
    }
}

TEST(hermitian_eig, rayleigh_bound) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_hermitian(rng, 6);
        const double top = hermitian_eig(a).values(0);
        double best = -1e300;
        for (int s = 0; s < 1000; ++s) {
            ComplexVector v = random_complex(rng, 6, 1);
            v.normalize();
            best = std::max(best, v.dot(a * v).real());
        }
        EXPECT_GE(top - best, 0.0);
    }
}

TEST(hermitian_eig, errors) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    EXPECT_EQ(code_of([&] { hermitian_eig(a); }), ErrorCode::NotHermitian);
    ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    b(1, 1) = std::nan("");
    EXPECT_EQ(code_of([&] { hermitian_eig(b); }), ErrorCode::NonFinite);
}

TEST(svd, identity) {
    const SVDResult s = svd(ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(s.singular_values(0), 1.0, 1e-14);
    EXPECT_NEAR(s.singular_values(1), 1.0, 1e-14);
}

TEST(svd, rank_one_outer_product) {
    std::mt19937_64 rng(21);
    ComplexVector u = random_complex(rng, 4, 1);
    ComplexVector v = random_complex(rng, 3, 1);
    u.normalize();
    v.normalize();
    const SVDResult s = svd(u * v.adjoint());
    EXPECT_NEAR(s.singular_values(0), 1.0, 1e-12);
    for (Eigen::Index i = 1; i < s.singular_values.size(); ++i) {
        EXPECT_NEAR(s.singular_values(i), 0.0, 1e-12);
    }
}

TEST(svd, frobenius_identity) {
    std::mt19937_64 rng(22);
    const ComplexMatrix a = random_complex(rng, 4, 3);
    double direct = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) {
            direct += std::norm(a(i, j));
        }
    }
    EXPECT_NEAR(svd(a).singular_values.squaredNorm(), direct, 1e-10);
}

TEST(svd, reconstruction_up_to_condition_1e8) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 5;
        const ComplexMatrix u = schmidtnum::testing::random_unitary(rng, n);
        const ComplexMatrix v = schmidtnum::testing::random_unitary(rng, n);
        RealVector sigma(n);
        for (int i = 0; i < n; ++i) {
            sigma(i) = std::pow(1e-8, static_cast<double>(i) / (n - 1));
        }
        const ComplexMatrix a = u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
        const SVDResult s = svd(a);
        const ComplexMatrix back =
            s.left * s.singular_values.cast<Complex>().asDiagonal() * s.right.adjoint();
        EXPECT_LE((a - back).norm(), 1e-10 * a.norm());
        for (int i = 1; i < n; ++i) {
            EXPECT_GE(s.singular_values(i - 1), s.singular_values(i));
        }
    }
}

TEST(generalized_hermitian_eig, identity_metric_matches_ordinary) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 6;
        const ComplexMatrix a = random_hermitian(rng, n);
        const HermitianEig g = generalized_hermitian_eig(a, ComplexMatrix::Identity(n, n));
        const HermitianEig h = hermitian_eig(a);
        ASSERT_EQ(g.values.size(), n);
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(g.values(i), h.values(i), 1e-12);
        }
    }
}

TEST(generalized_hermitian_eig, rank_deficient_metric) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 2.0;
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(0, 0) = 1.0;
    const HermitianEig g = generalized_hermitian_eig(a, b);
    ASSERT_EQ(g.values.size(), 1);
    EXPECT_NEAR(g.values(0), 2.0, 1e-14);
    EXPECT_NEAR(std::abs(g.vectors(0, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(g.vectors(1, 0)), 0.0, 1e-14);
}

TEST(generalized_hermitian_eig, matches_cholesky_whitening) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 5;
        const ComplexMatrix a = random_hermitian(rng, n);
        const ComplexMatrix m = random_complex(rng, n, n);
        const ComplexMatrix b = m.adjoint() * m;

        // Independent route: B = C C^dagger, eigenvalues of C^{-1} A C^{-dagger}.
        Eigen::LLT<ComplexMatrix> llt(b);
        const ComplexMatrix cinv = llt.matrixL().solve(ComplexMatrix::Identity(n, n));
        const ComplexMatrix whitened = cinv * a * cinv.adjoint();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(0.5 * (whitened + whitened.adjoint()));

        const HermitianEig g = generalized_hermitian_eig(a, b);
        ASSERT_EQ(g.values.size(), n);
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(g.values(i), ref.eigenvalues()(n - 1 - i), 1e-8);
            const ComplexVector v = g.vectors.col(i);
            EXPECT_NEAR(v.dot(b * v).real(), 1.0, 1e-8);
            EXPECT_LE((a * v - g.values(i) * (b * v)).norm(), 1e-8 * (a.norm() + b.norm()));
        }
    }
}

TEST(generalized_hermitian_eig, errors) {
    const ComplexMatrix a = ComplexMatrix::Identity(2, 2);
    ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    b(1, 1) = -1.0;
    EXPECT_EQ(code_of([&] { generalized_hermitian_eig(a, b); }), ErrorCode::MetricNotPSD);
    EXPECT_EQ(code_of([&] { generalized_hermitian_eig(a, ComplexMatrix::Zero(2, 2)); }),
              ErrorCode::DegenerateMetric);
    EXPECT_EQ(code_of([&] { generalized_hermitian_eig(a, ComplexMatrix::Identity(3, 3)); }),
              ErrorCode::DimensionMismatch);
}
