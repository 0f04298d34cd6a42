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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "schmidtnum/error.hpp"
#include "schmidtnum/schmidt_number.hpp"

namespace schmidtnum {

namespace {

// Factors of psi = sum_k |x_k, y_k>: column k of x is x_k, column k of y is y_k.
struct Factors {
    ComplexMatrix x;
    ComplexMatrix y;
};

struct RestartResult {
    double value = -std::numeric_limits<double>::infinity();
    Factors factors;
    bool converged = false;
    int iterations = 0;
};

// Linear map from the stacked free factor to psi with the other factor
// held fixed. For the free side B (fixed_is_a): column (k, b) is x_k (x) e_b.
// For the free side A: column (k, a) is e_a (x) y_k.
ComplexMatrix embedding(const ComplexMatrix &fixed, int d_a, int d_b, bool fixed_is_a) {
    const int r = static_cast<int>(fixed.cols());
    const int free_dim = fixed_is_a ? d_b : d_a;
    ComplexMatrix map = ComplexMatrix::Zero(static_cast<Eigen::Index>(d_a) * d_b,
                                            static_cast<Eigen::Index>(r) * free_dim);
    for (int k = 0; k < r; ++k) {
        for (int f = 0; f < free_dim; ++f) {
            const Eigen::Index col = static_cast<Eigen::Index>(k) * free_dim + f;
            if (fixed_is_a) {
                for (int a = 0; a < d_a; ++a) {
                    map(a * d_b + f, col) = fixed(a, k);
                }
            } else {
                for (int b = 0; b < d_b; ++b) {
                    map(f * d_b + b, col) = fixed(b, k);
                }
            }
        }
    }
    return map;
}

// Maximizes the generalized Rayleigh quotient for one side, writing the
// optimal factor into `free_side`. Returns the attained value.
double half_step(const ComplexMatrix &l, const ComplexMatrix &fixed, ComplexMatrix &free_side,
                 int d_a, int d_b, bool fixed_is_a) {
    const ComplexMatrix map = embedding(fixed, d_a, d_b, fixed_is_a);
    ComplexMatrix block = map.adjoint() * l * map;
    block = 0.5 * (block + block.adjoint()).eval();
    ComplexMatrix metric = map.adjoint() * map;
    metric = 0.5 * (metric + metric.adjoint()).eval();
    const numerics::HermitianEig eig = numerics::generalized_hermitian_eig(block, metric);
    const int r = static_cast<int>(fixed.cols());
    const int free_dim = fixed_is_a ? d_b : d_a;
    for (int k = 0; k < r; ++k) {
        for (int f = 0; f < free_dim; ++f) {
            free_side(f, k) = eig.vectors(static_cast<Eigen::Index>(k) * free_dim + f, 0);
        }
    }
    return eig.values(0);
}

void rebalance(Factors &f) {
    for (Eigen::Index k = 0; k < f.x.cols(); ++k) {
        const double nx = f.x.col(k).norm();
        const double ny = f.y.col(k).norm();
        if (nx > 0.0 && ny > 0.0) {
            const double s = std::sqrt(ny / nx);
            f.x.col(k) *= s;
            f.y.col(k) /= s;
        }
    }
}

RestartResult run_restart(const DenseOperator &op, int r, const OracleOptions &options,
                          int restart) {
    const int d_a = op.d_a();
    const int d_b = op.d_b();
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&](int rows) {
        ComplexMatrix m(rows, r);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                m(i, j) = Complex(re, im);
            }
        }
        return m;
    };

    RestartResult out;
    out.factors.x = draw(d_a);
    out.factors.y = draw(d_b);
    const ComplexMatrix &l = op.matrix();
    double previous = -std::numeric_limits<double>::infinity();
    for (int it = 1; it <= options.max_iters; ++it) {
        half_step(l, out.factors.x, out.factors.y, d_a, d_b, true);
        const double g = half_step(l, out.factors.y, out.factors.x, d_a, d_b, false);
        rebalance(out.factors);
        out.iterations = it;
        out.value = g;
        if (!std::isfinite(g)) {
            break;
        }
        if (std::abs(g - previous) < options.tol) {
            out.converged = true;
            break;
        }
        previous = g;
    }
    return out;
}

}  // namespace

RSESolution rse_residual(const DenseOperator &op, const PureState &psi, int r, double rank_tol) {
    if (r < 1) {
        throw Error(ErrorCode::BadParameter, "r must be at least 1");
    }
    if (op.d_a() != psi.d_a() || op.d_b() != psi.d_b()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and state dimensions differ");
    }
    const SchmidtDecomposition s = schmidt_decompose(psi, rank_tol);
    if (s.rank() > r) {
        throw Error(ErrorCode::RankTooHigh, "state has Schmidt rank " + std::to_string(s.rank()) +
                                                " > r = " + std::to_string(r));
    }
    const ComplexVector v = psi.vector();
    const ComplexVector lv = op.matrix() * v;
    const double g = v.dot(lv).real();
    const ComplexVector chi = lv - g * v;

    ComplexMatrix chi_coeffs(psi.d_a(), psi.d_b());
    for (int a = 0; a < psi.d_a(); ++a) {
        for (int b = 0; b < psi.d_b(); ++b) {
            chi_coeffs(a, b) = chi(a * psi.d_b() + b);
        }
    }
    // <e_k, f_k'|chi> = (U^dagger C conj(F))_{k k'}
    const ComplexMatrix overlaps =
        s.left_basis.adjoint() * chi_coeffs * s.right_basis.conjugate();

    RSESolution out;
    out.value = g;
    out.vector = psi;
    out.chi_norm = chi.norm();
    out.biorth_residual = overlaps.topLeftCorner(s.rank(), s.rank()).norm();
    return out;
}

RSESolution fr_oracle(const DenseOperator &op, int r, const OracleOptions &options) {
    if (r < 1 || r > std::min(op.d_a(), op.d_b())) {
        throw Error(ErrorCode::BadParameter, "r must lie in [1, min(d_a, d_b)]");
    }
    if (options.restarts < 1 || options.max_iters < 1 || !(options.tol > 0.0)) {
        throw Error(ErrorCode::BadParameter, "restarts, max_iters and tol must be positive");
    }

    std::vector<RestartResult> results(options.restarts);
    const int workers = std::clamp(options.threads > 0 ? options.threads
                                                       : static_cast<int>(std::thread::hardware_concurrency()),
                                   1, options.restarts);
    if (workers == 1) {
        for (int i = 0; i < options.restarts; ++i) {
            results[i] = run_restart(op, r, options, i);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next++; i < options.restarts; i = next++) {
                    results[i] = run_restart(op, r, options, i);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    // Reduction in restart order keeps the output independent of scheduling.
    int best = -1;
    for (int i = 0; i < options.restarts; ++i) {
        if (std::isfinite(results[i].value) && (best < 0 || results[i].value > results[best].value)) {
            best = i;
        }
    }
    if (best < 0) {
        throw Error(ErrorCode::NoConvergence, "no restart produced a finite value");
    }
    const RestartResult &winner = results[best];
    const PureState psi =
        PureState::normalized(winner.factors.x * winner.factors.y.transpose());
    RSESolution out = rse_residual(op, psi, r);
    out.converged = winner.converged;
    out.iterations = winner.iterations;
    out.best_restart = best;
    return out;
}

}  // namespace schmidtnum
