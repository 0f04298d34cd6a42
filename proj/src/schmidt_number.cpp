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

#include "schmidtnum/schmidt_number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "schmidtnum/error.hpp"

namespace schmidtnum {

namespace {

void require_r(int r) {
    if (r < 1) {
        throw Error(ErrorCode::BadParameter, "r must be at least 1");
    }
}

// C(n, k), saturating at uint64 max.
std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (out > std::numeric_limits<std::uint64_t>::max() / num) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out = out * num / static_cast<std::uint64_t>(i);
    }
    return out;
}

ComplexMatrix principal(const ComplexMatrix &g, const std::vector<int> &idx) {
    const int r = static_cast<int>(idx.size());
    ComplexMatrix sub(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            sub(i, j) = g(idx[i], idx[j]);
        }
    }
    return sub;
}

double principal_top(const ComplexMatrix &g, const std::vector<int> &idx) {
    if (idx.size() == 1) {
        return g(idx[0], idx[0]).real();
    }
    if (idx.size() == 2) {
        const double p = g(idx[0], idx[0]).real();
        const double q = g(idx[1], idx[1]).real();
        return 0.5 * (p + q) + 0.5 * std::sqrt((p - q) * (p - q) + 4.0 * std::norm(g(idx[0], idx[1])));
    }
    return numerics::max_eigenvalue(principal(g, idx));
}

// Lexicographic successor of a k-subset of {0..n-1}; false after the last.
bool next_subset(std::vector<int> &idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) {
        --i;
    }
    if (i < 0) {
        return false;
    }
    ++idx[i];
    for (int j = i + 1; j < k; ++j) {
        idx[j] = idx[j - 1] + 1;
    }
    return true;
}

// The subset with lexicographic rank `rank` among k-subsets of {0..n-1}.
std::vector<int> unrank_subset(std::uint64_t rank, int n, int k) {
    std::vector<int> idx;
    idx.reserve(k);
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (int c = next;; ++c) {
            const std::uint64_t below = binomial(n - c - 1, k - slot - 1);
            if (rank < below) {
                idx.push_back(c);
                next = c + 1;
                break;
            }
            rank -= below;
        }
    }
    return idx;
}

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> subset;
};

Best scan_range(const ComplexMatrix &g, int r, std::uint64_t begin, std::uint64_t count) {
    Best best;
    if (count == 0) {
        return best;
    }
    const int n = static_cast<int>(g.rows());
    std::vector<int> idx = unrank_subset(begin, n, r);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double v = principal_top(g, idx);
        if (v > best.value) {
            best.value = v;
            best.subset = idx;
        }
        if (i + 1 < count) {
            next_subset(idx, n);
        }
    }
    return best;
}

Best enumerate(const ComplexMatrix &g, int r, std::uint64_t total, int threads) {
    const int requested =
        threads > 0 ? threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const std::uint64_t workers =
        std::clamp<std::uint64_t>(requested, 1, std::max<std::uint64_t>(total, 1));
    if (workers == 1) {
        return scan_range(g, r, 0, total);
    }
    std::vector<Best> partial(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(total, w * chunk);
        const std::uint64_t count = std::min(chunk, total - begin);
        pool.emplace_back([&, w, begin, count] { partial[w] = scan_range(g, r, begin, count); });
    }
    for (auto &t : pool) {
        t.join();
    }
    // Chunks are in lexicographic order, so a strict comparison keeps the
    // first maximizer regardless of thread count.
    Best best;
    for (auto &p : partial) {
        if (p.value > best.value) {
            best = std::move(p);
        }
    }
    return best;
}

Best hill_climb(const ComplexMatrix &g, int r) {
    const int n = static_cast<int>(g.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g(a, a).real() > g(b, b).real(); });
    Best best;
    best.subset.assign(order.begin(), order.begin() + r);
    std::sort(best.subset.begin(), best.subset.end());
    best.value = principal_top(g, best.subset);

    for (;;) {
        Best step = best;
        std::vector<bool> inside(n, false);
        for (int q : best.subset) {
            inside[q] = true;
        }
        for (int pos = 0; pos < r; ++pos) {
            for (int j = 0; j < n; ++j) {
                if (inside[j]) {
                    continue;
                }
                std::vector<int> cand = best.subset;
                cand[pos] = j;
                std::sort(cand.begin(), cand.end());
                const double v = principal_top(g, cand);
                if (v > step.value) {
                    step.value = v;
                    step.subset = std::move(cand);
                }
            }
        }
        if (!(step.value > best.value)) {
            return best;
        }
        best = std::move(step);
    }
}

}  // namespace

std::string_view fr_source_name(FrSource source) noexcept {
    switch (source) {
        case FrSource::ClosedForm: return "closed_form";
        case FrSource::Enumeration: return "enumeration";
        case FrSource::Greedy: return "greedy";
        case FrSource::Oracle: return "oracle";
    }
    return "closed_form";
}

FrSource parse_fr_source(std::string_view name) {
    for (FrSource s : {FrSource::ClosedForm, FrSource::Enumeration, FrSource::Greedy,
                       FrSource::Oracle}) {
        if (fr_source_name(s) == name) {
            return s;
        }
    }
    throw Error(ErrorCode::ParseError, "unknown f_r source '" + std::string(name) + "'");
}

double f_r_projector(const ProjectorOperator &projector, int r) {
    require_r(r);
    const RealVector &kappa = projector.schmidt().coefficients;
    const Eigen::Index used = std::min<Eigen::Index>(r, kappa.size());
    return kappa.head(used).squaredNorm();
}

PureState projector_rse_vector(const ProjectorOperator &projector, int r) {
    require_r(r);
    const SchmidtDecomposition &s = projector.schmidt();
    SchmidtDecomposition truncated = s;
    truncated.coefficients = s.coefficients.head(std::min<Eigen::Index>(r, s.coefficients.size()));
    return truncated.reconstruct();
}

double f1_gamma(const GammaOperator &op) { return op.gamma().diagonal().real().maxCoeff(); }

double f2_gamma(const GammaOperator &op) {
    const int n = op.n();
    if (n < 2) {
        throw Error(ErrorCode::TooSmall, "f_2 needs a gamma matrix of size at least 2");
    }
    const ComplexMatrix &g = op.gamma();
    double best = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
        for (int k = m + 1; k < n; ++k) {
            best = std::max(best, principal_top(g, {m, k}));
        }
    }
    return best;
}

FrGammaResult fr_gamma(const GammaOperator &op, int r, const FrGammaOptions &options) {
    require_r(r);
    const ComplexMatrix &g = op.gamma();
    const int k = std::min(r, op.n());
    const std::uint64_t total = binomial(op.n(), k);

    Best best;
    FrGammaResult out;
    if (total <= options.enumeration_cap) {
        best = enumerate(g, k, total, options.threads);
        out.source = FrSource::Enumeration;
        out.approximate = false;
    } else {
        best = hill_climb(g, k);
        out.source = FrSource::Greedy;
        out.approximate = true;
    }
    out.subset = std::move(best.subset);
    const numerics::HermitianEig eig = numerics::hermitian_eig(principal(g, out.subset));
    out.value = best.value;
    out.weights = eig.vectors.col(0);
    return out;
}

PureState rse_vector(const GammaOperator &op, const FrGammaResult &result) {
    ComplexVector diag = ComplexVector::Zero(op.n());
    for (std::size_t i = 0; i < result.subset.size(); ++i) {
        diag(result.subset[i]) = result.weights(static_cast<Eigen::Index>(i));
    }
    return diagonal_state(diag, op.n(), op.n());
}

double default_detection_tol(FrSource source) noexcept {
    return source == FrSource::Oracle ? kOracleDetectionTol : kClosedFormDetectionTol;
}

WitnessReport make_witness_report(int r, double f_r, double expectation, FrSource source,
                                  bool approximate, std::optional<double> detection_tol) {
    require_r(r);
    WitnessReport report;
    report.r = r;
    report.f_r = f_r;
    report.expectation = expectation;
    report.margin = expectation - f_r;
    report.detection_tol = detection_tol.value_or(default_detection_tol(source));
    report.verdict = report.margin > report.detection_tol;
    report.f_r_source = source;
    report.approximate = approximate;
    return report;
}

WitnessReport witness_verdict(const GammaOperator &op, double rho_expectation, int r,
                              std::optional<double> detection_tol,
                              const FrGammaOptions &options) {
    require_r(r);
    if (r == 1) {
        return make_witness_report(r, f1_gamma(op), rho_expectation, FrSource::ClosedForm, false,
                                   detection_tol);
    }
    if (r == 2 && op.n() >= 2) {
        return make_witness_report(r, f2_gamma(op), rho_expectation, FrSource::ClosedForm, false,
                                   detection_tol);
    }
    const FrGammaResult fr = fr_gamma(op, r, options);
    return make_witness_report(r, fr.value, rho_expectation, fr.source, fr.approximate,
                               detection_tol);
}

WitnessReport witness_verdict(const ProjectorOperator &op, double rho_expectation, int r,
                              std::optional<double> detection_tol) {
    return make_witness_report(r, f_r_projector(op, r), rho_expectation, FrSource::ClosedForm,
                               false, detection_tol);
}

}  // namespace schmidtnum
