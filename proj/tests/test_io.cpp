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

#include "schmidtnum/io.hpp"

#include <cmath>
#include <variant>

#include "gtest/gtest.h"

#include "schmidtnum/error.hpp"
#include "test_util.hpp"

using namespace schmidtnum;
using schmidtnum::testing::code_of;
using schmidtnum::testing::random_complex;
using schmidtnum::testing::random_hermitian;

TEST(io_json, pure_state_round_trip) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi =
            PureState::normalized(random_complex(rng, 1 + trial % 4, 1 + trial % 3));
        const PureState back = io::pure_state_from_json(io::parse(io::to_json(psi).dump()));
        ASSERT_EQ(back.d_a(), psi.d_a());
        ASSERT_EQ(back.d_b(), psi.d_b());
        EXPECT_LT((back.coeffs() - psi.coeffs()).norm(), 1e-15);
    }
}

TEST(io_json, operators_round_trip) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const GammaOperator g = GammaOperator::from_matrix(random_hermitian(rng, 1 + trial % 5));
        const auto parsed = io::operator_from_json(io::parse(io::to_json(g).dump()));
        ASSERT_TRUE(std::holds_alternative<GammaOperator>(parsed));
        EXPECT_EQ(std::get<GammaOperator>(parsed).gamma(), g.gamma());

        const DenseOperator d = DenseOperator::from_matrix(random_hermitian(rng, 6), 2, 3);
        const auto parsed_dense = io::operator_from_json(io::parse(io::to_json(d).dump()));
        ASSERT_TRUE(std::holds_alternative<DenseOperator>(parsed_dense));
        EXPECT_EQ(std::get<DenseOperator>(parsed_dense).matrix(), d.matrix());
        EXPECT_EQ(std::get<DenseOperator>(parsed_dense).d_b(), 3);
    }
}

TEST(io_json, real_matrix_without_imaginary_part) {
    const GammaOperator g = io::gamma_from_json(io::parse(R"({"n": 2, "re": [[1, 0.5], [0.5, 0]]})"));
    EXPECT_EQ(g.gamma()(0, 1), Complex(0.5, 0.0));
    const PureState psi = io::pure_state_from_json(
        io::parse(R"({"d_a": 2, "d_b": 2, "re": [[1, 0], [0, 1]]})"));
    EXPECT_NEAR(psi.coeffs()(1, 1).real(), std::sqrt(0.5), 1e-15);
}

TEST(io_json, parse_errors) {
    EXPECT_EQ(code_of([] { io::parse("{not json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { io::gamma_from_json(io::parse(R"({"n": 2, "re": [[1, 0]]})")); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { io::gamma_from_json(io::parse(R"({"n": 0, "re": []})")); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { io::gamma_from_json(io::parse(R"({"n": 1, "re": [["x"]]})")); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { io::operator_from_json(io::parse(R"({"re": [[1]]})")); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] {
                  io::gamma_from_json(io::parse(R"({"n": 2, "re": [[1, 1], [0, 1]]})"));
              }),
              ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([] { io::pure_state_from_json(io::parse(R"({"d_a": 1, "d_b": 1, "re": [[0]]})")); }),
              ErrorCode::ZeroState);
}

TEST(io_json, witness_report_round_trip) {
    const WitnessReport rep =
        make_witness_report(3, 0.987654321, 0.99, FrSource::Greedy, true, 1e-7);
    const WitnessReport back = io::witness_report_from_json(io::parse(io::to_json(rep).dump()));
    EXPECT_EQ(back.r, rep.r);
    EXPECT_EQ(back.f_r, rep.f_r);
    EXPECT_EQ(back.expectation, rep.expectation);
    EXPECT_EQ(back.margin, rep.margin);
    EXPECT_EQ(back.verdict, rep.verdict);
    EXPECT_EQ(back.detection_tol, rep.detection_tol);
    EXPECT_EQ(back.f_r_source, rep.f_r_source);
    EXPECT_EQ(back.approximate, rep.approximate);
}

TEST(io_json, threshold_report_round_trip) {
    tmsv::ThresholdReport rep;
    rep.scenario.epsilon = 0.82;
    rep.scenario.cutoff = 64;
    rep.scenario.kind = tmsv::OperatorKind::FlatSinc;
    rep.scenario.r = 2;
    rep.threshold_deg = 103.72265625;
    rep.crossings_deg = {12.5, 103.72265625};
    rep.approximate_f_r = true;
    const tmsv::ThresholdReport back =
        io::threshold_report_from_json(io::parse(io::to_json(rep).dump()));
    EXPECT_EQ(back.scenario.epsilon, rep.scenario.epsilon);
    EXPECT_EQ(back.scenario.cutoff, rep.scenario.cutoff);
    EXPECT_EQ(back.scenario.kind, rep.scenario.kind);
    EXPECT_EQ(back.scenario.r, rep.scenario.r);
    EXPECT_EQ(back.threshold_deg, rep.threshold_deg);
    EXPECT_EQ(back.crossings_deg, rep.crossings_deg);
    EXPECT_TRUE(back.approximate_f_r);
}

TEST(io_json, scenario_defaults) {
    const tmsv::Scenario s = io::scenario_from_json(io::parse(R"({"epsilon": 0.5})"));
    EXPECT_EQ(s.cutoff, 100);
    EXPECT_EQ(s.r, 1);
    EXPECT_EQ(s.kind, tmsv::OperatorKind::Matched);
    EXPECT_EQ(code_of([] { io::scenario_from_json(io::parse(R"({"epsilon": 0.5, "operator": "x"})")); }),
              ErrorCode::ParseError);
}

TEST(io_csv, margin_curve_round_trip) {
    tmsv::Scenario s;
    s.epsilon = 1.0 / 3.0;
    s.r = 2;
    const tmsv::MarginCurve curve = tmsv::margin_curve(s, tmsv::angle_grid(5.0));
    const std::string csv = io::margin_curve_csv(curve);
    EXPECT_EQ(csv.rfind("delta_phi_deg,expectation,f_r,margin\n", 0), 0u);
    const tmsv::MarginCurve back = io::margin_curve_from_csv(csv);
    ASSERT_EQ(back.delta_phi_deg.size(), curve.delta_phi_deg.size());
    for (std::size_t i = 0; i < curve.margin.size(); ++i) {
        EXPECT_NEAR(back.delta_phi_deg[i], curve.delta_phi_deg[i], 1e-11);
        EXPECT_NEAR(back.expectation[i], curve.expectation[i], 1e-11);
        EXPECT_NEAR(back.f_r[i], curve.f_r[i], 1e-11);
        EXPECT_NEAR(back.margin[i], curve.margin[i], 1e-11);
    }
}

TEST(io_csv, malformed_input) {
    EXPECT_EQ(code_of([] { io::margin_curve_from_csv("a,b\n1,2\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] {
                  io::margin_curve_from_csv("delta_phi_deg,expectation,f_r,margin\n1,2,3\n");
              }),
              ErrorCode::ParseError);
}

TEST(io_json, oracle_solution_fields) {
    RSESolution sol = rse_residual(ProjectorOperator(maximally_entangled(2)).to_dense(),
                                   maximally_entangled(2), 2);
    const io::Json j = io::to_json(sol);
    EXPECT_EQ(j.at("schmidt_rank").get<int>(), 2);
    EXPECT_NEAR(j.at("value").get<double>(), 1.0, 1e-14);
    EXPECT_EQ(j.at("schmidt_coefficients").size(), 2u);
    EXPECT_TRUE(j.at("vector").contains("re"));
}
