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

#include <cstdio>
#include <sstream>

#include "schmidtnum/error.hpp"

namespace schmidtnum::io {

namespace {

Json real_rows(const ComplexMatrix &m, bool imag) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json matrix_fields(const ComplexMatrix &m) {
    return Json{{"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

// Missing "im" means a real matrix.
ComplexMatrix read_matrix(const Json &j, Eigen::Index rows, Eigen::Index cols) {
    const Json &re = j.at("re");
    const bool has_im = j.contains("im");
    if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != rows) {
        throw Error(ErrorCode::ParseError, "'re' must hold " + std::to_string(rows) + " rows");
    }
    if (has_im && (!j["im"].is_array() || static_cast<Eigen::Index>(j["im"].size()) != rows)) {
        throw Error(ErrorCode::ParseError, "'im' must hold " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json &rr = re[i];
        if (!rr.is_array() || static_cast<Eigen::Index>(rr.size()) != cols ||
            (has_im && static_cast<Eigen::Index>(j["im"][i].size()) != cols)) {
            throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " has wrong length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const double im = has_im ? j["im"][i][k].get<double>() : 0.0;
            m(i, k) = Complex(rr[k].get<double>(), im);
        }
    }
    return m;
}

int positive_int(const Json &j, const char *key) {
    const int v = j.at(key).get<int>();
    if (v < 1) {
        throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be positive");
    }
    return v;
}

// Rethrows JSON library failures as ParseError.
template <typename F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string format12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Json parse(std::string_view text) {
    return guarded([&] { return Json::parse(text.begin(), text.end()); });
}

Json to_json(const PureState &psi) {
    Json j = matrix_fields(psi.coeffs());
    j["d_a"] = psi.d_a();
    j["d_b"] = psi.d_b();
    return j;
}

PureState pure_state_from_json(const Json &j) {
    return guarded([&] {
        const int d_a = positive_int(j, "d_a");
        const int d_b = positive_int(j, "d_b");
        return PureState::normalized(read_matrix(j, d_a, d_b));
    });
}

Json to_json(const GammaOperator &op) {
    Json j = matrix_fields(op.gamma());
    j["n"] = op.n();
    return j;
}

GammaOperator gamma_from_json(const Json &j) {
    return guarded([&] {
        const int n = positive_int(j, "n");
        return GammaOperator::from_matrix(read_matrix(j, n, n));
    });
}

Json to_json(const DenseOperator &op) {
    Json j = matrix_fields(op.matrix());
    j["d_a"] = op.d_a();
    j["d_b"] = op.d_b();
    return j;
}

DenseOperator dense_from_json(const Json &j) {
    return guarded([&] {
        const int d_a = positive_int(j, "d_a");
        const int d_b = positive_int(j, "d_b");
        const Eigen::Index dim = static_cast<Eigen::Index>(d_a) * d_b;
        return DenseOperator::from_matrix(read_matrix(j, dim, dim), d_a, d_b);
    });
}

std::variant<GammaOperator, DenseOperator> operator_from_json(const Json &j) {
    if (j.is_object() && j.contains("n")) {
        return gamma_from_json(j);
    }
    if (j.is_object() && j.contains("d_a") && j.contains("d_b")) {
        return dense_from_json(j);
    }
    throw Error(ErrorCode::ParseError, "operator JSON needs either 'n' or 'd_a'/'d_b'");
}

Json to_json(const SchmidtDecomposition &s) {
    Json coeffs = Json::array();
    for (Eigen::Index k = 0; k < s.coefficients.size(); ++k) {
        coeffs.push_back(s.coefficients(k));
    }
    const int r = s.rank();
    return Json{{"rank", r},
                {"coefficients", coeffs},
                {"left_basis", matrix_fields(s.left_basis.leftCols(r))},
                {"right_basis", matrix_fields(s.right_basis.leftCols(r))}};
}

Json to_json(const WitnessReport &report) {
    return Json{{"r", report.r},
                {"f_r", report.f_r},
                {"expectation", report.expectation},
                {"margin", report.margin},
                {"verdict", report.verdict},
                {"detection_tol", report.detection_tol},
                {"f_r_source", fr_source_name(report.f_r_source)},
                {"approximate", report.approximate}};
}

WitnessReport witness_report_from_json(const Json &j) {
    return guarded([&] {
        WitnessReport r;
        r.r = j.at("r").get<int>();
        r.f_r = j.at("f_r").get<double>();
        r.expectation = j.at("expectation").get<double>();
        r.margin = j.at("margin").get<double>();
        r.verdict = j.at("verdict").get<bool>();
        r.detection_tol = j.value("detection_tol", default_detection_tol(FrSource::ClosedForm));
        r.f_r_source = parse_fr_source(j.at("f_r_source").get<std::string>());
        r.approximate = j.at("approximate").get<bool>();
        return r;
    });
}

Json to_json(const RSESolution &solution) {
    const SchmidtDecomposition s = schmidt_decompose(solution.vector);
    Json coeffs = Json::array();
    for (Eigen::Index k = 0; k < s.coefficients.size(); ++k) {
        coeffs.push_back(s.coefficients(k));
    }
    return Json{{"value", solution.value},
                {"chi_norm", solution.chi_norm},
                {"biorth_residual", solution.biorth_residual},
                {"converged", solution.converged},
                {"iterations", solution.iterations},
                {"best_restart", solution.best_restart},
                {"schmidt_rank", s.rank()},
                {"schmidt_coefficients", coeffs},
                {"vector", to_json(solution.vector)}};
}

Json to_json(const tmsv::Scenario &s) {
    return Json{{"epsilon", s.epsilon},
                {"cutoff", s.cutoff},
                {"operator", tmsv::operator_kind_name(s.kind)},
                {"r", s.r}};
}

tmsv::Scenario scenario_from_json(const Json &j) {
    return guarded([&] {
        tmsv::Scenario s;
        s.epsilon = j.at("epsilon").get<double>();
        s.cutoff = j.value("cutoff", 100);
        s.kind = tmsv::parse_operator_kind(j.value("operator", std::string("matched")));
        s.r = j.value("r", 1);
        tmsv::validate(s);
        return s;
    });
}

Json to_json(const tmsv::ThresholdReport &report) {
    return Json{{"scenario", to_json(report.scenario)},
                {"r", report.scenario.r},
                {"threshold_deg", report.threshold_deg},
                {"crossings_deg", report.crossings_deg},
                {"approximate_f_r", report.approximate_f_r}};
}

tmsv::ThresholdReport threshold_report_from_json(const Json &j) {
    return guarded([&] {
        tmsv::ThresholdReport report;
        report.scenario = scenario_from_json(j.at("scenario"));
        report.scenario.r = j.at("r").get<int>();
        report.threshold_deg = j.at("threshold_deg").get<double>();
        report.crossings_deg = j.at("crossings_deg").get<std::vector<double>>();
        report.approximate_f_r = j.at("approximate_f_r").get<bool>();
        return report;
    });
}

std::string margin_curve_csv(const tmsv::MarginCurve &curve) {
    std::string out = "delta_phi_deg,expectation,f_r,margin\n";
    for (std::size_t i = 0; i < curve.delta_phi_deg.size(); ++i) {
        out += format12(curve.delta_phi_deg[i]) + ',' + format12(curve.expectation[i]) + ',' +
               format12(curve.f_r[i]) + ',' + format12(curve.margin[i]) + '\n';
    }
    return out;
}

tmsv::MarginCurve margin_curve_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "delta_phi_deg,expectation,f_r,margin") {
        throw Error(ErrorCode::ParseError, "missing margin curve header");
    }
    tmsv::MarginCurve curve;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        double v[4];
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4) {
            throw Error(ErrorCode::ParseError, "malformed row at line " + std::to_string(lineno));
        }
        curve.delta_phi_deg.push_back(v[0]);
        curve.expectation.push_back(v[1]);
        curve.f_r.push_back(v[2]);
        curve.margin.push_back(v[3]);
    }
    return curve;
}

Json to_json(const tmsv::MarginCurve &curve) {
    return Json{{"delta_phi_deg", curve.delta_phi_deg},
                {"expectation", curve.expectation},
                {"f_r", curve.f_r},
                {"margin", curve.margin},
                {"approximate", curve.approximate}};
}

}  // namespace schmidtnum::io
