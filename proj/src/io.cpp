#include "qgv/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qgv {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json cmat_to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat cmat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected matrix as array of rows");
    const Eigen::Index rows = Eigen::Index(j.size());
    const Eigen::Index cols = Eigen::Index(j[0].size());
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (Eigen::Index(j[size_t(r)].size()) != cols) throw ParseError("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(j[size_t(r)][size_t(c)]);
    }
    return m;
}

NoiseModel noise_from_json(const json& j);

json noise_to_json(const NoiseModel& model) {
    json out;
    if (const auto* dep = std::get_if<DepolarizingNoise>(&model.kind)) {
        out["kind"] = "depolarizing";
        out["params"] = {{"p", dep->p}};
    } else if (const auto* ad = std::get_if<AmplitudeDampingNoise>(&model.kind)) {
        out["kind"] = "amplitude_damping";
        out["params"] = {{"gamma", ad->gamma}};
    } else if (const auto* rot = std::get_if<OverRotationNoise>(&model.kind)) {
        out["kind"] = "over_rotation";
        out["params"] = {{"axis", {rot->axis[0], rot->axis[1], rot->axis[2]}},
                         {"angle", rot->angle}};
    } else {
        const auto& comp = std::get<CompositeNoise>(model.kind);
        out["kind"] = "composite";
        json parts = json::array();
        for (const auto& part : comp.parts) parts.push_back(noise_to_json(part));
        out["params"] = {{"parts", std::move(parts)}};
    }
    return out;
}

NoiseModel noise_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const json& params = j.at("params");
    if (kind == "depolarizing")
        return NoiseModel{DepolarizingNoise{params.at("p").get<double>()}};
    if (kind == "amplitude_damping")
        return NoiseModel{AmplitudeDampingNoise{params.at("gamma").get<double>()}};
    if (kind == "over_rotation") {
        const auto& axis = params.at("axis");
        OverRotationNoise rot{};
        rot.axis[0] = axis.at(0).get<double>();
        rot.axis[1] = axis.at(1).get<double>();
        rot.axis[2] = axis.at(2).get<double>();
        rot.angle = params.at("angle").get<double>();
        return NoiseModel{rot};
    }
    if (kind == "composite") {
        CompositeNoise comp;
        for (const auto& part : params.at("parts")) comp.parts.push_back(noise_from_json(part));
        return NoiseModel{std::move(comp)};
    }
    throw ParseError("unknown noise kind: " + kind);
}

}  // namespace

GateSpec parse_gate_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("gate spec: ") + e.what());
    }
    try {
        const int n = j.at("n_qubits").get<int>();
        CMat m = cmat_from_json(j.at("unitary"));
        if (m.rows() != (Eigen::Index(1) << n))
            throw ParseError("gate spec: unitary dimension does not match n_qubits");
        // Absorb rounded literals before the strict unitarity check.
        UnitaryGate gate = UnitaryGate::closest_unitary(m);
        if ((gate.matrix() - m).norm() > 1e-3)
            throw NotUnitary("gate spec: matrix is not unitary");
        GateSpec spec{gate, std::nullopt};
        if (j.contains("noise") && !j["noise"].is_null())
            spec.noise = noise_from_json(j["noise"]);
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("gate spec: ") + e.what());
    }
}

GateSpec load_gate_spec(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open gate spec file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_gate_spec(ss.str());
}

std::string gate_spec_to_json(const GateSpec& spec) {
    json j;
    j["n_qubits"] = spec.gate.n_qubits();
    j["unitary"] = cmat_to_json(spec.gate.matrix());
    if (spec.noise) j["noise"] = noise_to_json(*spec.noise);
    return j.dump(2);
}

std::string strategy_to_json(const VerificationStrategy& strategy) {
    json j;
    j["n_qubits"] = strategy.gate.n_qubits();
    j["n_settings"] = strategy.settings.size();
    j["nu"] = strategy.nu;
    json settings = json::array();
    for (const auto& s : strategy.settings) {
        json e;
        e["label"] = s.label;
        e["input_state"] = cmat_to_json(s.input_state.matrix());
        e["observable"] = cmat_to_json(s.observable);
        e["pass_sign"] = s.pass_sign;
        e["probability"] = s.probability;
        settings.push_back(std::move(e));
    }
    j["settings"] = std::move(settings);
    HermEig eig = eig_hermitian(strategy.omega);
    json spectrum = json::array();
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) spectrum.push_back(eig.values(k));
    j["omega_spectrum"] = std::move(spectrum);
    j["omega"] = cmat_to_json(strategy.omega);
    return j.dump(2);
}

void write_records_jsonl(std::ostream& os, const std::vector<OutcomeRecord>& records) {
    for (const auto& r : records) {
        json j;
        j["trial"] = r.trial;
        j["setting"] = r.setting;
        j["outcome"] = r.outcome;
        j["passed"] = r.passed;
        os << j.dump() << '\n';
    }
}

std::vector<OutcomeRecord> read_records_jsonl(std::istream& is) {
    std::vector<OutcomeRecord> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            OutcomeRecord r;
            r.trial = j.at("trial").get<std::int64_t>();
            r.setting = j.at("setting").get<std::string>();
            r.outcome = j.at("outcome").get<int>();
            r.passed = j.at("passed").get<bool>();
            if (r.outcome != 1 && r.outcome != -1)
                throw ParseError("outcome must be +1 or -1");
            records.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ParseError("records line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

void write_counts_csv(std::ostream& os, const CountTable& table) {
    os << "probe,basis,outcome,count\n";
    for (const auto& row : table.rows)
        for (size_t o = 0; o < row.counts.size(); ++o)
            os << row.probe << ',' << row.basis << ',' << o << ',' << row.counts[o] << '\n';
}

CountTable read_counts_csv(std::istream& is) {
    CountTable table;
    table.shots_per_setting = 0;
    std::string line;
    if (!std::getline(is, line) || line.rfind("probe,basis,outcome,count", 0) != 0)
        throw ParseError("counts csv: missing header");
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string probe, basis, outcome_s, count_s;
        if (!std::getline(ss, probe, ',') || !std::getline(ss, basis, ',') ||
            !std::getline(ss, outcome_s, ',') || !std::getline(ss, count_s))
            throw ParseError("counts csv line " + std::to_string(lineno) + ": bad row");
        size_t outcome = 0;
        std::int64_t count = 0;
        try {
            outcome = std::stoul(outcome_s);
            count = std::stoll(count_s);
        } catch (const std::exception&) {
            throw ParseError("counts csv line " + std::to_string(lineno) + ": bad number");
        }
        if (table.rows.empty() || table.rows.back().probe != probe ||
            table.rows.back().basis != basis)
            table.rows.push_back(CountRow{probe, basis, {}});
        auto& counts = table.rows.back().counts;
        if (counts.size() != outcome)
            throw ParseError("counts csv line " + std::to_string(lineno) +
                             ": outcomes out of order");
        counts.push_back(count);
    }
    for (const auto& row : table.rows)
        table.shots_per_setting = std::max(table.shots_per_setting, row.shots());
    return table;
}

void write_results_csv(std::ostream& os, const CampaignResult& result) {
    os << "N,M,delta,nu,epsilon\n";
    os << std::setprecision(12);
    for (const auto& point : result.points)
        for (const auto& r : point.repetitions)
            os << r.n_trials << ',' << r.n_passed << ',' << r.delta << ',' << r.nu << ','
               << r.epsilon << '\n';
}

void write_campaign_curve_csv(std::ostream& os, const CampaignResult& result) {
    os << "N,mean_epsilon,sd_epsilon\n";
    os << std::setprecision(12);
    for (const auto& point : result.points)
        os << point.n << ',' << point.mean_epsilon << ',' << point.sd_epsilon << '\n';
}

void write_qpt_curve_csv(std::ostream& os, const std::vector<QptCurvePoint>& curve) {
    os << "N,mean_infidelity,sd_infidelity,upper\n";
    os << std::setprecision(12);
    for (const auto& point : curve)
        os << point.n_total << ',' << point.mean_infidelity << ',' << point.sd_infidelity << ','
           << point.infidelity_upper << '\n';
}

std::string fit_to_json(const ScalingFit& fit) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["slope_stderr"] = fit.slope_stderr;
    j["range"] = {fit.n_min, fit.n_max};
    j["n_points"] = fit.n_points;
    return j.dump(2);
}

std::string chi_to_json(const ProcessMatrix& chi) {
    json j;
    j["n_qubits"] = chi.n_qubits;
    j["basis"] = "pauli lexicographic (I, X, Y, Z per qubit)";
    j["chi"] = cmat_to_json(chi.chi);
    return j.dump(2);
}

ProcessMatrix chi_from_json(const std::string& json_text) {
    try {
        json j = json::parse(json_text);
        return ProcessMatrix{j.at("n_qubits").get<int>(), cmat_from_json(j.at("chi"))};
    } catch (const json::exception& e) {
        throw ParseError(std::string("chi json: ") + e.what());
    }
}

std::string verification_result_to_json(const VerificationResult& result) {
    json j;
    j["N"] = result.n_trials;
    j["M"] = result.n_passed;
    j["delta"] = result.delta;
    j["nu"] = result.nu;
    j["certifiable"] = result.certifiable;
    if (result.certifiable) {
        j["epsilon"] = result.epsilon;
        j["fidelity_at_least"] = 1.0 - result.epsilon;
    }
    return j.dump(2);
}

}  // namespace qgv
