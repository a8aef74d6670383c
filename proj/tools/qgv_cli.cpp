// Command-line front end: strategy audit dumps, certification of recorded
// outcomes, and scaling campaigns emitting the figure data as CSV/JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgv/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotCertifiable = 2;

qgv::VerificationStrategy strategy_for(const qgv::UnitaryGate& gate) {
    if (gate.n_qubits() == 1) return qgv::single_qubit_strategy(gate);
    if (gate.n_qubits() == 2) {
        if ((gate.matrix() - qgv::UnitaryGate::cnot().matrix()).norm() > 1e-6)
            throw qgv::WrongArity("only the CNOT strategy is available for two-qubit gates");
        return qgv::cnot_strategy();
    }
    throw qgv::WrongArity("no verification strategy for gates on more than two qubits");
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw qgv::Error("cannot write " + path.string());
    os << text;
}

struct ScalingConfig {
    std::string gate_path;
    std::string protocol = "both";
    std::vector<std::int64_t> n_grid;
    int repetitions = 50;
    int qpt_repetitions = 15;
    double delta = 0.01;
    std::uint64_t seed = 1;
    double fit_min = 0.0;
    double fit_max = 500.0;
};

ScalingConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw qgv::ParseError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw qgv::ParseError(std::string("config: ") + e.what());
    }
    ScalingConfig cfg;
    try {
        cfg.gate_path = j.at("gate").get<std::string>();
        cfg.n_grid = j.at("n_grid").get<std::vector<std::int64_t>>();
        if (j.contains("protocol")) cfg.protocol = j["protocol"].get<std::string>();
        if (j.contains("repetitions")) cfg.repetitions = j["repetitions"].get<int>();
        if (j.contains("qpt_repetitions"))
            cfg.qpt_repetitions = j["qpt_repetitions"].get<int>();
        if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("fit_range")) {
            cfg.fit_min = j["fit_range"].at(0).get<double>();
            cfg.fit_max = j["fit_range"].at(1).get<double>();
        }
    } catch (const json::exception& e) {
        throw qgv::ParseError(std::string("config: ") + e.what());
    }
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0)
        throw qgv::ParseError("config: delta must be in (0, 1)");
    if (cfg.n_grid.empty()) throw qgv::ParseError("config: n_grid is empty");
    for (size_t i = 0; i + 1 < cfg.n_grid.size(); ++i)
        if (cfg.n_grid[i] >= cfg.n_grid[i + 1])
            throw qgv::ParseError("config: n_grid must be strictly increasing");
    if (cfg.n_grid.front() < 1) throw qgv::ParseError("config: n_grid entries must be >= 1");
    if (cfg.protocol != "qgv" && cfg.protocol != "qpt" && cfg.protocol != "both")
        throw qgv::ParseError("config: protocol must be qgv, qpt or both");
    // The gate path is relative to the config file.
    fs::path gate = cfg.gate_path;
    if (gate.is_relative()) cfg.gate_path = (fs::path(path).parent_path() / gate).string();
    return cfg;
}

int cmd_strategy(const std::string& gate_file, const std::string& out) {
    qgv::GateSpec spec = qgv::load_gate_spec(gate_file);
    qgv::VerificationStrategy strategy = strategy_for(spec.gate);
    std::string dump = qgv::strategy_to_json(strategy);
    if (out.empty())
        std::cout << dump << '\n';
    else
        write_file(out, dump + "\n");
    return kExitOk;
}

int cmd_verify(const std::string& records_file, double delta, double nu,
               const std::string& out) {
    std::ifstream is(records_file);
    if (!is) throw qgv::ParseError("cannot open records file: " + records_file);
    auto records = qgv::read_records_jsonl(is);
    if (records.empty()) throw qgv::ParseError("records file is empty");
    std::int64_t n = std::int64_t(records.size()), m = 0;
    for (const auto& r : records) m += r.passed ? 1 : 0;
    auto result = qgv::make_verification_result(m, n, delta, nu);
    std::string dump = qgv::verification_result_to_json(result);
    if (out.empty())
        std::cout << dump << '\n';
    else
        write_file(out, dump + "\n");
    return result.certifiable ? kExitOk : kExitNotCertifiable;
}

int cmd_scaling(const ScalingConfig& cfg, const std::string& out_dir) {
    qgv::GateSpec spec = qgv::load_gate_spec(cfg.gate_path);
    qgv::QuantumChannel device =
        spec.noise ? qgv::device_channel(spec.gate, *spec.noise)
                   : qgv::unitary_channel(spec.gate);
    fs::create_directories(out_dir);

    if (cfg.protocol == "qgv" || cfg.protocol == "both") {
        qgv::VerificationStrategy strategy = strategy_for(spec.gate);
        auto result = qgv::campaign(strategy, device, cfg.n_grid, cfg.repetitions, cfg.delta,
                                    qgv::RngSpec{cfg.seed, 0});
        {
            std::ofstream os(fs::path(out_dir) / "qgv_results.csv");
            qgv::write_results_csv(os, result);
        }
        {
            std::ofstream os(fs::path(out_dir) / "qgv_curve.csv");
            qgv::write_campaign_curve_csv(os, result);
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : result.points) pts.emplace_back(double(p.n), p.mean_epsilon);
        try {
            auto fit = qgv::loglog_fit(pts, cfg.fit_min, cfg.fit_max);
            write_file(fs::path(out_dir) / "qgv_fit.json", qgv::fit_to_json(fit) + "\n");
        } catch (const qgv::InsufficientPoints&) {
            std::cerr << "warning: too few QGV points in the fit range; no qgv_fit.json\n";
        }
    }
    if (cfg.protocol == "qpt" || cfg.protocol == "both") {
        auto curve = qgv::qpt_epsilon_curve(device, spec.gate, cfg.n_grid,
                                            cfg.qpt_repetitions, cfg.delta,
                                            qgv::RngSpec{cfg.seed, 1u << 20});
        {
            std::ofstream os(fs::path(out_dir) / "qpt_curve.csv");
            qgv::write_qpt_curve_csv(os, curve);
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : curve) pts.emplace_back(double(p.n_total), p.infidelity_upper);
        try {
            auto fit = qgv::loglog_fit(pts, cfg.fit_min, cfg.fit_max);
            write_file(fs::path(out_dir) / "qpt_fit.json", qgv::fit_to_json(fit) + "\n");
        } catch (const qgv::InsufficientPoints&) {
            std::cerr << "warning: too few QPT points in the fit range; no qpt_fit.json\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum gate verification and tomography campaigns"};
    app.require_subcommand(1);

    std::string gate_file, out, records_file, config_file, out_dir = ".";
    double delta = 0.01, nu = 2.0 / 3.0;
    std::optional<std::uint64_t> seed_override;
    std::optional<double> delta_override;

    auto* strat = app.add_subcommand("strategy", "Dump a verification strategy as JSON");
    strat->add_option("gate", gate_file, "Gate spec JSON file")->required();
    strat->add_option("--out", out, "Write the dump to a file instead of stdout");

    auto* verify = app.add_subcommand("verify", "Certify a recorded outcome file");
    verify->add_option("--records", records_file, "Outcome records (JSONL)")->required();
    verify->add_option("--delta", delta, "Target failure probability");
    verify->add_option("--nu", nu, "Spectral gap of the strategy");
    verify->add_option("--out", out, "Write the result to a file instead of stdout");

    auto* scaling = app.add_subcommand("scaling", "Run QGV/QPT scaling campaigns");
    scaling->add_option("--config", config_file, "Campaign config JSON")->required();
    scaling->add_option("--out", out_dir, "Output directory");
    scaling->add_option("--seed", seed_override, "Override the config seed");
    scaling->add_option("--delta", delta_override, "Override the config delta");

    CLI11_PARSE(app, argc, argv);

    try {
        if (strat->parsed()) return cmd_strategy(gate_file, out);
        if (verify->parsed()) return cmd_verify(records_file, delta, nu, out);
        ScalingConfig cfg = parse_config(config_file);
        if (seed_override) cfg.seed = *seed_override;
        if (delta_override) cfg.delta = *delta_override;
        return cmd_scaling(cfg, out_dir);
    } catch (const qgv::NotCertifiable& e) {
        std::cerr << "not certifiable: " << e.what() << '\n';
        return kExitNotCertifiable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}
