#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "qgv/io.hpp"
#include "test_helpers.hpp"

using namespace qgv;
using namespace qgv::testing;
using nlohmann::json;

TEST_CASE("gate spec round-trips through JSON") {
    GateSpec spec{gate_a(), calibrate_noise(0.98, 1)};
    GateSpec back = parse_gate_spec(gate_spec_to_json(spec));
    CHECK((back.gate.matrix() - spec.gate.matrix()).norm() < 1e-12);
    REQUIRE(back.noise.has_value());
    CHECK(std::get<DepolarizingNoise>(back.noise->kind).p ==
          doctest::Approx(0.08 / 3.0).epsilon(1e-12));

    GateSpec bare{UnitaryGate::cnot(), std::nullopt};
    GateSpec back2 = parse_gate_spec(gate_spec_to_json(bare));
    CHECK_FALSE(back2.noise.has_value());
    CHECK(back2.gate.n_qubits() == 2);
}

TEST_CASE("gate spec accepts rounded entries and composite noise") {
    json j;
    j["n_qubits"] = 1;
    json rows = json::array();
    CMat raw = gate_a_raw();  // 4-decimal entries, off unitarity by ~1e-4
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back({raw(r, c).real(), raw(r, c).imag()});
        rows.push_back(row);
    }
    j["unitary"] = rows;
    j["noise"] = {{"kind", "composite"},
                  {"params",
                   {{"parts",
                     {{{"kind", "depolarizing"}, {"params", {{"p", 0.1}}}},
                      {{"kind", "amplitude_damping"}, {"params", {{"gamma", 0.05}}}}}}}}};
    GateSpec spec = parse_gate_spec(j.dump());
    CHECK((spec.gate.matrix() - gate_a().matrix()).norm() < 1e-3);
    CHECK((spec.gate.matrix().adjoint() * spec.gate.matrix() - CMat::Identity(2, 2)).norm() <
          1e-12);
    auto& comp = std::get<CompositeNoise>(spec.noise->kind);
    CHECK(comp.parts.size() == 2);
}

TEST_CASE("gate spec parse errors") {
    CHECK_THROWS_AS(parse_gate_spec("not json"), ParseError);
    CHECK_THROWS_AS(parse_gate_spec("{\"n_qubits\": 1}"), ParseError);
    CHECK_THROWS_AS(
        parse_gate_spec(
            "{\"n_qubits\": 2, \"unitary\": [[[1,0],[0,0]],[[0,0],[1,0]]]}"),
        ParseError);  // dimension mismatch
    CHECK_THROWS_AS(
        parse_gate_spec(
            "{\"n_qubits\": 1, \"unitary\": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"),
        NotUnitary);
    json j = json::parse(gate_spec_to_json(GateSpec{gate_a(), std::nullopt}));
    j["noise"] = {{"kind", "sideways"}, {"params", json::object()}};
    CHECK_THROWS_AS(parse_gate_spec(j.dump()), ParseError);
}

TEST_CASE("strategy dump carries the frozen facts") {
    json j = json::parse(strategy_to_json(single_qubit_strategy(gate_a())));
    CHECK(j["n_qubits"] == 1);
    CHECK(j["n_settings"] == 6);
    CHECK(j["nu"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(j["settings"].size() == 6);
    CHECK(j["omega_spectrum"].size() == 4);
    CHECK(j["omega_spectrum"][0].get<double>() == doctest::Approx(1.0));

    json j2 = json::parse(strategy_to_json(cnot_strategy()));
    CHECK(j2["n_settings"] == 16);
    CHECK(j2["nu"].get<double>() == doctest::Approx(0.25));
    CHECK(j2["omega_spectrum"].size() == 16);
}

TEST_CASE("outcome records round-trip through JSONL") {
    VerificationStrategy s = single_qubit_strategy(gate_b());
    auto device = device_channel(gate_b(), calibrate_noise(0.95, 1));
    Rng rng(RngSpec{13, 0});
    auto records = run_qgv(s, device, 250, rng);

    std::stringstream ss;
    write_records_jsonl(ss, records);
    auto back = read_records_jsonl(ss);
    REQUIRE(back.size() == records.size());
    for (size_t k = 0; k < records.size(); ++k) {
        CHECK(back[k].trial == records[k].trial);
        CHECK(back[k].setting == records[k].setting);
        CHECK(back[k].outcome == records[k].outcome);
        CHECK(back[k].passed == records[k].passed);
    }
}

TEST_CASE("JSONL reader rejects malformed lines") {
    std::stringstream bad("{\"trial\":0,\"setting\":\"0\",\"outcome\":3,\"passed\":true}\n");
    CHECK_THROWS_AS(read_records_jsonl(bad), ParseError);
    std::stringstream truncated("{\"trial\":0}\n");
    CHECK_THROWS_AS(read_records_jsonl(truncated), ParseError);
    std::stringstream empty("");
    CHECK(read_records_jsonl(empty).empty());
}

TEST_CASE("count tables round-trip through CSV") {
    QptGrid grid = standard_qpt_grid(1);
    auto device = device_channel(gate_a(), calibrate_noise(0.9, 1));
    Rng rng(RngSpec{17, 0});
    CountTable table = run_qpt_counts(device, grid, 120, rng);

    std::stringstream ss;
    write_counts_csv(ss, table);
    CountTable back = read_counts_csv(ss);
    REQUIRE(back.rows.size() == table.rows.size());
    for (size_t k = 0; k < table.rows.size(); ++k) {
        CHECK(back.rows[k].probe == table.rows[k].probe);
        CHECK(back.rows[k].basis == table.rows[k].basis);
        CHECK(back.rows[k].counts == table.rows[k].counts);
    }
    std::stringstream bad("no header\n");
    CHECK_THROWS_AS(read_counts_csv(bad), ParseError);
}

TEST_CASE("results and curve CSV layout") {
    VerificationStrategy s = single_qubit_strategy(gate_a());
    auto device = unitary_channel(gate_a());
    CampaignResult res = campaign(s, device, {300, 500}, 3, 0.01, RngSpec{1, 0});

    std::stringstream results;
    write_results_csv(results, res);
    std::string line;
    std::getline(results, line);
    CHECK(line == "N,M,delta,nu,epsilon");
    int rows = 0;
    while (std::getline(results, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);  // 2 grid points x 3 repetitions

    std::stringstream curve;
    write_campaign_curve_csv(curve, res);
    std::getline(curve, line);
    CHECK(line == "N,mean_epsilon,sd_epsilon");
    rows = 0;
    while (std::getline(curve, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("qpt curve CSV layout") {
    std::vector<QptCurvePoint> curve = {{100, 0.05, 0.01, 0.073}, {400, 0.02, 0.004, 0.029}};
    std::stringstream ss;
    write_qpt_curve_csv(ss, curve);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "N,mean_infidelity,sd_infidelity,upper");
    std::getline(ss, line);
    CHECK(line.rfind("100,", 0) == 0);
}

TEST_CASE("fit and verification result JSON") {
    ScalingFit fit{-0.92, 1.1, 0.02, 0.0, 500.0, 6};
    json j = json::parse(fit_to_json(fit));
    CHECK(j["slope"].get<double>() == doctest::Approx(-0.92));
    CHECK(j["n_points"] == 6);

    VerificationResult r = make_verification_result(231, 231, 0.01, 2.0 / 3.0);
    json jr = json::parse(verification_result_to_json(r));
    CHECK(jr["N"] == 231);
    CHECK(jr["M"] == 231);
    CHECK(jr["certifiable"] == true);
    CHECK(jr["epsilon"].get<double>() == doctest::Approx(0.0296076).epsilon(1e-4));
    CHECK(jr["fidelity_at_least"].get<double>() ==
          doctest::Approx(1.0 - jr["epsilon"].get<double>()));

    VerificationResult nc = make_verification_result(20, 100, 0.01, 2.0 / 3.0);
    json jn = json::parse(verification_result_to_json(nc));
    CHECK(jn["certifiable"] == false);
    CHECK_FALSE(jn.contains("epsilon"));
}

TEST_CASE("chi matrices round-trip through JSON") {
    auto chi = channel_to_chi(device_channel(gate_b(), calibrate_noise(0.93, 1)));
    ProcessMatrix back = chi_from_json(chi_to_json(chi));
    CHECK(back.n_qubits == 1);
    CHECK((back.chi - chi.chi).norm() < 1e-12);
    CHECK_THROWS_AS(chi_from_json("[1,2,3]"), ParseError);
}
