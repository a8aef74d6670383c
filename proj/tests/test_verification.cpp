#include <doctest.h>

#include <random>
#include <set>

#include "qgv/verification.hpp"
#include "test_helpers.hpp"

using namespace qgv;
using namespace qgv::testing;

namespace {

// Independent construction of Omega for a single-qubit unitary: the
// three-projector form d * (1/6) * sum over the six settings, assembled
// from eigenprojectors rather than through strategy_omega.
CMat omega_oracle(const UnitaryGate& u) {
    CMat omega = CMat::Zero(4, 4);
    for (int axis = 1; axis <= 3; ++axis) {
        HermEig eig = eig_hermitian(pauli(axis));
        for (int k = 0; k < 2; ++k) {
            CVec v = eig.vectors.col(k);
            CMat rho = v * v.adjoint();
            CMat q = u.matrix() * rho * u.matrix().adjoint();
            omega += 2.0 * (1.0 / 6.0) * tensor(q, rho.transpose());
        }
    }
    return omega;
}

}  // namespace

TEST_CASE("choi_state of the identity is the maximally entangled projector") {
    DensityMatrix choi = choi_state(UnitaryGate::identity(1));
    CVec phi(4);
    phi << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    CHECK((choi.matrix() - phi * phi.adjoint()).norm() < 1e-12);
}

TEST_CASE("choi_state matches channel_choi_state for unitaries") {
    std::mt19937_64 gen(17);
    for (int n : {1, 2}) {
        UnitaryGate u = UnitaryGate::from_matrix(random_unitary(1 << n, gen), 1e-10);
        CHECK((choi_state(u).matrix() - channel_choi_state(unitary_channel(u)).matrix()).norm() <
              1e-12);
    }
}

TEST_CASE("single-qubit strategy layout") {
    VerificationStrategy s = single_qubit_strategy(gate_a());
    REQUIRE(s.settings.size() == 6);
    std::set<std::string> labels;
    for (const auto& st : s.settings) {
        labels.insert(st.label);
        CHECK(st.probability == doctest::Approx(1.0 / 6.0));
        CHECK((st.pass_sign == 1 || st.pass_sign == -1));
        // The pass projector is exactly the image of the input state.
        CMat q = projector_onto_sign(st.observable, st.pass_sign);
        CMat image = gate_a().matrix() * st.input_state.matrix() * gate_a().matrix().adjoint();
        CHECK((q - image).norm() < 1e-10);
    }
    CHECK(labels.size() == 6);
}

TEST_CASE("single-qubit spectral gap is 2/3 for arbitrary unitaries") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        UnitaryGate u = UnitaryGate::from_matrix(random_unitary(2, gen), 1e-10);
        VerificationStrategy s = single_qubit_strategy(u);
        CHECK(s.nu == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        // Spectrum {1, 1/3, 1/3, 1/3}.
        HermEig eig = eig_hermitian(s.omega);
        CHECK(eig.values(0) == doctest::Approx(1.0));
        for (int k = 1; k < 4; ++k) CHECK(eig.values(k) == doctest::Approx(1.0 / 3.0));
        // The top eigenvector is the Choi state of the gate.
        CMat choi = choi_state(u).matrix();
        CHECK((s.omega * choi - choi).norm() < 1e-10);
    }
}

TEST_CASE("strategy_omega agrees with the projector-sum oracle") {
    std::mt19937_64 gen(29);
    for (int trial = 0; trial < 10; ++trial) {
        UnitaryGate u = UnitaryGate::from_matrix(random_unitary(2, gen), 1e-10);
        VerificationStrategy s = single_qubit_strategy(u);
        CHECK((s.omega - omega_oracle(u)).norm() < 1e-10);
    }
}

TEST_CASE("strategy_omega rejects non-uniform input ensembles") {
    // A single pure input: the average is |0><0|, not I/2.
    VerificationStrategy s = single_qubit_strategy(gate_a());
    std::vector<ProbingSetting> partial(s.settings.begin(), s.settings.begin() + 1);
    partial[0].probability = 1.0;
    CHECK_THROWS_AS(strategy_omega(partial), EnsembleNotUniform);
}

TEST_CASE("pass states of the demo gates match the published vectors") {
    // chi_ak^pm = U_a (eigenstates of sigma_k), published to 4 decimals.
    struct Case {
        UnitaryGate u;
        std::vector<CVec> expect;  // +x, -x, +y, -y, +z, -z order below
    };
    auto v = [](double ar, double ai, double br, double bi) {
        CVec k(2);
        k << Complex(ar, ai), Complex(br, bi);
        return k;
    };
    std::vector<std::pair<UnitaryGate, std::vector<std::pair<std::string, CVec>>>> cases;
    cases.push_back({gate_a(),
                     {{"0", v(-0.7071, 0.3536, 0, 0.6124)},
                      {"1", v(0, 0.6124, -0.7071, -0.3536)},
                      {"+", v(-0.5, 0.6830, -0.5, 0.1830)},
                      {"-", v(-0.5, -0.1830, 0.5, 0.6830)},
                      {"+i", v(-0.9330, 0.25, 0.25, -0.0670)},
                      {"-i", v(-0.0670, 0.25, -0.25, 0.9330)}}});
    cases.push_back({gate_b(),
                     {{"0", v(-0.1228, -0.2418, 0.6964, 0.6645)},
                      {"1", v(-0.6964, 0.6645, -0.1228, 0.2418)},
                      {"+", v(-0.5792, 0.2988, 0.4056, 0.6409)},
                      {"-", v(0.4056, -0.6409, 0.5792, 0.2988)},
                      {"+i", v(-0.5567, -0.6634, 0.3214, 0.3830)},
                      {"-i", v(0.3830, 0.3214, 0.6634, 0.5567)}}});
    for (const auto& [u, vecs] : cases) {
        for (const auto& [name, expect] : vecs) {
            CVec got = u.matrix() * named_ket(name);
            CHECK(equal_up_to_phase(got, expect.normalized(), 1e-3));
        }
    }
}

TEST_CASE("CNOT strategy layout") {
    VerificationStrategy s = cnot_strategy();
    REQUIRE(s.settings.size() == 16);
    std::set<std::string> labels;
    std::set<std::string> families;
    for (const auto& st : s.settings) {
        labels.insert(st.label);
        families.insert(st.label.substr(0, 2));
        CHECK(st.probability == doctest::Approx(1.0 / 16.0));
        CHECK(st.input_state.dim() == 4);
        // Pure product inputs: rank one.
        HermEig eig = eig_hermitian(st.input_state.matrix());
        CHECK(eig.values(0) == doctest::Approx(1.0));
    }
    CHECK(labels.size() == 16);
    CHECK(families == std::set<std::string>{"IZ", "ZI", "IX", "XI"});

    // Measured observables are the CNOT conjugations of the input stabilizers.
    CMat i2 = CMat::Identity(2, 2);
    std::vector<std::pair<std::string, CMat>> expected = {
        {"IZ", tensor(pauli(3), pauli(3))},   // I x Z -> Z x Z
        {"ZI", tensor(pauli(3), i2)},          // Z x I -> Z x I
        {"IX", tensor(pauli(1), pauli(1))},   // X x I -> X x X (control side)
        {"XI", tensor(i2, pauli(1))}};         // I x X -> I x X (target side)
    for (const auto& st : s.settings) {
        bool found = false;
        for (const auto& [fam, obs] : expected)
            if (st.label.rfind(fam, 0) == 0) {
                found = true;
                CHECK((st.observable - obs).norm() < 1e-10);
            }
        CHECK(found);
    }
}

TEST_CASE("CNOT strategy spectrum and gap") {
    VerificationStrategy s = cnot_strategy();
    CHECK(s.nu == doctest::Approx(0.25).epsilon(1e-12));
    HermEig eig = eig_hermitian(s.omega);
    // Frozen spectrum {1, 0.75 x4, 0.5 x6, 0.25 x4, 0}.
    std::vector<double> expect = {1.0,  0.75, 0.75, 0.75, 0.75, 0.5,  0.5,  0.5,
                                  0.5,  0.5,  0.5,  0.25, 0.25, 0.25, 0.25, 0.0};
    REQUIRE(eig.values.size() == 16);
    for (int k = 0; k < 16; ++k) CHECK(eig.values(k) == doctest::Approx(expect[size_t(k)]));
    CHECK(s.omega.trace().real() == doctest::Approx(8.0));
    // The CNOT Choi state passes with certainty.
    CMat choi = choi_state(UnitaryGate::cnot()).matrix();
    CHECK((s.omega * choi - choi).norm() < 1e-10);
    CHECK(pass_probability(s, unitary_channel(UnitaryGate::cnot())) == doctest::Approx(1.0));
}

TEST_CASE("judge compares the outcome to the pass sign") {
    VerificationStrategy s = single_qubit_strategy(gate_a());
    for (const auto& st : s.settings) {
        CHECK(judge(st, st.pass_sign));
        CHECK_FALSE(judge(st, -st.pass_sign));
    }
}

TEST_CASE("pass_probability equals Tr(Omega choi) for random channels") {
    std::mt19937_64 gen(37);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        UnitaryGate u = UnitaryGate::from_matrix(random_unitary(2, gen), 1e-10);
        VerificationStrategy s = single_qubit_strategy(u);
        auto ch = device_channel(u, NoiseModel{DepolarizingNoise{uni(gen)}});
        double direct = pass_probability(s, ch);
        double via_choi = (s.omega * channel_choi_state(ch).matrix()).trace().real();
        CHECK(direct == doctest::Approx(via_choi).epsilon(1e-12));
        CHECK(direct >= 0.0);
        CHECK(direct <= 1.0 + 1e-12);
    }
}

TEST_CASE("pass probability under depolarizing noise is 1 - p/2") {
    VerificationStrategy s = single_qubit_strategy(gate_b());
    for (double p : {0.0, 0.1, 0.5, 1.0}) {
        auto ch = device_channel(gate_b(), NoiseModel{DepolarizingNoise{p}});
        CHECK(pass_probability(s, ch) == doctest::Approx(1.0 - p / 2.0).epsilon(1e-12));
    }
    // Equivalent fidelity form: F + (1 - F)/3.
    auto ch = device_channel(gate_b(), calibrate_noise(0.98, 1));
    CHECK(pass_probability(s, ch) == doctest::Approx(0.98 + 0.02 / 3.0).epsilon(1e-12));
}

TEST_CASE("fully depolarized device passes half the time") {
    VerificationStrategy s = single_qubit_strategy(gate_a());
    auto ch = device_channel(gate_a(), NoiseModel{DepolarizingNoise{1.0}});
    CHECK(pass_probability(s, ch) == doctest::Approx(0.5));
}

TEST_CASE("conjugated_observable") {
    CMat hz = conjugated_observable(gate_a(), pauli(3));
    CHECK((hz - gate_a().matrix() * pauli(3) * gate_a().matrix().adjoint()).norm() < 1e-12);
    CHECK(is_hermitian(hz, 1e-12));
}
