#include "sadiag/hydrosim/link.hpp"
#include "sadiag/pitchbench/pitch_model.hpp"

#include <catch_amalgamated.hpp>

using namespace sadiag::hydrosim;
using sadiag::pitchbench::build_pitch_model;
using sadiag::pitchbench::default_parameters;
using sadiag::pitchbench::SensorVariant;

namespace {

SimScenario moving(int n) {
    auto sc = equilibrium_scenario(default_parameters(), n, 1.0);
    sc.step = 2e-4;
    sc.record_every = 5;
    for (int i = 0; i < n; ++i) sc.u[static_cast<std::size_t>(i)] = Signal::pulse(0.05, 0.25, i % 2 ? -0.3 : 0.4);
    return sc;
}

}  // namespace

TEST_CASE("unfaulted trajectory satisfies every active algebraic constraint") {
    for (int n : {1, 3}) {
        const auto sc = moving(n);
        const auto tr = simulate(sc);
        const auto report = replay_against_structure(tr, build_pitch_model(n, SensorVariant::standard), sc.params);
        INFO("cylinders " << n << " max residual " << report.max_residual);
        for (const auto& m : report.messages) INFO(m);
        CHECK(report.ok());
        CHECK(report.samples == tr.size());
        CHECK(report.residuals_checked > tr.size());
    }
}

TEST_CASE("both valve branches are visited") {
    const auto tr = simulate(moving(3));
    std::set<char> xv1;
    for (const auto& code : tr.regions) xv1.insert(code[5]);  // cv_1 cv_2 cv_3 gas rel xv_1 ...
    CHECK(tr.switch_ids[5] == "xv_1");
    CHECK(xv1.size() == 2);
}

TEST_CASE("an injected fault breaks the constraint that carries it") {
    auto sc = moving(1);
    sc.faults.push_back({"f_Q_rel", Signal::step(0.5, 1e-5)});
    const auto tr = simulate(sc);
    const auto report = replay_against_structure(tr, build_pitch_model(1, SensorVariant::standard), sc.params);
    CHECK(report.residual_violations > 0);
    CHECK(report.gate_inconsistencies == 0);
    REQUIRE_FALSE(report.messages.empty());
    CHECK(report.messages[0].find("Qrel") != std::string::npos);
}

TEST_CASE("a tampered region trace is reported") {
    const auto sc = moving(1);
    auto tr = simulate(sc);
    tr.regions[3][1] = tr.regions[3][1] == '+' ? '-' : '+';  // gas
    const auto report = replay_against_structure(tr, build_pitch_model(1, SensorVariant::standard), sc.params);
    CHECK(report.gate_inconsistencies == 1);
}

TEST_CASE("residuals are empty for differential and sensor constraints") {
    const auto tr = simulate(equilibrium_scenario(default_parameters(), 1, 0.01));
    const auto q = default_parameters();
    CHECK_FALSE(constraint_residual("force", tr, 0, q).has_value());
    CHECK_FALSE(constraint_residual("m_ps", tr, 0, q).has_value());
    CHECK_FALSE(constraint_residual("d_x_c", tr, 0, q).has_value());
    REQUIRE(constraint_residual("Qv", tr, 0, q).has_value());
    CHECK(*constraint_residual("Qv", tr, 0, q) < 1e-12);
}
