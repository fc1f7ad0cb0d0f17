#include "sadiag/diagnosis/diagnosis.hpp"
#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <catch_amalgamated.hpp>

#include <regex>
#include <set>

using namespace sadiag::pitchbench;
using sadiag::structmodel::StructuralModel;
using sadiag::structmodel::VariableKind;

namespace {

std::string strip_suffix(const std::string& id) { return std::regex_replace(id, std::regex("_[123]$"), ""); }

}  // namespace

TEST_CASE("fault inventory") {
    const auto one = build_pitch_model(1, SensorVariant::standard);
    CHECK(one.fault_ids().size() == 13 + 5);
    const auto three = build_pitch_model(3, SensorVariant::standard);
    CHECK(three.fault_ids().size() == 44);
    std::set<std::string> types;
    for (const auto& f : three.fault_ids()) types.insert(strip_suffix(f));
    CHECK(types.size() == 18);
    CHECK(process_fault_ids(3).size() == 31);
    for (const auto& f : process_fault_ids(3)) CHECK(three.is_kind(f, VariableKind::fault));
    CHECK(build_pitch_model(3, SensorVariant::with_Fext_sensor).fault_ids().size() == 47);
    CHECK(build_pitch_model(1, SensorVariant::sensorless).fault_ids().size() == 13);
}

TEST_CASE("switches") {
    CHECK(build_pitch_model(1, SensorVariant::standard).switches().size() == 4);
    CHECK(build_pitch_model(3, SensorVariant::standard).switches().size() == 8);
    CHECK(switch_ids(1) == std::vector<std::string>{"xv", "cv", "rel", "gas"});
}

TEST_CASE("models validate and name themselves") {
    for (int n : {1, 3}) {
        for (auto v : {SensorVariant::standard, SensorVariant::with_Fext_sensor, SensorVariant::sensorless}) {
            const auto m = build_pitch_model(n, v);
            INFO(m.name());
            CHECK(validate(m).ok());
        }
    }
    CHECK(build_pitch_model(1, SensorVariant::standard).name() == "pitch_single");
    CHECK(build_pitch_model(3, SensorVariant::with_Fext_sensor).name() == "pitch_full_fext");
    CHECK_THROWS_AS(build_pitch_model(2, SensorVariant::standard), std::invalid_argument);
}

TEST_CASE("cylinder subsystems share only supply variables") {
    const auto m = build_pitch_model(3, SensorVariant::standard);
    std::vector<std::set<std::string>> touched(3);
    for (const auto& c : m.constraints()) {
        const auto base = c.id.substr(0, c.id.find('.'));
        if (base.size() < 2 || base[base.size() - 2] != '_') continue;
        const int i = base.back() - '1';
        if (i < 0 || i > 2) continue;
        for (const auto& t : c.touches) touched[static_cast<std::size_t>(i)].insert(t);
    }
    const std::set<std::string> shared_ok{"p_s", "beta_e", "p_t", "p_atm"};
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            for (const auto& v : touched[static_cast<std::size_t>(a)]) {
                if (touched[static_cast<std::size_t>(b)].count(v)) CHECK(shared_ok.count(v));
            }
        }
    }
}

TEST_CASE("every analytic relation has a constraint") {
    const auto m = build_pitch_model(1, SensorVariant::sensorless);
    for (const char* id : {"force", "pp_dyn", "pr_dyn", "bulk", "air", "Qle_p", "Qle_r", "Qli", "Qp.pos", "Qp.neg",
                           "Qrv.pos", "Qrv.neg", "spool", "Qr", "Qcv.pos", "Qcv.neg", "ps_dyn", "Qacc", "Qv",
                           "Qrel.pos", "Qrel.neg", "Voil", "Vgas.pos", "Vgas.neg"}) {
        INFO(id);
        CHECK(m.find_constraint(id) != nullptr);
    }
    CHECK(m.find_constraint("Qacc")->touches.back() == "f_Q_ru");
}

TEST_CASE("sensor lists") {
    CHECK(standard_sensors(1).size() == 5);
    CHECK(standard_sensors(3).size() == 13);
    CHECK(external_force_sensors(3).size() == 3);
    CHECK(standard_sensors(3)[0].measured == "x_c_1");
    const auto with = build_pitch_model(1, SensorVariant::with_Fext_sensor);
    CHECK(with.find_constraint("m_Fext") != nullptr);
}
