#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/structmodel/parser.hpp"
#include "sadiag/structmodel/random_model.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace sadiag::structmodel;
using sadiag::pitchbench::build_pitch_model;
using sadiag::pitchbench::SensorVariant;

namespace {

const char* gated = R"([switches]
s : "x >= 0"
t : "y >= 0"
[variables]
x : unknown
y : unknown
f : fault
[constraints]
a : {x, y}
b.pos : {x | f} gate=s:+ family=b
b.neg : {x, y | f} gate=s:- family=b
c : {y} gate=t:*
d : {y} gate=t:-
)";

std::set<std::string> ids(const StructuralModel& m) {
    std::set<std::string> out;
    for (const auto& c : m.constraints()) out.insert(c.id);
    return out;
}

}  // namespace

TEST_CASE("add_sensor adds a known, a constraint and a fault") {
    const auto m = parse_model("[variables]\nx : unknown\n[constraints]\nc : {x}\n");
    const auto s = add_sensor(m, {"x", "pos", true});
    CHECK(s.constraints().size() == m.constraints().size() + 1);
    CHECK(s.variables().size() == m.variables().size() + 2);
    const auto* c = s.find_constraint("m_pos");
    REQUIRE(c != nullptr);
    CHECK(std::set<std::string>(c->touches.begin(), c->touches.end()) == std::set<std::string>{"y_pos", "x", "f_y_pos"});
    CHECK(s.is_kind("y_pos", VariableKind::known));
    CHECK(s.is_kind("f_y_pos", VariableKind::fault));
    CHECK(m.constraints().size() == 1);  // input untouched
}

TEST_CASE("fault-free sensor touches only the measured unknown and its output") {
    const auto m = parse_model("[variables]\nx : unknown\n[constraints]\nc : {x}\n");
    const auto s = add_sensor(m, {"x", "pos", false});
    CHECK(s.variables().size() == m.variables().size() + 1);
    CHECK(s.find_constraint("m_pos")->touches == std::vector<std::string>{"y_pos", "x"});
    CHECK(s.fault_ids().empty());
}

TEST_CASE("same sensor twice gets distinct ids") {
    const auto m = parse_model("[variables]\nx : unknown\n[constraints]\nc : {x}\n");
    const auto s = add_sensor(add_sensor(m, {"x", "pos", true}), {"x", "pos", true});
    CHECK(s.find_constraint("m_pos") != nullptr);
    CHECK(s.find_constraint("m_pos_2") != nullptr);
    CHECK(s.fault_ids() == std::vector<std::string>{"f_y_pos", "f_y_pos_2"});
    CHECK(validate(s).ok());
}

TEST_CASE("add_sensor rejects non-unknowns") {
    const auto m = parse_model("[variables]\nx : unknown\nu : known\n[constraints]\nc : {x, u}\n");
    CHECK_THROWS_AS(add_sensor(m, {"u", "s", true}), ModelError);
    CHECK_THROWS_AS(add_sensor(m, {"zz", "s", true}), ModelError);
}

TEST_CASE("specialize_region keeps matching branches and strips gates") {
    const auto m = parse_model(gated);
    const auto r = specialize_region(m, {{"s", Branch::positive}, {"t", Branch::negative}});
    CHECK(ids(r) == std::set<std::string>{"a", "b.pos", "c", "d"});
    for (const auto& c : r.constraints()) CHECK_FALSE(c.gate.has_value());
    CHECK(r.variables() == m.variables());
    CHECK(r.switches().empty());
    const auto r2 = specialize_region(m, {{"s", Branch::negative}, {"t", Branch::positive}});
    CHECK(ids(r2) == std::set<std::string>{"a", "b.neg", "c"});
}

TEST_CASE("specialize_region errors") {
    const auto m = parse_model(gated);
    CHECK_THROWS_AS(specialize_region(m, {{"s", Branch::positive}}), ModelError);
    CHECK_THROWS_AS(specialize_region(m, {{"s", Branch::both}, {"t", Branch::positive}}), ModelError);
}

TEST_CASE("gate-free model with empty assignment is unchanged") {
    const auto m = parse_model("[model]\nname : g\n[variables]\nx : unknown\n[constraints]\nc : {x}\n");
    CHECK(specialize_region(m, {}) == m);
}

TEST_CASE("union over all regions of kept gated constraints is every gated constraint") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomModelOptions opt;
        opt.max_switches = 3;
        const auto m = random_model(seed, opt);
        std::set<std::string> gated_ids, kept;
        for (const auto& c : m.constraints()) {
            if (c.gate) gated_ids.insert(c.id);
        }
        const std::size_t k = m.switches().size();
        for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
            RegionAssignment a;
            for (std::size_t s = 0; s < k; ++s) {
                a[m.switches()[s].id] = (code >> s) & 1U ? Branch::negative : Branch::positive;
            }
            const auto r = specialize_region(m, a);
            for (const auto& c : r.constraints()) {
                REQUIRE(m.find_constraint(c.id) != nullptr);
                if (m.find_constraint(c.id)->gate) kept.insert(c.id);
            }
        }
        CHECK(kept == gated_ids);
    }
}

TEST_CASE("condense_regions unions family members") {
    const auto m = condense_regions(parse_model(gated));
    const auto* b = m.find_constraint("b");
    REQUIRE(b != nullptr);
    CHECK(std::set<std::string>(b->touches.begin(), b->touches.end()) == std::set<std::string>{"x", "y", "f"});
    CHECK(m.find_constraint("b.pos") == nullptr);
    CHECK_FALSE(m.has_gates());
    CHECK(m.switches().empty());
    CHECK(validate(m).ok());
}

TEST_CASE("expand_differential") {
    const auto m = parse_model("[variables]\nx_c : unknown\nv_c : unknown deriv_of=x_c\n[constraints]\nc : {v_c}\n");
    const auto e = expand_differential(m);
    const auto* d = e.find_constraint("d_x_c");
    REQUIRE(d != nullptr);
    CHECK(std::set<std::string>(d->touches.begin(), d->touches.end()) == std::set<std::string>{"v_c", "x_c"});
    CHECK(expand_differential(e) == e);

    const auto plain = parse_model("[variables]\nx : unknown\n[constraints]\nc : {x}\n");
    CHECK(expand_differential(plain) == plain);
}

TEST_CASE("pitch benchmark differential pairs") {
    const auto one = build_pitch_model(1, SensorVariant::standard);
    CHECK(expand_differential(one).constraints().size() == one.constraints().size() + 7);
    const auto three = build_pitch_model(3, SensorVariant::standard);
    CHECK(expand_differential(three).constraints().size() == three.constraints().size() + 19);
}
