#include "sadiag/structmodel/model.hpp"

#include <catch_amalgamated.hpp>

using namespace sadiag::structmodel;

namespace {

StructuralModel tiny() {
    return StructuralModel("tiny", {}, {{"x", VariableKind::unknown, "", {}}, {"f", VariableKind::fault, "", {}}},
                           {{"c1", {"x", "f"}, {}, {}, ""}});
}

bool has_code(const ValidationReport& r, const std::string& code) {
    for (const auto& v : r.violations) {
        if (v.code == code) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("valid minimal model has an empty report") {
    const auto r = validate(tiny());
    CHECK(r.ok());
    CHECK(r.summary().empty());
}

TEST_CASE("kind queries") {
    const auto m = tiny();
    CHECK(m.is_kind("x", VariableKind::unknown));
    CHECK_FALSE(m.is_kind("x", VariableKind::fault));
    CHECK_FALSE(m.is_kind("nope", VariableKind::unknown));
    CHECK(m.fault_ids() == std::vector<std::string>{"f"});
    CHECK(m.faults_of(m.constraints()[0]) == std::vector<std::string>{"f"});
    CHECK(m.unknowns_of(m.constraints()[0]) == std::vector<std::string>{"x"});
    CHECK(m.find_constraint("c1") != nullptr);
    CHECK(m.find_constraint("c2") == nullptr);
    CHECK_FALSE(m.has_gates());
}

TEST_CASE("fault in no constraint is reported once") {
    StructuralModel m("m", {},
                      {{"x", VariableKind::unknown, "", {}},
                       {"f", VariableKind::fault, "", {}},
                       {"g", VariableKind::fault, "", {}}},
                      {{"c1", {"x", "f"}, {}, {}, ""}});
    const auto r = validate(m);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].code == "orphan-fault");
    CHECK(r.violations[0].subject == "g");
}

TEST_CASE("structural violations are data") {
    SECTION("dangling touch") {
        StructuralModel m("m", {}, {{"x", VariableKind::unknown, "", {}}}, {{"c1", {"x", "y"}, {}, {}, ""}});
        CHECK(has_code(validate(m), "dangling-reference"));
    }
    SECTION("duplicate variable") {
        StructuralModel m("m", {}, {{"x", VariableKind::unknown, "", {}}, {"x", VariableKind::known, "", {}}},
                          {{"c1", {"x"}, {}, {}, ""}});
        CHECK(has_code(validate(m), "duplicate-id"));
    }
    SECTION("empty constraint") {
        StructuralModel m("m", {}, {{"x", VariableKind::unknown, "", {}}}, {{"c1", {}, {}, {}, ""}});
        CHECK(has_code(validate(m), "empty-constraint"));
    }
    SECTION("derivative of a known") {
        StructuralModel m("m", {}, {{"u", VariableKind::known, "", {}}, {"du", VariableKind::unknown, "", "u"}},
                          {{"c1", {"du", "u"}, {}, {}, ""}});
        CHECK(has_code(validate(m), "bad-derivative"));
    }
    SECTION("gate on an undeclared switch") {
        StructuralModel m("m", {}, {{"x", VariableKind::unknown, "", {}}},
                          {{"c1", {"x"}, RegionGate{"s", Branch::positive}, {}, ""}});
        CHECK(has_code(validate(m), "dangling-reference"));
    }
    SECTION("family with two members on one branch") {
        StructuralModel m("m", {{"s", "s >= 0"}}, {{"x", VariableKind::unknown, "", {}}},
                          {{"a", {"x"}, RegionGate{"s", Branch::positive}, "F", ""},
                           {"b", {"x"}, RegionGate{"s", Branch::positive}, "F", ""}});
        CHECK(has_code(validate(m), "bad-family"));
    }
    SECTION("family on an ungated constraint") {
        StructuralModel m("m", {}, {{"x", VariableKind::unknown, "", {}}}, {{"a", {"x"}, {}, "F", ""}});
        CHECK(has_code(validate(m), "bad-family"));
    }
}

TEST_CASE("branch symbols round-trip") {
    for (Branch b : {Branch::positive, Branch::negative, Branch::both}) {
        CHECK(parse_branch(branch_symbol(b)) == b);
    }
    CHECK_FALSE(parse_branch('x').has_value());
    CHECK(parse_kind("fault") == VariableKind::fault);
    CHECK_FALSE(parse_kind("maybe").has_value());
}
