#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/regions/regions.hpp"
#include "sadiag/structmodel/parser.hpp"
#include "sadiag/structmodel/random_model.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace sadiag::regions;
using sadiag::structmodel::Branch;

TEST_CASE("enumeration order") {
    const auto m = sadiag::structmodel::parse_model(
        "[switches]\nb : \"b\"\na : \"a\"\n[variables]\nx : unknown\n[constraints]\nc : {x} gate=a:+\nd : {x} gate=b:*\n");
    const auto regions = enumerate_regions(m);
    REQUIRE(regions.size() == 4);
    CHECK(assignment_label(regions[0]) == "a=+ b=+");
    CHECK(assignment_label(regions[1]) == "a=+ b=-");
    CHECK(assignment_label(regions[2]) == "a=- b=+");
    CHECK(assignment_label(regions[3]) == "a=- b=-");
    CHECK(assignment_label({}) == "(no switches)");
}

TEST_CASE("per-region matrices agree with the oracle on the specialized model") {
    sadiag::structmodel::RandomModelOptions opt;
    opt.max_switches = 2;
    opt.max_constraints = 8;
    opt.max_unknowns = 6;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto m = sadiag::structmodel::random_model(seed, opt);
        const auto sweep = sweep_regions(m);
        REQUIRE(sweep.matrices.size() == sweep.assignments.size());
        for (std::size_t r = 0; r < sweep.assignments.size(); ++r) {
            const auto special = sadiag::diagnosis::prepare_for_analysis(
                sadiag::structmodel::specialize_region(m, sweep.assignments[r]));
            const oracle::ModelOracle ref(special);
            const auto& mat = sweep.matrices[r];
            INFO("seed " << seed << " region " << r);
            for (std::size_t i = 0; i < mat.size(); ++i) {
                CHECK(mat.detectable(i) == ref.detectable(mat.faults()[i]));
                for (std::size_t j = 0; j < mat.size(); ++j) {
                    if (i == j) continue;
                    const bool expected = ref.detectable(mat.faults()[i]) &&
                                          !ref.isolable(mat.faults()[i], mat.faults()[j]);
                    CHECK(mat.at(i, j) == expected);
                }
            }
        }
        bool all_same = true;
        for (std::size_t r = 1; r < sweep.matrices.size(); ++r) {
            if (!sadiag::diagnosis::compare_matrices(sweep.matrices[0], sweep.matrices[r]).empty()) all_same = false;
        }
        CHECK(sweep.invariant == all_same);
        CHECK(sweep.diffs.empty() == all_same);
    }
}

TEST_CASE("adversarial two-mode model is not invariant") {
    const auto m = sadiag::structmodel::load_model("models/adversarial_regions.sm");
    const auto sweep = sweep_regions(m);
    CHECK_FALSE(sweep.invariant);
    REQUIRE(sweep.diffs.size() == 1);
    CHECK(sweep.diffs[0].diff.detectability_changed == std::vector<std::string>{"f_p"});
    CHECK(sweep.distinct_patterns() == 2);
}

TEST_CASE("single-cylinder pitch benchmark is region invariant") {
    using namespace sadiag::pitchbench;
    const auto sweep = sweep_regions(build_pitch_model(1, SensorVariant::standard));
    CHECK(sweep.assignments.size() == 16);
    CHECK(sweep.invariant);
    CHECK(sweep.distinct_patterns() == 1);
    CHECK(sweep.matches_whole);
    CHECK(sweep.whole_detects_superset);
}
