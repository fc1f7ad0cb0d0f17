#include "sadiag/graphcore/dm.hpp"
#include "sadiag/graphcore/export.hpp"
#include "sadiag/structmodel/parser.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace sadiag::graphcore;

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("matching size agrees with brute force on random graphs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        const auto inc = oracle::random_incidence(rng, 9, 9, 0.3);
        const auto g = oracle::to_bipartite(inc);
        const auto m = max_matching(g);
        INFO("trial " << trial);
        CHECK(m.is_valid_for(g));
        CHECK(m.size() == oracle::max_matching_size(inc));
    }
}

TEST_CASE("DM parts agree with deletion oracles") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inc = oracle::random_incidence(rng, 8, 8, 0.3);
        const auto g = oracle::to_bipartite(inc);
        const auto dm = dm_decompose(g);
        const auto over = oracle::over_rows(inc);
        const auto under = oracle::under_columns(inc);
        INFO("trial " << trial);
        for (int r = 0; r < g.left_count(); ++r) {
            CHECK((dm.left_part[r] == Part::over) == (over[r] != 0));
        }
        const auto free_over = over_constraints(g);
        for (int r = 0; r < g.left_count(); ++r) CHECK((free_over[r] != 0) == (over[r] != 0));
        // Variables: under iff some maximum matching leaves them free and
        // they are not reachable from the over side.
        for (int c = 0; c < g.right_count(); ++c) {
            if (dm.right_part[c] == Part::under) CHECK(under[c]);
        }
        // Parts partition both sides.
        CHECK(dm.left_in(Part::under).size() + dm.left_in(Part::just).size() + dm.left_in(Part::over).size() ==
              g.left.size());
        CHECK(dm.right_in(Part::under).size() + dm.right_in(Part::just).size() + dm.right_in(Part::over).size() ==
              g.right.size());
        CHECK(dm.has_over() == (std::count(over.begin(), over.end(), 1) > 0));
    }
}

TEST_CASE("equivalence classes match removal oracle") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inc = oracle::random_incidence(rng, 8, 6, 0.35);
        const auto g = oracle::to_bipartite(inc);
        const auto dm = dm_decompose_with_classes(g);
        const auto over = oracle::over_rows(inc);
        INFO("trial " << trial);
        std::set<int> covered;
        for (const auto& cls : dm.classes) {
            for (int a : cls) {
                CHECK(over[a]);
                CHECK(covered.insert(a).second);
                // Removing any member takes every other member out of the over part.
                const auto after = oracle::over_rows(oracle::without_rows(inc, {a}));
                int k = 0;
                for (int r = 0; r < static_cast<int>(inc.rows.size()); ++r) {
                    if (r == a) continue;
                    if (as_set(cls).count(r)) CHECK_FALSE(after[k]);
                    ++k;
                }
            }
        }
        for (int r = 0; r < static_cast<int>(inc.rows.size()); ++r) {
            if (over[r]) CHECK(covered.count(r));
        }
    }
}

TEST_CASE("just-determined blocks are ordered by dependency") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inc = oracle::random_incidence(rng, 8, 8, 0.3);
        const auto g = oracle::to_bipartite(inc);
        const auto dm = dm_decompose(g);
        const auto blocks = just_blocks(g, dm);
        std::vector<int> block_of(g.left.size(), -1);
        std::size_t total = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (int l : blocks[b]) block_of[l] = static_cast<int>(b);
            total += blocks[b].size();
        }
        CHECK(total == dm.left_in(Part::just).size());
        for (int l : dm.left_in(Part::just)) {
            for (int r : g.adjacency[l]) {
                const int other = dm.matching.right_mate[r];
                if (r == dm.matching.left_mate[l] || other < 0 || block_of[other] < 0) continue;
                CHECK(block_of[other] <= block_of[l]);
            }
        }
    }
}

TEST_CASE("bipartite construction from a model uses unknowns only") {
    const auto m = sadiag::structmodel::parse_model(
        "[variables]\nx : unknown\ny : unknown\nu : known\nf : fault\n[constraints]\na : {x, u | f}\nb : {x, y}\n");
    const auto g = Bipartite::from_model(m);
    CHECK(g.left == std::vector<std::string>{"a", "b"});
    CHECK(g.right == std::vector<std::string>{"x", "y"});
    CHECK(g.adjacency[0] == std::vector<int>{0});
    CHECK(g.adjacency[1] == std::vector<int>{0, 1});
    CHECK(g.edge_count() == 3);
    CHECK_NOTHROW(g.check());
}

TEST_CASE("empty graph") {
    const Bipartite g;
    const auto dm = dm_decompose_with_classes(g);
    CHECK(dm.matching.size() == 0);
    CHECK(dm.classes.empty());
    CHECK_FALSE(dm.has_over());
}

TEST_CASE("exports") {
    const auto inc = oracle::Incidence{2, {{0, 1}, {0}, {1}}};
    const auto g = oracle::to_bipartite(inc);
    const auto dm = dm_decompose_with_classes(g);
    const auto dot = to_dot(g, dm);
    CHECK(dot.find("graph \"structure\" {") != std::string::npos);
    CHECK(dot.find("\"c:c0\" -- \"v:v0\"") != std::string::npos);
    const auto csv = incidence_csv(g);
    CHECK(csv.rfind("constraint,v0,v1\n", 0) == 0);
    CHECK(csv.find("c1,1,0") != std::string::npos);
}
