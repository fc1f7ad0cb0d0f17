// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "sadiag/diagnosis/diagnosis.hpp"
#include "sadiag/graphcore/dm.hpp"
#include "sadiag/hydrosim/link.hpp"
#include "sadiag/hydrosim/simulator.hpp"
#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/regions/regions.hpp"
#include "sadiag/structmodel/parser.hpp"
#include "sadiag/structmodel/random_model.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace {

using namespace sadiag;
using graphcore::Part;

// Pinned tolerances.
constexpr double equilibrium_drift_tol = 1e-9;   // relative, 9(a)
constexpr double rk4_ratio_min = 12.0;            // 9(b)
constexpr double boundary_jump_tol = 1e-9;        // normalized flow, 9(d)
constexpr double link_residual_tol = 1e-6;        // normalized, 10

constexpr int random_graphs = 300;
constexpr int random_models = 200;
constexpr int random_sensor_pairs = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "AC" << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << title;
    if (!o.detail.empty()) std::cout << "  [" << o.detail << "]";
    std::cout << std::endl;
}

Outcome single_cylinder_pattern() {
    const auto model = structmodel::load_model("models/pitch_single.sm");
    const auto m = diagnosis::Analysis(model).isolability_matrix();
    const std::vector<std::set<std::string>> groups{{"f_Fr_v", "f_wv_v"}, {"f_Q_rel", "f_Q_ru", "f_acc"}};
    auto group_of = [&](const std::string& f) -> int {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g].count(f)) return static_cast<int>(g);
        }
        return -1;
    };
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& fi = m.faults()[i];
        const bool det = fi != "f_Fr_c";
        if (m.detectable(i) != det) ++mismatches;
        for (std::size_t j = 0; j < m.size(); ++j) {
            const auto& fj = m.faults()[j];
            const bool expected = det && (i == j || (group_of(fi) >= 0 && group_of(fi) == group_of(fj)));
            if (m.at(i, j) != expected) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(m.size()) + " faults, " + std::to_string(mismatches) + " cell mismatches"};
}

Outcome full_model_friction() {
    const auto model = structmodel::load_model("models/pitch_full.sm");
    const diagnosis::Analysis a(model);
    int just = 0, undetectable = 0;
    for (int i = 1; i <= 3; ++i) {
        const std::string sfx = "_" + std::to_string(i);
        const auto& left = a.graph().left;
        const auto it = std::find(left.begin(), left.end(), "force" + sfx);
        if (it != left.end() && a.dm().left_part[static_cast<std::size_t>(it - left.begin())] == Part::just) ++just;
        if (!a.detectable(a.fault_index("f_Fr_c" + sfx))) ++undetectable;
    }
    return {just == 3 && undetectable == 3,
            std::to_string(just) + "/3 force balances just-determined, " + std::to_string(undetectable) +
                "/3 friction faults undetectable"};
}

Outcome external_force_variant() {
    const auto model = structmodel::load_model("models/pitch_full_fext.sm");
    const diagnosis::Analysis a(model);
    int ok = 0;
    for (int i = 1; i <= 3; ++i) {
        const std::string sfx = "_" + std::to_string(i);
        const auto fr = a.fault_index("f_Fr_c" + sfx);
        const auto fy = a.fault_index("f_y_Fext" + sfx);
        if (a.detectable(fr) && !a.isolable(fr, fy) && !a.isolable(fy, fr)) ++ok;
    }
    return {ok == 3, std::to_string(ok) + "/3 cylinders"};
}

Outcome region_invariance() {
    const auto model = structmodel::load_model("models/pitch_single.sm");
    const auto sweep = regions::sweep_regions(model);
    const std::size_t n = sweep.assignments.size();
    const auto same = static_cast<std::size_t>(std::count(sweep.hashes.begin(), sweep.hashes.end(), sweep.hashes[0]));
    return {n == 16 && sweep.invariant && same == 16,
            std::to_string(n) + " regions, " + std::to_string(same) + " identical"};
}

Outcome matching_oracle() {
    std::mt19937_64 rng(5);
    int mismatches = 0;
    for (int t = 0; t < random_graphs; ++t) {
        const auto inc = oracle::random_incidence(rng, 8, 8, 0.3);
        const auto m = graphcore::max_matching(oracle::to_bipartite(inc));
        if (m.size() != oracle::max_matching_size(inc) || !m.is_valid_for(oracle::to_bipartite(inc))) ++mismatches;
    }
    return {mismatches == 0, std::to_string(random_graphs) + " graphs, " + std::to_string(mismatches) + " mismatches"};
}

// Violations of the structural invariants of one decomposition.
int dm_violations(const oracle::Incidence& inc) {
    const auto g = oracle::to_bipartite(inc);
    const auto dm = graphcore::dm_decompose(g);
    int bad = 0;
    const auto over = oracle::over_rows(inc);
    const auto under = oracle::under_columns(inc);
    for (int r = 0; r < g.left_count(); ++r) {
        const Part p = dm.left_part[r];
        if ((p == Part::over) != (over[r] != 0)) ++bad;
        for (int c : g.adjacency[r]) {
            if (p == Part::over && dm.right_part[c] != Part::over) ++bad;
            if (p != Part::under && dm.right_part[c] == Part::under) ++bad;
        }
        const int mate = dm.matching.left_mate[r];
        if (p == Part::over && mate >= 0 && dm.right_part[mate] != Part::over) ++bad;
        if (p == Part::just && (mate < 0 || dm.right_part[mate] != Part::just)) ++bad;
        if (p == Part::under && (mate < 0 || dm.right_part[mate] != Part::under)) ++bad;
    }
    for (int c = 0; c < g.right_count(); ++c) {
        const Part p = dm.right_part[c];
        const int mate = dm.matching.right_mate[c];
        if (p == Part::under && !under[c]) ++bad;
        if (p != Part::under && (mate < 0 || dm.left_part[mate] != p)) ++bad;
    }
    if (dm.left_in(Part::just).size() != dm.right_in(Part::just).size()) ++bad;
    return bad;
}

int permutation_violations(const oracle::Incidence& inc, std::mt19937_64& rng) {
    std::vector<int> rp(inc.rows.size()), cp(static_cast<std::size_t>(inc.columns));
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    oracle::Incidence p;
    p.columns = inc.columns;
    p.rows.resize(inc.rows.size());
    for (std::size_t r = 0; r < inc.rows.size(); ++r) {
        for (int c : inc.rows[r]) p.rows[static_cast<std::size_t>(rp[r])].push_back(cp[static_cast<std::size_t>(c)]);
    }
    const auto a = graphcore::dm_decompose(oracle::to_bipartite(inc));
    const auto b = graphcore::dm_decompose(oracle::to_bipartite(p));
    int bad = 0;
    for (std::size_t r = 0; r < inc.rows.size(); ++r) {
        if (a.left_part[r] != b.left_part[static_cast<std::size_t>(rp[r])]) ++bad;
    }
    for (std::size_t c = 0; c < cp.size(); ++c) {
        if (a.right_part[c] != b.right_part[static_cast<std::size_t>(cp[c])]) ++bad;
    }
    return bad;
}

Outcome dm_properties() {
    std::mt19937_64 rng(5);  // same corpus as the matching check
    std::mt19937_64 perm(11);
    int bad = 0;
    for (int t = 0; t < random_graphs; ++t) {
        const auto inc = oracle::random_incidence(rng, 8, 8, 0.3);
        bad += dm_violations(inc) + permutation_violations(inc, perm);
    }
    return {bad == 0, std::to_string(random_graphs) + " graphs, " + std::to_string(bad) + " violations"};
}

Outcome isolability_oracle() {
    structmodel::RandomModelOptions opt;
    opt.max_constraints = 10;
    opt.max_faults = 4;
    opt.max_unknowns = 8;
    int mismatches = 0, pairs = 0;
    for (int s = 1; s <= random_models; ++s) {
        const auto model = structmodel::random_model(static_cast<std::uint64_t>(1000 + s), opt);
        const diagnosis::Analysis a(model);
        const oracle::ModelOracle ref(diagnosis::prepare_for_analysis(model));
        for (std::size_t i = 0; i < a.faults().size(); ++i) {
            for (std::size_t j = 0; j < a.faults().size(); ++j) {
                if (i == j) continue;
                ++pairs;
                if (a.isolable(i, j) != ref.isolable(a.faults()[i], a.faults()[j])) ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(random_models) + " models, " + std::to_string(pairs) + " pairs, " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome sensor_monotonicity() {
    std::mt19937_64 rng(3);
    int violations = 0, tried = 0;
    for (int s = 1; tried < random_sensor_pairs && s < 10 * random_sensor_pairs; ++s) {
        const auto model = structmodel::random_model(static_cast<std::uint64_t>(5000 + s));
        const auto unknowns = model.ids_of_kind(structmodel::VariableKind::unknown);
        if (unknowns.empty()) continue;
        ++tried;
        const auto& target = unknowns[std::uniform_int_distribution<std::size_t>(0, unknowns.size() - 1)(rng)];
        const bool with_fault = std::bernoulli_distribution(0.5)(rng);
        const auto before = diagnosis::detectable_faults(model);
        const auto after = diagnosis::detectable_faults(structmodel::add_sensor(model, {target, "probe", with_fault}));
        std::set<std::string> det_after;
        for (const auto& v : after) {
            if (v.detectable) det_after.insert(v.fault);
        }
        for (const auto& v : before) {
            if (v.detectable && !det_after.count(v.fault)) ++violations;
        }
    }
    return {violations == 0 && tried == random_sensor_pairs,
            std::to_string(tried) + " pairs, " + std::to_string(violations) + " violations"};
}

double rel_drift(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome simulator_numerics() {
    using namespace hydrosim;
    const auto P = pitchbench::default_parameters();
    std::ostringstream detail;
    bool pass = true;

    // (a) 10^4 steps at equilibrium.
    {
        auto sc = equilibrium_scenario(P, 1, 1.0);
        sc.step = 1e-4;
        const auto tr = simulate(sc);
        const auto& x0 = tr.states.front();
        const auto& x1 = tr.states.back();
        double drift = rel_drift(x1.p_s, x0.p_s);
        const auto& c0 = x0.cylinders[0];
        const auto& c1 = x1.cylinders[0];
        drift = std::max({drift, rel_drift(c1.x_c, c0.x_c), rel_drift(c1.p_p, c0.p_p), rel_drift(c1.p_r, c0.p_r),
                          std::abs(c1.v_c), std::abs(c1.x_v), std::abs(c1.v_v)});
        const bool ok = drift <= equilibrium_drift_tol && tr.step_index.back() == 10000;
        pass = pass && ok;
        detail << "a:" << (ok ? "ok" : "FAIL") << " drift=" << drift;
    }
    // (b) halving the step on a gate-constant run.
    {
        auto scenario = [&](double h) {
            auto sc = equilibrium_scenario(P, 1, 0.2);
            sc.step = h;
            sc.u[0] = Signal::constant(0.3);
            sc.initial.cylinders[0].p_p = 1e7;
            sc.initial.cylinders[0].p_r = sc.initial.p_s;
            sc.F_ext[0] = Signal::constant(P.A_p * 1e7 - P.A_r * sc.initial.p_s);
            return sc;
        };
        auto err = [](const PlantState& a, const PlantState& b) {
            const auto& x = a.cylinders[0];
            const auto& y = b.cylinders[0];
            return std::max({std::abs(a.p_s - b.p_s) / 1e7, std::abs(x.x_c - y.x_c) / 0.1,
                             std::abs(x.v_c - y.v_c) / 0.1, std::abs(x.p_p - y.p_p) / 1e7,
                             std::abs(x.p_r - y.p_r) / 1e7, std::abs(x.x_v - y.x_v) / 1e-3,
                             std::abs(x.v_v - y.v_v) / 0.1});
        };
        const auto ref = simulate(scenario(1.25e-4));
        const auto coarse = simulate(scenario(1e-3));
        const auto fine = simulate(scenario(5e-4));
        bool constant_gates = true;
        for (const auto& tr : {&ref, &coarse, &fine}) {
            for (const auto& code : tr->regions) constant_gates = constant_gates && code == ref.regions.front();
        }
        const double ratio = err(coarse.states.back(), ref.states.back()) / err(fine.states.back(), ref.states.back());
        const bool ok = constant_gates && ratio >= rk4_ratio_min;
        pass = pass && ok;
        detail << "; b:" << (ok ? "ok" : "FAIL") << " ratio=" << ratio << (constant_gates ? "" : " gates changed");
    }
    // (c) bulk modulus range.
    {
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const double p = 1e3 * std::pow(10.0, 5.0 * i / 9999.0);  // 1 kPa .. 100 MPa
            const double b = effective_bulk_modulus(p, P);
            if (!(b > 0.0 && b <= P.beta_oil)) ++bad;
        }
        pass = pass && bad == 0;
        detail << "; c:" << (bad == 0 ? "ok" : "FAIL") << " out-of-range=" << bad;
    }
    // (d) one-sided limits at the relief and check-valve thresholds, each
    // extrapolated linearly from samples 1 and 2 Pa away, normalized by the
    // flow of the fully open valve at nominal supply pressure.
    {
        auto jump = [](const std::function<double(double)>& q, double x0) {
            const double above = 2 * q(x0 + 1.0) - q(x0 + 2.0);
            const double below = 2 * q(x0 - 1.0) - q(x0 - 2.0);
            return std::abs(above - below);
        };
        const double p_s = P.p_s_nominal;
        const double rel = jump([&](double p) { return relief_flow(p, P); }, P.p_cr) / (P.K_rel * P.p_s_nominal);
        const double cv = jump([&](double p_r) { return check_valve_flow(p_r, p_s, P); }, p_s - P.p_cv) /
                          (P.K_cv * P.p_s_nominal);
        const double cv_printed =
            jump([&](double p_r) { return check_valve_flow(p_r, p_s, P, 0.0, pitchbench::CheckValveLaw::printed); },
                 p_s - P.p_cv) /
            (P.K_cv * P.p_s_nominal);
        const bool ok = rel <= boundary_jump_tol && cv <= boundary_jump_tol;
        pass = pass && ok;
        detail << "; d:" << (ok ? "ok" : "FAIL") << " Q_rel=" << rel << " Q_cv(" << to_string(P.check_valve_law)
               << ")=" << cv;
        std::cout << "INFO  check-valve law as printed jumps by " << cv_printed
                  << " (normalized) at its threshold; default law is " << to_string(P.check_valve_law) << std::endl;
    }
    return {pass, detail.str()};
}

Outcome structure_link() {
    using namespace hydrosim;
    const auto P = pitchbench::default_parameters();
    std::size_t samples = 0, gate_bad = 0, residual_bad = 0;
    double worst = 0.0;
    for (int n : {1, 3}) {
        auto sc = equilibrium_scenario(P, n, 2.0);
        sc.step = 1e-4;
        for (int i = 0; i < n; ++i) {
            sc.u[static_cast<std::size_t>(i)] = Signal::pulse(0.1 + 0.05 * i, 0.4, i == 1 ? -0.3 : 0.4);
        }
        const auto tr = simulate(sc);
        const auto model = pitchbench::build_pitch_model(n, pitchbench::SensorVariant::standard);
        const auto r = replay_against_structure(tr, model, P, link_residual_tol);
        samples += r.samples;
        gate_bad += r.gate_inconsistencies;
        residual_bad += r.residual_violations;
        worst = std::max(worst, r.max_residual);
    }
    std::ostringstream d;
    d << samples << " samples, " << gate_bad << " gate inconsistencies, " << residual_bad
      << " residual violations, max residual " << worst;
    return {gate_bad == 0 && residual_bad == 0, d.str()};
}

}  // namespace

int main() {
    report(1, "single-cylinder golden pattern", single_cylinder_pattern);
    report(2, "full-model friction verdict", full_model_friction);
    report(3, "external-force sensor variant", external_force_variant);
    report(4, "region invariance (16 regions)", region_invariance);
    report(5, "matching vs exhaustive enumeration", matching_oracle);
    report(6, "DM decomposition invariants", dm_properties);
    report(7, "isolability vs deletion oracle", isolability_oracle);
    report(8, "sensor monotonicity", sensor_monotonicity);
    report(9, "simulator numerics", simulator_numerics);
    report(10, "structure/simulation link", structure_link);
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures;
}
