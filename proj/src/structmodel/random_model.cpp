#include "sadiag/structmodel/random_model.hpp"

#include <algorithm>
#include <random>

namespace sadiag::structmodel {

StructuralModel random_model(std::uint64_t seed, const RandomModelOptions& options) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::bernoulli_distribution edge(options.edge_probability);

    const int n_constraints = uniform(1, std::max(1, options.max_constraints));
    const int n_unknowns = uniform(1, std::max(1, options.max_unknowns));
    const int n_faults = uniform(0, std::max(0, options.max_faults));
    const int n_switches = options.max_switches > 0 ? uniform(0, options.max_switches) : 0;

    std::vector<Variable> variables;
    for (int i = 0; i < n_unknowns; ++i) variables.push_back({"x" + std::to_string(i), VariableKind::unknown, "", {}});
    variables.push_back({"u0", VariableKind::known, "", {}});
    for (int i = 0; i < n_faults; ++i) variables.push_back({"f" + std::to_string(i), VariableKind::fault, "", {}});

    std::vector<Switch> switches;
    for (int i = 0; i < n_switches; ++i) switches.push_back({"s" + std::to_string(i), "s" + std::to_string(i) + " >= 0"});

    std::vector<Constraint> constraints;
    for (int i = 0; i < n_constraints; ++i) {
        Constraint c;
        c.id = "c" + std::to_string(i);
        for (int j = 0; j < n_unknowns; ++j) {
            if (edge(rng)) c.touches.push_back("x" + std::to_string(j));
        }
        if (c.touches.empty()) c.touches.push_back("x" + std::to_string(uniform(0, n_unknowns - 1)));
        if (edge(rng)) c.touches.push_back("u0");
        constraints.push_back(std::move(c));
    }
    // Each fault lands in one constraint, occasionally a second one.
    for (int f = 0; f < n_faults; ++f) {
        const std::string id = "f" + std::to_string(f);
        const int first = uniform(0, n_constraints - 1);
        constraints[first].touches.push_back(id);
        if (n_constraints > 1 && uniform(0, 4) == 0) {
            const int second = uniform(0, n_constraints - 1);
            if (second != first) constraints[second].touches.push_back(id);
        }
    }
    for (auto& c : constraints) {
        if (n_switches > 0 && uniform(0, 3) == 0) {
            c.gate = RegionGate{"s" + std::to_string(uniform(0, n_switches - 1)),
                                uniform(0, 1) == 0 ? Branch::positive : Branch::negative};
        }
    }
    return StructuralModel("random_" + std::to_string(seed), std::move(switches), std::move(variables),
                           std::move(constraints));
}

}  // namespace sadiag::structmodel
