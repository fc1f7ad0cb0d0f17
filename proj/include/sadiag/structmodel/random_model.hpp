#pragma once

#include "sadiag/structmodel/model.hpp"

#include <cstdint>

namespace sadiag::structmodel {

struct RandomModelOptions {
    int max_constraints = 10;
    int max_unknowns = 8;
    int max_faults = 4;
    int max_switches = 0;
    double edge_probability = 0.3;
};

/// Random valid model for property tests and the `--seed` generator.
/// Every fault is attached to at least one constraint. Deterministic per seed.
StructuralModel random_model(std::uint64_t seed, const RandomModelOptions& options = {});

}  // namespace sadiag::structmodel
