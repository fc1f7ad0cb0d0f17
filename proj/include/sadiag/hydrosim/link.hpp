#pragma once

#include "sadiag/hydrosim/simulator.hpp"
#include "sadiag/structmodel/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sadiag::hydrosim {

struct LinkReport {
    std::size_t samples = 0;
    /// Samples whose recorded region differs from the switch conditions
    /// re-evaluated on the sampled state.
    std::size_t gate_inconsistencies = 0;
    /// Kept algebraic constraints whose normalized residual exceeds the tolerance.
    std::size_t residual_violations = 0;
    std::size_t residuals_checked = 0;
    double max_residual = 0.0;
    std::vector<std::string> messages;  // first findings only

    bool ok() const { return gate_inconsistencies == 0 && residual_violations == 0; }
};

/// Normalized residual |lhs - rhs| / max(|lhs|, |rhs|, scale) of a pitch-model
/// constraint at sample k of an unfaulted trajectory. Empty for differential
/// and measurement constraints.
std::optional<double> constraint_residual(const std::string& constraint_id, const Trajectory& trajectory,
                                          std::size_t k, const PlantParameters& params);

/// For every sample: checks the recorded region against the switch
/// conditions, specializes `model` (a pitch model with the trajectory's
/// cylinder count) to that region and evaluates every kept algebraic
/// constraint on the sampled quantities.
LinkReport replay_against_structure(const Trajectory& trajectory, const structmodel::StructuralModel& model,
                                    const PlantParameters& params, double tolerance = 1e-6);

}  // namespace sadiag::hydrosim
