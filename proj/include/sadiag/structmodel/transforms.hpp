#pragma once

#include "sadiag/structmodel/model.hpp"

#include <map>
#include <string>

namespace sadiag::structmodel {

struct SensorSpec {
    std::string measured;     // must name an unknown variable
    std::string sensor_name;  // becomes y_<name>, m_<name>, f_y_<name>
    bool adds_fault = true;
};

/// Adds one known measurement `y_<name>`, one measurement constraint
/// `m_<name>` and, when `adds_fault`, one fault `f_y_<name>`. Ids get a
/// numeric suffix if the name is already taken.
StructuralModel add_sensor(const StructuralModel& model, const SensorSpec& spec);

using RegionAssignment = std::map<std::string, Branch>;

/// Keeps the constraints whose gate matches the assignment and strips gates.
/// Throws ModelError when a switch referenced by a gate is not assigned, or
/// when an assignment value is Branch::both.
StructuralModel specialize_region(const StructuralModel& model, const RegionAssignment& assignment);

/// Heaviside-condensed view: every family of gated branch constraints becomes
/// one ungated constraint touching the union of its members. Identity for
/// gate-free models.
StructuralModel condense_regions(const StructuralModel& model);

/// For every derivative pair (dx, x) adds `d_<x>` touching {dx, x}.
/// Idempotent.
StructuralModel expand_differential(const StructuralModel& model);

}  // namespace sadiag::structmodel
