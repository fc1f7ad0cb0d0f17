#pragma once

// Hydraulic wind-turbine pitch system: one accumulator-based supply feeding
// n proportional-valve/cylinder pairs.

#include "sadiag/structmodel/model.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <string>
#include <vector>

namespace sadiag::pitchbench {

enum class SensorVariant { standard, with_Fext_sensor, sensorless };

std::string to_string(SensorVariant variant);

/// Suffix used for per-cylinder symbols: "" for a single cylinder, "_<i>"
/// (1-based) otherwise.
std::string cylinder_suffix(int cylinder, int n_cylinders);

/// Switch ids: xv, cv per valve; rel and gas on the shared supply.
std::vector<std::string> switch_ids(int n_cylinders);

/// Standard sensors: rod position and both chamber pressures per cylinder,
/// spool position per valve, and the supply pressure.
std::vector<structmodel::SensorSpec> standard_sensors(int n_cylinders);
std::vector<structmodel::SensorSpec> external_force_sensors(int n_cylinders);

/// The structural model. Throws std::invalid_argument unless n is 1 or 3.
structmodel::StructuralModel build_pitch_model(int n_cylinders, SensorVariant variant);

/// Process fault ids as encoded (13 types; per-cylinder ones replicated).
std::vector<std::string> process_fault_ids(int n_cylinders);

}  // namespace sadiag::pitchbench
