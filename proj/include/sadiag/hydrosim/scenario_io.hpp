#pragma once

#include "sadiag/hydrosim/simulator.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace sadiag::hydrosim {

/// Scenario document:
///
///   [scenario]   cylinders, duration, step, record_every, check_valve_law
///   [parameters] <name> : <value>          (any PlantParameters field)
///   [initial]    <state>[_<i>] : <value>   (x_c v_c p_p p_r x_v v_v p_s)
///   [inputs]     u[_<i>] | F_ext[_<i>] | Q_s : <signal>
///   [faults]     <fault id> : <signal>
///
/// An unsuffixed per-cylinder key applies to every cylinder. `F_ext : balance`
/// sets a constant load equal to the initial chamber force. Unset initial
/// values come from equilibrium_scenario. Throws ParseError for syntax errors;
/// semantic checks are left to check_scenario.
SimScenario parse_scenario(std::string_view text);
SimScenario load_scenario(const std::filesystem::path& path);

/// Header plus one row per recorded step: t, states, derived quantities,
/// region code.
std::string trajectory_csv(const Trajectory& trajectory);

/// Final state, pressure extremes and region occupancy.
std::string trajectory_summary(const Trajectory& trajectory);

}  // namespace sadiag::hydrosim
