#pragma once

#include "sadiag/hydrosim/plant.hpp"
#include "sadiag/hydrosim/signals.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sadiag::hydrosim {

struct SimScenario {
    PlantParameters params;
    int n_cylinders = 1;
    std::vector<Signal> u;      // one per cylinder
    std::vector<Signal> F_ext;  // one per cylinder
    Signal Q_s;
    std::vector<FaultSignal> faults;
    double duration = 1.0;
    double step = 1e-4;
    /// Keep every n-th step in the trajectory (the last step is always kept).
    std::size_t record_every = 1;
    PlantState initial;
};

/// Scenario with `n` cylinders at rest: valves closed, chambers at p_atm,
/// rods at mid-stroke, supply at p_s_nominal and F_ext balancing the chamber
/// forces. Every rate is zero at this state.
SimScenario equilibrium_scenario(const PlantParameters& params, int n_cylinders, double duration);

/// Violations of the scenario invariants (parameters, step, duration,
/// initial state, signal counts, fault ids); empty when valid.
std::vector<std::string> check_scenario(const SimScenario& scenario);

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SimulationAborted : public std::runtime_error {
public:
    SimulationAborted(std::size_t step_index, double time, std::string component, const std::string& reason);

    std::size_t step_index() const { return step_index_; }
    double time() const { return time_; }
    const std::string& component() const { return component_; }

private:
    std::size_t step_index_;
    double time_;
    std::string component_;
};

struct InputSample {
    std::vector<CylinderInputs> cylinders;
    double Q_s = 0.0;
};

struct Trajectory {
    int n_cylinders = 1;
    /// Lexicographic switch ids; region codes list one branch symbol per id.
    std::vector<std::string> switch_ids;
    std::vector<std::size_t> step_index;
    std::vector<double> time;
    std::vector<PlantState> states;
    std::vector<Derived> derived;
    std::vector<InputSample> inputs;
    std::vector<std::string> regions;

    std::size_t size() const { return time.size(); }
    structmodel::RegionAssignment region(std::size_t k) const;
};

/// Pressure floor; states below it abort the run.
inline constexpr double pressure_floor = 1.0e3;

/// Fixed-step RK4. Throws ScenarioError for an invalid scenario and
/// SimulationAborted for non-finite states or pressures under the floor.
Trajectory simulate(const SimScenario& scenario);

/// Fault values at time t. Sensor faults (f_y_*) are ignored here.
PlantFaults faults_at(const SimScenario& scenario, double t);

/// Sensors: xc, pp, pr, xv, Fext (per cylinder, suffixed like the model) and
/// ps. Adds every fault signal named f_y_<sensor>. Throws std::invalid_argument
/// for an unknown sensor.
std::vector<double> sensor_readout(const Trajectory& trajectory, const std::string& sensor,
                                   const std::vector<FaultSignal>& sensor_faults = {});

std::vector<std::string> sensor_names(int n_cylinders, bool with_external_force);

}  // namespace sadiag::hydrosim
