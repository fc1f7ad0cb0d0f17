#pragma once

// Nonlinear pitch-system equations. Units are SI; flows in m^3/s.

#include "sadiag/pitchbench/parameters.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sadiag::hydrosim {

using pitchbench::PlantParameters;

struct CylinderState {
    double x_c = 0.0;
    double v_c = 0.0;
    double p_p = 0.0;
    double p_r = 0.0;
    double x_v = 0.0;
    double v_v = 0.0;

    bool operator==(const CylinderState&) const = default;
};

struct PlantState {
    std::vector<CylinderState> cylinders;
    double p_s = 0.0;

    bool operator==(const PlantState&) const = default;
};

struct CylinderFaults {
    double Fr_c = 0.0;
    double Q_le_p = 0.0;
    double Q_le_r = 0.0;
    double Q_li = 0.0;
    double Q_p = 0.0;
    double Q_rv = 0.0;
    double Fr_v = 0.0;
    double wv_v = 0.0;
    double Q_cv = 0.0;
};

struct PlantFaults {
    std::vector<CylinderFaults> cylinders;
    double B_e = 0.0;
    double Q_ru = 0.0;
    double Q_rel = 0.0;
    double acc = 0.0;
};

struct CylinderInputs {
    double u = 0.0;
    double F_ext = 0.0;
};

/// H(x) = 1 for x >= 0.
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }
/// sqrt(|x|) sign(x)
double signed_sqrt(double x);

/// Throws std::domain_error for p <= 0.
double air_fraction(double p, const PlantParameters& params);
double effective_bulk_modulus(double p, const PlantParameters& params, double f_B_e = 0.0);

/// dv_c/dt from the force balance.
double cylinder_acceleration(const CylinderState& s, const PlantParameters& params, double F_ext, double f_Fr_c);

struct Leakage {
    double Q_le_p = 0.0;
    double Q_le_r = 0.0;
    double Q_li = 0.0;
};

Leakage leakage_flows(double p_p, double p_r, const PlantParameters& params, const CylinderFaults& faults);

double piston_volume(double x_c, const PlantParameters& params);
double rod_volume(double x_c, const PlantParameters& params);

struct ChamberRates {
    double dp_p = 0.0;
    double dp_r = 0.0;
};

ChamberRates chamber_pressure_rates(const CylinderState& s, double beta_e, double Q_p, double Q_r,
                                    const Leakage& leak, const PlantParameters& params);

double valve_gain(double x_v, const PlantParameters& params);

struct ValveFlows {
    double Q_p = 0.0;
    double Q_rv = 0.0;
    double Q_v = 0.0;
};

/// The negative-side gate H(-x_v) is taken as 1 - H(x_v), so exactly one
/// valve branch is active at x_v = 0.
ValveFlows valve_flows(double x_v, double p_s, double p_p, double p_r, const PlantParameters& params,
                       double f_Q_p = 0.0, double f_Q_rv = 0.0);

/// dv_v/dt of the closed-loop spool.
double spool_acceleration(double x_v, double v_v, double u, const PlantParameters& params, double f_Fr_v = 0.0,
                          double f_wv_v = 0.0);

/// Check-valve gate argument p_r + p_cv - p_s.
double check_valve_gate(double p_r, double p_s, const PlantParameters& params);
double check_valve_flow(double p_r, double p_s, const PlantParameters& params, double f_Q_cv = 0.0);
double check_valve_flow(double p_r, double p_s, const PlantParameters& params, double f_Q_cv,
                        pitchbench::CheckValveLaw law);

double relief_flow(double p_s, const PlantParameters& params, double f_Q_rel = 0.0);
double gas_volume(double p_s, const PlantParameters& params, double f_acc = 0.0);

struct SupplyQuantities {
    double beta_e = 0.0;
    double eps_a = 0.0;
    double V_gas = 0.0;
    double V_oil = 0.0;
    double Q_acc = 0.0;
    double Q_rel = 0.0;
    double dp_s = 0.0;
};

SupplyQuantities supply_dynamics(double p_s, double sum_Q_cv, double sum_Q_v, double Q_s,
                                 const PlantParameters& params, const PlantFaults& faults);

struct CylinderFlows {
    double Q_p = 0.0;
    double Q_rv = 0.0;
    double Q_r = 0.0;
    double Q_cv = 0.0;
    double Q_v = 0.0;
    double Q_le_p = 0.0;
    double Q_le_r = 0.0;
    double Q_li = 0.0;
};

struct Derived {
    std::vector<CylinderFlows> cylinders;
    SupplyQuantities supply;
};

/// Time derivative of the whole state, returned in a PlantState (each field
/// holds the rate of the matching state). Fills `derived` when given.
PlantState plant_derivative(const PlantState& state, const std::vector<CylinderInputs>& inputs, double Q_s,
                            const PlantFaults& faults, const PlantParameters& params, Derived* derived = nullptr);

/// Switch ids in lexicographic order; the order of region codes.
std::vector<std::string> sorted_switch_ids(int n_cylinders);

/// Active branch of every switch in `state`, H(0) = 1.
structmodel::RegionAssignment plant_region(const PlantState& state, const PlantParameters& params);

}  // namespace sadiag::hydrosim
