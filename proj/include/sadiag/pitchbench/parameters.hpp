#pragma once

#include <string>
#include <vector>

namespace sadiag::pitchbench {

/// How the check-valve flow is gated.
///
/// printed:      K_cv (p_r - p_s - p_cv) H(p_r + p_cv - p_s)
/// gate_aligned: K_cv (p_r - p_s + p_cv) H(p_r + p_cv - p_s)
///
/// Both switch on the same condition. The printed form jumps by -2 K_cv p_cv
/// at its threshold; the aligned form is continuous there.
enum class CheckValveLaw { printed, gate_aligned };

std::string to_string(CheckValveLaw law);

/// SI units throughout. Defaults are plausible magnitudes for a multi-MW
/// turbine pitch actuator, not measured values.
struct PlantParameters {
    // cylinder
    double M_eq = 2500.0;      // kg
    double A_p = 7.85e-3;      // m^2, 100 mm bore
    double A_r = 4.0e-3;       // m^2, annulus
    double B_v = 1.0e5;        // N s/m
    double F_c = 2.0e3;        // N
    double gamma = 1.0e-3;     // m/s
    double x_c_max = 0.5;      // m
    double V_0_p = 1.0e-3;     // m^3
    double V_0_r = 1.0e-3;     // m^3
    // oil
    double beta_oil = 1.5e9;   // Pa
    double eps_a0 = 0.01;
    double c_ad = 1.4;
    double p_atm = 1.01325e5;  // Pa
    double p_t = 2.0e5;        // Pa
    // leakage, m^3/(s Pa)
    double C_le_p = 1.0e-14;
    double C_le_r = 1.0e-14;
    double C_li = 1.0e-13;
    // valve; K_v(x_v) = k_v |x_v|
    double k_v = 8.0e-4;       // m^2/(s sqrt(Pa)) per m of spool travel
    double phi_v = 0.5;
    double xi = 0.7;
    double omega_0 = 188.5;    // rad/s
    double k_u = 1.0e-3;       // m per unit command
    double K_cv = 1.0e-10;     // m^3/(s Pa)
    double p_cv = 3.0e5;       // Pa, cracking pressure
    CheckValveLaw check_valve_law = CheckValveLaw::gate_aligned;
    // supply
    double K_rel = 1.0e-9;     // m^3/(s Pa)
    double p_cr = 2.6e7;       // Pa, relief setting
    double p_gas0 = 1.2e7;     // Pa, pre-charge
    double V_acc = 0.05;       // m^3
    double V_hose = 0.005;     // m^3
    double k = 1.4;            // adiabatic index
    double Q_s = 0.0;          // m^3/s, default pump flow
    double p_s_nominal = 2.0e7;

    bool operator==(const PlantParameters&) const = default;
};

PlantParameters default_parameters();

/// Invariant violations, one message each; empty when valid.
std::vector<std::string> check_parameters(const PlantParameters& p);

/// Names accepted by set_parameter, in declaration order.
const std::vector<std::string>& parameter_names();
/// Returns false for an unknown name.
bool set_parameter(PlantParameters& p, const std::string& name, double value);
double get_parameter(const PlantParameters& p, const std::string& name);

}  // namespace sadiag::pitchbench
