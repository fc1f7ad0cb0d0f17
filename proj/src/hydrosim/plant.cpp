#include "sadiag/hydrosim/plant.hpp"

#include "sadiag/pitchbench/pitch_model.hpp"

#include <algorithm>
#include <cmath>

namespace sadiag::hydrosim {

using pitchbench::CheckValveLaw;
using structmodel::Branch;

double signed_sqrt(double x) { return x >= 0.0 ? std::sqrt(x) : -std::sqrt(-x); }

double air_fraction(double p, const PlantParameters& params) {
    if (!(p > 0.0)) throw std::domain_error("air fraction needs a positive pressure");
    if (params.eps_a0 == 0.0) return 0.0;
    const double ratio = (1.0 - params.eps_a0) / params.eps_a0;
    return 1.0 / (ratio * std::pow(params.p_atm / p, -1.0 / params.c_ad) + 1.0);
}

double effective_bulk_modulus(double p, const PlantParameters& params, double f_B_e) {
    const double eps = air_fraction(p, params);
    const double inv = 1.0 / params.beta_oil + eps * (1.0 / (params.c_ad * p) - 1.0 / params.beta_oil);
    return 1.0 / inv + f_B_e;
}

double cylinder_acceleration(const CylinderState& s, const PlantParameters& params, double F_ext, double f_Fr_c) {
    const double force = params.A_p * s.p_p - params.A_r * s.p_r - params.B_v * s.v_c -
                         params.F_c * std::tanh(s.v_c / params.gamma) + f_Fr_c - F_ext;
    return force / params.M_eq;
}

Leakage leakage_flows(double p_p, double p_r, const PlantParameters& params, const CylinderFaults& faults) {
    return Leakage{params.C_le_p * (p_p - params.p_atm) + faults.Q_le_p,
                   params.C_le_r * (p_r - params.p_atm) + faults.Q_le_r,
                   params.C_li * (p_p - p_r) + faults.Q_li};
}

double piston_volume(double x_c, const PlantParameters& params) { return params.V_0_p + params.A_p * x_c; }

double rod_volume(double x_c, const PlantParameters& params) {
    return params.V_0_r + params.A_r * (params.x_c_max - x_c);
}

ChamberRates chamber_pressure_rates(const CylinderState& s, double beta_e, double Q_p, double Q_r,
                                    const Leakage& leak, const PlantParameters& params) {
    return ChamberRates{
        beta_e / piston_volume(s.x_c, params) * (Q_p - params.A_p * s.v_c - leak.Q_le_p - leak.Q_li),
        beta_e / rod_volume(s.x_c, params) * (-Q_r + params.A_r * s.v_c - leak.Q_le_r + leak.Q_li)};
}

double valve_gain(double x_v, const PlantParameters& params) { return params.k_v * std::abs(x_v); }

ValveFlows valve_flows(double x_v, double p_s, double p_p, double p_r, const PlantParameters& params, double f_Q_p,
                       double f_Q_rv) {
    const double h_pos = heaviside(x_v);
    const double h_neg = 1.0 - h_pos;
    const double K = valve_gain(x_v, params);
    ValveFlows f;
    f.Q_p = K * (signed_sqrt(p_s - p_p) * h_pos - signed_sqrt(p_p - params.p_t) * h_neg) + f_Q_p;
    f.Q_rv = -K * params.phi_v * signed_sqrt(p_s - p_r) * h_neg + f_Q_rv;
    f.Q_v = f.Q_p * h_pos - f.Q_rv * h_neg;
    return f;
}

double spool_acceleration(double x_v, double v_v, double u, const PlantParameters& params, double f_Fr_v,
                          double f_wv_v) {
    const double w2 = params.omega_0 * params.omega_0;
    return w2 * (params.k_u * u) + f_wv_v - 2.0 * params.xi * params.omega_0 * v_v - w2 * x_v - f_Fr_v;
}

double check_valve_gate(double p_r, double p_s, const PlantParameters& params) { return p_r + params.p_cv - p_s; }

double check_valve_flow(double p_r, double p_s, const PlantParameters& params, double f_Q_cv, CheckValveLaw law) {
    const double gate = heaviside(check_valve_gate(p_r, p_s, params));
    const double drop = law == CheckValveLaw::printed ? p_r - p_s - params.p_cv : p_r - p_s + params.p_cv;
    return params.K_cv * drop * gate + f_Q_cv;
}

double check_valve_flow(double p_r, double p_s, const PlantParameters& params, double f_Q_cv) {
    return check_valve_flow(p_r, p_s, params, f_Q_cv, params.check_valve_law);
}

double relief_flow(double p_s, const PlantParameters& params, double f_Q_rel) {
    return params.K_rel * (p_s - params.p_cr) * heaviside(p_s - params.p_cr) + f_Q_rel;
}

double gas_volume(double p_s, const PlantParameters& params, double f_acc) {
    return params.V_acc * (std::pow(params.p_gas0 / p_s, 1.0 / params.k) * heaviside(p_s - params.p_gas0)) + f_acc;
}

SupplyQuantities supply_dynamics(double p_s, double sum_Q_cv, double sum_Q_v, double Q_s,
                                 const PlantParameters& params, const PlantFaults& faults) {
    SupplyQuantities q;
    q.eps_a = air_fraction(p_s, params);
    q.beta_e = effective_bulk_modulus(p_s, params, faults.B_e);
    q.V_gas = gas_volume(p_s, params, faults.acc);
    q.V_oil = params.V_acc + params.V_hose - q.V_gas;
    q.Q_rel = relief_flow(p_s, params, faults.Q_rel);
    q.Q_acc = Q_s - q.Q_rel + sum_Q_cv - sum_Q_v + faults.Q_ru;
    q.dp_s = q.Q_acc / (q.V_oil / q.beta_e + q.V_gas / (params.k * p_s));
    return q;
}

PlantState plant_derivative(const PlantState& state, const std::vector<CylinderInputs>& inputs, double Q_s,
                            const PlantFaults& faults, const PlantParameters& params, Derived* derived) {
    const std::size_t n = state.cylinders.size();
    static const CylinderFaults no_fault{};
    const double beta_e = effective_bulk_modulus(state.p_s, params, faults.B_e);

    PlantState rate;
    rate.cylinders.resize(n);
    if (derived) derived->cylinders.assign(n, CylinderFlows{});
    double sum_cv = 0.0, sum_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const CylinderState& s = state.cylinders[i];
        const CylinderFaults& f = i < faults.cylinders.size() ? faults.cylinders[i] : no_fault;
        const ValveFlows valve = valve_flows(s.x_v, state.p_s, s.p_p, s.p_r, params, f.Q_p, f.Q_rv);
        const double Q_cv = check_valve_flow(s.p_r, state.p_s, params, f.Q_cv);
        const double Q_r = valve.Q_rv + Q_cv;
        const Leakage leak = leakage_flows(s.p_p, s.p_r, params, f);
        const ChamberRates pr = chamber_pressure_rates(s, beta_e, valve.Q_p, Q_r, leak, params);

        CylinderState& d = rate.cylinders[i];
        d.x_c = s.v_c;
        d.v_c = cylinder_acceleration(s, params, inputs[i].F_ext, f.Fr_c);
        d.p_p = pr.dp_p;
        d.p_r = pr.dp_r;
        d.x_v = s.v_v;
        d.v_v = spool_acceleration(s.x_v, s.v_v, inputs[i].u, params, f.Fr_v, f.wv_v);

        sum_cv += Q_cv;
        sum_v += valve.Q_v;
        if (derived) {
            derived->cylinders[i] =
                CylinderFlows{valve.Q_p, valve.Q_rv, Q_r, Q_cv, valve.Q_v, leak.Q_le_p, leak.Q_le_r, leak.Q_li};
        }
    }
    const SupplyQuantities supply = supply_dynamics(state.p_s, sum_cv, sum_v, Q_s, params, faults);
    rate.p_s = supply.dp_s;
    if (derived) derived->supply = supply;
    return rate;
}

std::vector<std::string> sorted_switch_ids(int n_cylinders) {
    auto ids = pitchbench::switch_ids(n_cylinders);
    std::sort(ids.begin(), ids.end());
    return ids;
}

structmodel::RegionAssignment plant_region(const PlantState& state, const PlantParameters& params) {
    const int n = static_cast<int>(state.cylinders.size());
    auto side = [](double x) { return x >= 0.0 ? Branch::positive : Branch::negative; };
    structmodel::RegionAssignment a;
    for (int i = 1; i <= n; ++i) {
        const CylinderState& s = state.cylinders[static_cast<std::size_t>(i - 1)];
        const std::string sfx = pitchbench::cylinder_suffix(i, n);
        a["xv" + sfx] = side(s.x_v);
        a["cv" + sfx] = side(check_valve_gate(s.p_r, state.p_s, params));
    }
    a["rel"] = side(state.p_s - params.p_cr);
    a["gas"] = side(state.p_s - params.p_gas0);
    return a;
}

}  // namespace sadiag::hydrosim
