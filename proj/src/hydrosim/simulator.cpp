#include "sadiag/hydrosim/simulator.hpp"

#include "sadiag/pitchbench/pitch_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace sadiag::hydrosim {

using pitchbench::cylinder_suffix;

SimulationAborted::SimulationAborted(std::size_t step_index, double time, std::string component,
                                     const std::string& reason)
    : std::runtime_error("simulation aborted at step " + std::to_string(step_index) + " (t = " +
                         std::to_string(time) + " s): " + component + " " + reason),
      step_index_(step_index),
      time_(time),
      component_(std::move(component)) {}

structmodel::RegionAssignment Trajectory::region(std::size_t k) const {
    structmodel::RegionAssignment a;
    const std::string& code = regions.at(k);
    for (std::size_t s = 0; s < switch_ids.size(); ++s) {
        a[switch_ids[s]] = code[s] == '+' ? structmodel::Branch::positive : structmodel::Branch::negative;
    }
    return a;
}

SimScenario equilibrium_scenario(const PlantParameters& params, int n_cylinders, double duration) {
    SimScenario sc;
    sc.params = params;
    sc.n_cylinders = n_cylinders;
    sc.duration = duration;
    sc.initial.p_s = params.p_s_nominal;
    for (int i = 0; i < n_cylinders; ++i) {
        CylinderState s;
        s.x_c = 0.5 * params.x_c_max;
        s.p_p = params.p_atm;
        s.p_r = params.p_atm;
        sc.initial.cylinders.push_back(s);
        sc.u.push_back(Signal::constant(0.0));
        sc.F_ext.push_back(Signal::constant(params.A_p * s.p_p - params.A_r * s.p_r));
    }
    sc.Q_s = Signal::constant(0.0);
    return sc;
}

namespace {

using CylinderField = double CylinderFaults::*;
using SharedField = double PlantFaults::*;

struct FaultSlot {
    int cylinder = -1;  // -1 for shared faults
    CylinderField cyl_field = nullptr;
    SharedField shared_field = nullptr;
};

std::map<std::string, FaultSlot> fault_slots(int n) {
    std::map<std::string, FaultSlot> out;
    const std::pair<const char*, CylinderField> per_cylinder[] = {
        {"f_Fr_c", &CylinderFaults::Fr_c}, {"f_Q_le_p", &CylinderFaults::Q_le_p},
        {"f_Q_le_r", &CylinderFaults::Q_le_r}, {"f_Q_li", &CylinderFaults::Q_li},
        {"f_Q_p", &CylinderFaults::Q_p}, {"f_Q_rv", &CylinderFaults::Q_rv},
        {"f_Fr_v", &CylinderFaults::Fr_v}, {"f_wv_v", &CylinderFaults::wv_v},
        {"f_Q_cv", &CylinderFaults::Q_cv}};
    for (int i = 1; i <= n; ++i) {
        for (const auto& [name, field] : per_cylinder) {
            out[name + cylinder_suffix(i, n)] = FaultSlot{i - 1, field, nullptr};
        }
    }
    out["f_B_e"] = FaultSlot{-1, nullptr, &PlantFaults::B_e};
    out["f_Q_ru"] = FaultSlot{-1, nullptr, &PlantFaults::Q_ru};
    out["f_Q_rel"] = FaultSlot{-1, nullptr, &PlantFaults::Q_rel};
    out["f_acc"] = FaultSlot{-1, nullptr, &PlantFaults::acc};
    return out;
}

bool is_sensor_fault(const std::string& id) { return id.rfind("f_y_", 0) == 0; }

}  // namespace

std::vector<std::string> sensor_names(int n, bool with_external_force) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        for (const char* base : {"xc", "pp", "pr", "xv"}) out.push_back(base + s);
        if (with_external_force) out.push_back("Fext" + s);
    }
    out.push_back("ps");
    return out;
}

std::vector<std::string> check_scenario(const SimScenario& sc) {
    std::vector<std::string> out = pitchbench::check_parameters(sc.params);
    if (sc.n_cylinders != 1 && sc.n_cylinders != 3) out.push_back("cylinders must be 1 or 3");
    if (!(sc.step > 0) || !std::isfinite(sc.step)) out.push_back("step must be > 0");
    if (!(sc.duration >= sc.step) || !std::isfinite(sc.duration)) out.push_back("duration must be >= step");
    if (sc.record_every == 0) out.push_back("record_every must be >= 1");
    const auto n = static_cast<std::size_t>(std::max(sc.n_cylinders, 0));
    if (sc.u.size() != n) out.push_back("need one u signal per cylinder");
    if (sc.F_ext.size() != n) out.push_back("need one F_ext signal per cylinder");
    if (sc.initial.cylinders.size() != n) out.push_back("need one initial state per cylinder");
    if (!(sc.initial.p_s >= pressure_floor)) out.push_back("initial p_s must be >= 1 kPa");
    for (std::size_t i = 0; i < sc.initial.cylinders.size(); ++i) {
        const auto& c = sc.initial.cylinders[i];
        const std::string tag = " (cylinder " + std::to_string(i + 1) + ")";
        for (double v : {c.x_c, c.v_c, c.p_p, c.p_r, c.x_v, c.v_v}) {
            if (!std::isfinite(v)) out.push_back("initial state must be finite" + tag);
        }
        if (!(c.p_p >= pressure_floor) || !(c.p_r >= pressure_floor)) {
            out.push_back("initial chamber pressures must be >= 1 kPa" + tag);
        }
        if (!(c.x_c >= 0 && c.x_c <= sc.params.x_c_max)) out.push_back("initial x_c outside [0, x_c_max]" + tag);
    }
    const auto slots = fault_slots(sc.n_cylinders);
    const auto sensors = sensor_names(sc.n_cylinders, true);
    for (const auto& f : sc.faults) {
        try {
            check_fault_signal(f);
        } catch (const SignalError& e) {
            out.push_back(e.what());
        }
        if (is_sensor_fault(f.fault)) {
            if (std::find(sensors.begin(), sensors.end(), f.fault.substr(4)) == sensors.end()) {
                out.push_back("unknown sensor fault '" + f.fault + "'");
            }
        } else if (!slots.count(f.fault)) {
            out.push_back("unknown fault '" + f.fault + "'");
        }
    }
    return out;
}

PlantFaults faults_at(const SimScenario& sc, double t) {
    static thread_local std::map<int, std::map<std::string, FaultSlot>> cache;
    auto it = cache.find(sc.n_cylinders);
    if (it == cache.end()) it = cache.emplace(sc.n_cylinders, fault_slots(sc.n_cylinders)).first;
    const auto& slots = it->second;

    PlantFaults f;
    f.cylinders.resize(static_cast<std::size_t>(sc.n_cylinders));
    for (const auto& fs : sc.faults) {
        auto slot = slots.find(fs.fault);
        if (slot == slots.end()) continue;
        const double v = fs.signal(t);
        if (slot->second.cylinder >= 0) {
            f.cylinders[static_cast<std::size_t>(slot->second.cylinder)].*(slot->second.cyl_field) += v;
        } else {
            f.*(slot->second.shared_field) += v;
        }
    }
    return f;
}

namespace {

InputSample inputs_at(const SimScenario& sc, double t) {
    InputSample in;
    for (int i = 0; i < sc.n_cylinders; ++i) {
        const auto k = static_cast<std::size_t>(i);
        in.cylinders.push_back(CylinderInputs{sc.u[k](t), sc.F_ext[k](t)});
    }
    in.Q_s = sc.Q_s(t);
    return in;
}

// y = x + a * dx, component-wise
PlantState axpy(const PlantState& x, double a, const PlantState& dx) {
    PlantState y = x;
    for (std::size_t i = 0; i < y.cylinders.size(); ++i) {
        CylinderState& c = y.cylinders[i];
        const CylinderState& d = dx.cylinders[i];
        c.x_c += a * d.x_c;
        c.v_c += a * d.v_c;
        c.p_p += a * d.p_p;
        c.p_r += a * d.p_r;
        c.x_v += a * d.x_v;
        c.v_v += a * d.v_v;
    }
    y.p_s += a * dx.p_s;
    return y;
}

std::string region_code(const structmodel::RegionAssignment& a) {
    std::string code;
    for (const auto& [id, branch] : a) code += structmodel::branch_symbol(branch);
    return code;
}

// First offending component, if any.
std::optional<std::pair<std::string, std::string>> check_state(const PlantState& s, int n) {
    for (int i = 0; i < n; ++i) {
        const CylinderState& c = s.cylinders[static_cast<std::size_t>(i)];
        const std::string sfx = cylinder_suffix(i + 1, n);
        const std::pair<const char*, double> values[] = {{"x_c", c.x_c}, {"v_c", c.v_c}, {"p_p", c.p_p},
                                                         {"p_r", c.p_r}, {"x_v", c.x_v}, {"v_v", c.v_v}};
        for (const auto& [name, v] : values) {
            if (!std::isfinite(v)) return std::make_pair(name + sfx, std::string("is not finite"));
        }
        if (c.p_p < pressure_floor) return std::make_pair("p_p" + sfx, std::string("fell below the 1 kPa floor"));
        if (c.p_r < pressure_floor) return std::make_pair("p_r" + sfx, std::string("fell below the 1 kPa floor"));
    }
    if (!std::isfinite(s.p_s)) return std::make_pair(std::string("p_s"), std::string("is not finite"));
    if (s.p_s < pressure_floor) return std::make_pair(std::string("p_s"), std::string("fell below the 1 kPa floor"));
    return std::nullopt;
}

}  // namespace

Trajectory simulate(const SimScenario& sc) {
    const auto problems = check_scenario(sc);
    if (!problems.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ScenarioError(msg);
    }
    const PlantParameters& P = sc.params;
    const int n = sc.n_cylinders;
    const double h = sc.step;
    const auto steps = static_cast<std::size_t>(std::ceil(sc.duration / h - 1e-9));

    Trajectory traj;
    traj.n_cylinders = n;
    traj.switch_ids = sorted_switch_ids(n);

    auto rate = [&](const PlantState& s, double t, std::size_t k, Derived* derived) {
        const InputSample in = inputs_at(sc, t);
        try {
            return plant_derivative(s, in.cylinders, in.Q_s, faults_at(sc, t), P, derived);
        } catch (const std::domain_error& e) {
            throw SimulationAborted(k, t, "p_s", e.what());
        }
    };
    auto record = [&](std::size_t k, double t, const PlantState& s) {
        Derived d;
        rate(s, t, k, &d);
        traj.step_index.push_back(k);
        traj.time.push_back(t);
        traj.states.push_back(s);
        traj.derived.push_back(std::move(d));
        traj.inputs.push_back(inputs_at(sc, t));
        traj.regions.push_back(region_code(plant_region(s, P)));
    };

    PlantState x = sc.initial;
    record(0, 0.0, x);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k - 1) * h;
        const PlantState k1 = rate(x, t, k, nullptr);
        const PlantState k2 = rate(axpy(x, 0.5 * h, k1), t + 0.5 * h, k, nullptr);
        const PlantState k3 = rate(axpy(x, 0.5 * h, k2), t + 0.5 * h, k, nullptr);
        const PlantState k4 = rate(axpy(x, h, k3), t + h, k, nullptr);
        PlantState next = axpy(x, h / 6.0, k1);
        next = axpy(next, h / 3.0, k2);
        next = axpy(next, h / 3.0, k3);
        next = axpy(next, h / 6.0, k4);

        const double t_next = static_cast<double>(k) * h;
        if (auto bad = check_state(next, n)) throw SimulationAborted(k, t_next, bad->first, bad->second);
        // End stops: outside the modeled physics, the rod simply halts.
        for (auto& c : next.cylinders) {
            if (c.x_c < 0.0 || c.x_c > P.x_c_max) {
                c.x_c = std::clamp(c.x_c, 0.0, P.x_c_max);
                c.v_c = 0.0;
            }
        }
        x = std::move(next);
        if (k % sc.record_every == 0 || k == steps) record(k, t_next, x);
    }
    return traj;
}

std::vector<double> sensor_readout(const Trajectory& traj, const std::string& sensor,
                                   const std::vector<FaultSignal>& sensor_faults) {
    const int n = traj.n_cylinders;
    const auto names = sensor_names(n, true);
    if (std::find(names.begin(), names.end(), sensor) == names.end()) {
        throw std::invalid_argument("unknown sensor '" + sensor + "'");
    }
    std::size_t cyl = 0;
    std::string base = sensor;
    if (sensor != "ps" && n > 1) {
        const auto us = sensor.rfind('_');
        cyl = static_cast<std::size_t>(std::stoi(sensor.substr(us + 1)) - 1);
        base = sensor.substr(0, us);
    }
    std::vector<double> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const PlantState& s = traj.states[k];
        double y = 0.0;
        if (base == "ps") y = s.p_s;
        else if (base == "xc") y = s.cylinders[cyl].x_c;
        else if (base == "pp") y = s.cylinders[cyl].p_p;
        else if (base == "pr") y = s.cylinders[cyl].p_r;
        else if (base == "xv") y = s.cylinders[cyl].x_v;
        else y = traj.inputs[k].cylinders[cyl].F_ext;
        for (const auto& f : sensor_faults) {
            if (f.fault == "f_y_" + sensor) y += f.signal(traj.time[k]);
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace sadiag::hydrosim
