#include "sadiag/structmodel/transforms.hpp"

#include "sadiag/structmodel/parser.hpp"

#include <algorithm>
#include <set>

namespace sadiag::structmodel {

namespace {

bool id_taken(const StructuralModel& model, const std::string& id) {
    return model.find_variable(id) != nullptr || model.find_constraint(id) != nullptr ||
           model.find_switch(id) != nullptr;
}

}  // namespace

StructuralModel add_sensor(const StructuralModel& model, const SensorSpec& spec) {
    const Variable* measured = model.find_variable(spec.measured);
    if (measured == nullptr) throw ModelError("sensor '" + spec.sensor_name + "': no variable '" + spec.measured + "'");
    if (measured->kind != VariableKind::unknown) {
        throw ModelError("sensor '" + spec.sensor_name + "': '" + spec.measured + "' is not an unknown variable");
    }
    if (!is_identifier(spec.sensor_name)) throw ModelError("invalid sensor name '" + spec.sensor_name + "'");

    std::string suffix;
    for (int n = 2;; ++n) {
        const std::string base = spec.sensor_name + suffix;
        if (!id_taken(model, "y_" + base) && !id_taken(model, "m_" + base) && !id_taken(model, "f_y_" + base)) break;
        suffix = "_" + std::to_string(n);
    }
    const std::string base = spec.sensor_name + suffix;

    auto variables = model.variables();
    auto constraints = model.constraints();
    variables.push_back(Variable{"y_" + base, VariableKind::known, "measurement of " + spec.measured, std::nullopt});
    Constraint m;
    m.id = "m_" + base;
    m.touches = {"y_" + base, spec.measured};
    m.doc = "y_" + base + " = " + spec.measured + (spec.adds_fault ? " + f_y_" + base : "");
    if (spec.adds_fault) {
        variables.push_back(Variable{"f_y_" + base, VariableKind::fault, "sensor fault on y_" + base, std::nullopt});
        m.touches.push_back("f_y_" + base);
    }
    constraints.push_back(std::move(m));
    return StructuralModel(model.name(), model.switches(), std::move(variables), std::move(constraints));
}

StructuralModel specialize_region(const StructuralModel& model, const RegionAssignment& assignment) {
    for (const auto& [sw, branch] : assignment) {
        if (branch == Branch::both) throw ModelError("region assignment for '" + sw + "' must be + or -");
    }
    std::vector<Constraint> kept;
    for (const auto& c : model.constraints()) {
        if (!c.gate) {
            kept.push_back(c);
            continue;
        }
        auto it = assignment.find(c.gate->switch_id);
        if (it == assignment.end()) {
            throw ModelError("region assignment misses switch '" + c.gate->switch_id + "' (gate of '" + c.id + "')");
        }
        if (c.gate->branch == Branch::both || c.gate->branch == it->second) {
            Constraint copy = c;
            copy.gate.reset();
            copy.family.reset();
            kept.push_back(std::move(copy));
        }
    }
    return StructuralModel(model.name(), {}, model.variables(), std::move(kept));
}

StructuralModel condense_regions(const StructuralModel& model) {
    if (!model.has_gates()) return model;
    std::vector<Constraint> out;
    std::map<std::string, std::size_t> family_slot;
    for (const auto& c : model.constraints()) {
        if (!c.gate) {
            out.push_back(c);
            continue;
        }
        const std::string family = c.family.value_or(c.id);
        auto [it, fresh] = family_slot.try_emplace(family, out.size());
        if (fresh) {
            Constraint merged;
            merged.id = family;
            merged.doc = c.doc;
            out.push_back(std::move(merged));
        }
        Constraint& merged = out[it->second];
        for (const auto& t : c.touches) {
            if (std::find(merged.touches.begin(), merged.touches.end(), t) == merged.touches.end()) {
                merged.touches.push_back(t);
            }
        }
    }
    // Keep the canonical "non-faults first" order so condensed models serialize stably.
    for (auto& c : out) {
        std::stable_partition(c.touches.begin(), c.touches.end(),
                              [&](const std::string& t) { return !model.is_kind(t, VariableKind::fault); });
    }
    return StructuralModel(model.name(), {}, model.variables(), std::move(out));
}

StructuralModel expand_differential(const StructuralModel& model) {
    auto constraints = model.constraints();
    bool changed = false;
    for (const auto& v : model.variables()) {
        if (!v.derivative_of) continue;
        const std::string id = "d_" + *v.derivative_of;
        if (const Constraint* existing = model.find_constraint(id)) {
            const auto& t = existing->touches;
            if (std::find(t.begin(), t.end(), v.id) != t.end() &&
                std::find(t.begin(), t.end(), *v.derivative_of) != t.end()) {
                continue;
            }
            throw ModelError("cannot add differential constraint '" + id + "': id already in use");
        }
        Constraint d;
        d.id = id;
        d.touches = {v.id, *v.derivative_of};
        d.doc = v.id + " = d/dt " + *v.derivative_of;
        constraints.push_back(std::move(d));
        changed = true;
    }
    if (!changed) return model;
    return StructuralModel(model.name(), model.switches(), model.variables(), std::move(constraints));
}

}  // namespace sadiag::structmodel
