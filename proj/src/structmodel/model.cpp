#include "sadiag/structmodel/model.hpp"

#include <map>
#include <set>
#include <sstream>

namespace sadiag::structmodel {

std::string_view to_string(VariableKind kind) {
    switch (kind) {
        case VariableKind::unknown:
            return "unknown";
        case VariableKind::known:
            return "known";
        case VariableKind::fault:
            return "fault";
    }
    return "unknown";
}

std::optional<VariableKind> parse_kind(std::string_view text) {
    if (text == "unknown") return VariableKind::unknown;
    if (text == "known") return VariableKind::known;
    if (text == "fault") return VariableKind::fault;
    return std::nullopt;
}

char branch_symbol(Branch branch) {
    switch (branch) {
        case Branch::positive:
            return '+';
        case Branch::negative:
            return '-';
        case Branch::both:
            return '*';
    }
    return '*';
}

std::optional<Branch> parse_branch(char symbol) {
    switch (symbol) {
        case '+':
            return Branch::positive;
        case '-':
            return Branch::negative;
        case '*':
            return Branch::both;
        default:
            return std::nullopt;
    }
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const auto& v : violations) {
        out << "[" << v.code << "] " << v.subject << ": " << v.message << "\n";
    }
    return out.str();
}

StructuralModel::StructuralModel(std::string name, std::vector<Switch> switches, std::vector<Variable> variables,
                                 std::vector<Constraint> constraints)
    : name_(std::move(name)),
      switches_(std::move(switches)),
      variables_(std::move(variables)),
      constraints_(std::move(constraints)) {
    reindex();
}

void StructuralModel::reindex() {
    // First declaration wins; duplicates are reported by validate().
    for (std::size_t i = 0; i < variables_.size(); ++i) variable_index_.try_emplace(variables_[i].id, i);
    for (std::size_t i = 0; i < constraints_.size(); ++i) constraint_index_.try_emplace(constraints_[i].id, i);
    for (std::size_t i = 0; i < switches_.size(); ++i) switch_index_.try_emplace(switches_[i].id, i);
}

const Variable* StructuralModel::find_variable(std::string_view id) const {
    auto it = variable_index_.find(std::string(id));
    return it == variable_index_.end() ? nullptr : &variables_[it->second];
}

const Constraint* StructuralModel::find_constraint(std::string_view id) const {
    auto it = constraint_index_.find(std::string(id));
    return it == constraint_index_.end() ? nullptr : &constraints_[it->second];
}

const Switch* StructuralModel::find_switch(std::string_view id) const {
    auto it = switch_index_.find(std::string(id));
    return it == switch_index_.end() ? nullptr : &switches_[it->second];
}

bool StructuralModel::is_kind(std::string_view id, VariableKind kind) const {
    const Variable* v = find_variable(id);
    return v != nullptr && v->kind == kind;
}

std::vector<std::string> StructuralModel::faults_of(const Constraint& c) const {
    std::vector<std::string> out;
    for (const auto& t : c.touches) {
        if (is_kind(t, VariableKind::fault)) out.push_back(t);
    }
    return out;
}

std::vector<std::string> StructuralModel::unknowns_of(const Constraint& c) const {
    std::vector<std::string> out;
    for (const auto& t : c.touches) {
        if (is_kind(t, VariableKind::unknown)) out.push_back(t);
    }
    return out;
}

std::vector<std::string> StructuralModel::ids_of_kind(VariableKind kind) const {
    std::vector<std::string> out;
    for (const auto& v : variables_) {
        if (v.kind == kind) out.push_back(v.id);
    }
    return out;
}

bool StructuralModel::has_gates() const {
    for (const auto& c : constraints_) {
        if (c.gate) return true;
    }
    return false;
}

bool StructuralModel::operator==(const StructuralModel& other) const {
    return name_ == other.name_ && switches_ == other.switches_ && variables_ == other.variables_ &&
           constraints_ == other.constraints_;
}

ValidationReport validate(const StructuralModel& model) {
    ValidationReport report;
    auto add = [&](std::string code, std::string subject, std::string message) {
        report.violations.push_back({std::move(code), std::move(subject), std::move(message)});
    };

    std::set<std::string> seen;
    for (const auto& s : model.switches()) {
        if (!seen.insert(s.id).second) add("duplicate-id", s.id, "switch declared more than once");
    }
    seen.clear();
    for (const auto& v : model.variables()) {
        if (!seen.insert(v.id).second) add("duplicate-id", v.id, "variable declared more than once");
    }
    seen.clear();
    for (const auto& c : model.constraints()) {
        if (!seen.insert(c.id).second) add("duplicate-id", c.id, "constraint declared more than once");
        if (model.find_variable(c.id) != nullptr) {
            add("duplicate-id", c.id, "constraint id collides with a variable id");
        }
    }

    for (const auto& v : model.variables()) {
        if (!v.derivative_of) continue;
        if (v.kind != VariableKind::unknown) {
            add("bad-derivative", v.id, "only unknown variables can be derivatives");
        }
        const Variable* base = model.find_variable(*v.derivative_of);
        if (base == nullptr) {
            add("dangling-reference", v.id, "deriv_of names undeclared variable '" + *v.derivative_of + "'");
        } else if (base->kind != VariableKind::unknown) {
            add("bad-derivative", v.id, "deriv_of target '" + base->id + "' is not unknown");
        } else if (base->id == v.id) {
            add("bad-derivative", v.id, "variable is declared as its own derivative");
        }
    }

    std::set<std::string> touched_faults;
    std::map<std::string, std::map<Branch, std::string>> family_branches;
    std::map<std::string, std::string> family_switch;
    for (const auto& c : model.constraints()) {
        if (c.touches.empty()) add("empty-constraint", c.id, "constraint touches no variable");
        std::set<std::string> local;
        for (const auto& t : c.touches) {
            if (!local.insert(t).second) add("duplicate-touch", c.id, "'" + t + "' listed twice");
            const Variable* v = model.find_variable(t);
            if (v == nullptr) {
                add("dangling-reference", c.id, "touches undeclared variable '" + t + "'");
            } else if (v->kind == VariableKind::fault) {
                touched_faults.insert(t);
            }
        }
        if (c.gate) {
            if (model.find_switch(c.gate->switch_id) == nullptr) {
                add("dangling-reference", c.id, "gate names undeclared switch '" + c.gate->switch_id + "'");
            }
            const std::string family = c.family.value_or(c.id);
            auto [it, fresh] = family_switch.try_emplace(family, c.gate->switch_id);
            if (!fresh && it->second != c.gate->switch_id) {
                add("bad-family", c.id, "family '" + family + "' mixes switches");
            }
            auto& branches = family_branches[family];
            if (!branches.try_emplace(c.gate->branch, c.id).second) {
                add("bad-family", c.id, "family '" + family + "' has two constraints on the same branch");
            }
        } else if (c.family) {
            add("bad-family", c.id, "family given on an ungated constraint");
        }
    }
    for (const auto& [family, _] : family_branches) {
        const Constraint* same_id = model.find_constraint(family);
        if (same_id != nullptr && !(same_id->gate && same_id->family.value_or(same_id->id) == family)) {
            add("duplicate-id", family, "family id collides with an unrelated constraint");
        }
    }

    for (const auto& v : model.variables()) {
        if (v.kind == VariableKind::fault && touched_faults.count(v.id) == 0) {
            add("orphan-fault", v.id, "fault appears in no constraint");
        }
    }
    return report;
}

}  // namespace sadiag::structmodel
