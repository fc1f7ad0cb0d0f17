#pragma once

// Constraint-based structural models: which symbols appear in which relation.
// The analytic form of each relation is not stored here.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sadiag::structmodel {

enum class VariableKind { unknown, known, fault };

std::string_view to_string(VariableKind kind);
std::optional<VariableKind> parse_kind(std::string_view text);

struct Variable {
    std::string id;
    VariableKind kind = VariableKind::unknown;
    std::string description;
    /// Set when this variable is the time derivative of another unknown.
    std::optional<std::string> derivative_of;

    bool operator==(const Variable&) const = default;
};

/// Which side of a Heaviside switch a gated constraint belongs to.
/// The switch boundary belongs to the positive side (H(0) = 1).
enum class Branch { positive, negative, both };

char branch_symbol(Branch branch);
std::optional<Branch> parse_branch(char symbol);

struct RegionGate {
    std::string switch_id;
    Branch branch = Branch::both;

    bool operator==(const RegionGate&) const = default;
};

struct Switch {
    std::string id;
    std::string condition;

    bool operator==(const Switch&) const = default;
};

struct Constraint {
    std::string id;
    /// Every symbol appearing in the relation, fault symbols included.
    std::vector<std::string> touches;
    std::optional<RegionGate> gate;
    /// Gated constraints that are branches of one Heaviside-condensed relation
    /// share a family id; the condensed relation takes that id.
    std::optional<std::string> family;
    std::string doc;

    bool operator==(const Constraint&) const = default;
};

/// A validation finding. Violations are data; `validate` never throws.
struct Violation {
    std::string code;
    std::string subject;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

class StructuralModel {
public:
    StructuralModel() = default;
    StructuralModel(std::string name, std::vector<Switch> switches, std::vector<Variable> variables,
                    std::vector<Constraint> constraints);

    const std::string& name() const { return name_; }
    const std::vector<Switch>& switches() const { return switches_; }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    const Variable* find_variable(std::string_view id) const;
    const Constraint* find_constraint(std::string_view id) const;
    const Switch* find_switch(std::string_view id) const;

    bool is_kind(std::string_view id, VariableKind kind) const;

    /// Fault symbols touched by a constraint, in touch order.
    std::vector<std::string> faults_of(const Constraint& c) const;
    /// Unknown symbols touched by a constraint, in touch order.
    std::vector<std::string> unknowns_of(const Constraint& c) const;

    std::vector<std::string> ids_of_kind(VariableKind kind) const;
    std::vector<std::string> fault_ids() const { return ids_of_kind(VariableKind::fault); }

    bool has_gates() const;

    bool operator==(const StructuralModel& other) const;

private:
    void reindex();

    std::string name_;
    std::vector<Switch> switches_;
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, std::size_t> variable_index_;
    std::unordered_map<std::string, std::size_t> constraint_index_;
    std::unordered_map<std::string, std::size_t> switch_index_;
};

ValidationReport validate(const StructuralModel& model);

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sadiag::structmodel
