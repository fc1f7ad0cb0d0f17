#pragma once

#include "sadiag/graphcore/bipartite.hpp"
#include "sadiag/graphcore/dm.hpp"
#include "sadiag/structmodel/model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sadiag::diagnosis {

class DiagnosisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FaultVerdict {
    std::string fault;
    bool detectable = false;
    /// Equivalence class (index into the over-part classes) of the first
    /// over-part constraint carrying the fault.
    std::optional<int> class_id;
};

/// Square fault-by-fault matrix. cell(i, j) set means fault j cannot be
/// exonerated when fault i occurs. Rows of undetectable faults are all clear.
class IsolabilityMatrix {
public:
    IsolabilityMatrix() = default;
    IsolabilityMatrix(std::vector<std::string> faults, std::vector<char> detectable, std::vector<char> cells);

    std::size_t size() const { return faults_.size(); }
    const std::vector<std::string>& faults() const { return faults_; }
    bool detectable(std::size_t i) const { return detectable_[i] != 0; }
    bool at(std::size_t i, std::size_t j) const { return cells_[i * faults_.size() + j] != 0; }
    std::optional<std::size_t> index_of(const std::string& fault) const;

    /// Same matrix with rows/columns permuted into lexicographic fault order.
    IsolabilityMatrix sorted_by_id() const;
    /// Groups of mutually non-isolable detectable faults (connected components),
    /// each sorted, groups ordered by first member.
    std::vector<std::vector<std::string>> blocks() const;
    /// True when the non-isolability relation among detectable faults is
    /// transitive, i.e. every block is a full square.
    bool blocks_are_cliques() const;
    /// FNV-1a over the id-sorted pattern; equal for equal patterns.
    std::uint64_t pattern_hash() const;

    bool operator==(const IsolabilityMatrix&) const = default;

private:
    std::vector<std::string> faults_;
    std::vector<char> detectable_;
    std::vector<char> cells_;
};

struct CellDiff {
    std::string row;
    std::string column;
    bool a = false;
    bool b = false;
};

struct MatrixDiff {
    std::vector<CellDiff> cells;
    std::vector<std::string> detectability_changed;

    bool empty() const { return cells.empty() && detectability_changed.empty(); }
    std::size_t size() const { return cells.size(); }
};

/// Model as analyzed: Heaviside-condensed and with differential constraints.
structmodel::StructuralModel prepare_for_analysis(const structmodel::StructuralModel& model);

/// One structural analysis of a model, reused by every query below.
class Analysis {
public:
    /// `with_classes = false` skips the equivalence classes; verdicts then
    /// carry no class id.
    explicit Analysis(const structmodel::StructuralModel& model, bool with_classes = true);

    const structmodel::StructuralModel& model() const { return model_; }
    const graphcore::Bipartite& graph() const { return graph_; }
    const graphcore::DmDecomposition& dm() const { return dm_; }
    const std::vector<std::string>& faults() const { return faults_; }

    std::size_t fault_index(const std::string& fault) const;
    /// Constraint indices (into graph().left) carrying each fault.
    const std::vector<int>& constraints_of(std::size_t fault) const { return fault_rows_[fault]; }

    bool detectable(std::size_t fault) const { return detectable_[fault] != 0; }
    std::vector<FaultVerdict> verdicts() const;

    /// Per fault: still detectable once every constraint carrying `removed` is deleted.
    std::vector<char> detectable_without(std::size_t removed) const;
    /// Fault i is isolable from fault j when i stays detectable after every
    /// constraint carrying j is deleted.
    bool isolable(std::size_t i, std::size_t j) const;

    IsolabilityMatrix isolability_matrix() const;

private:
    structmodel::StructuralModel model_;
    graphcore::Bipartite graph_;
    graphcore::DmDecomposition dm_;
    std::vector<std::string> faults_;
    std::vector<std::vector<int>> fault_rows_;
    std::vector<char> detectable_;
    // Over-part subgraph; deletions only ever shrink the over part, so
    // isolability queries can run on it instead of the whole graph.
    graphcore::Bipartite over_graph_;
    std::vector<int> over_position_;  // graph_ left index -> over_graph_ left index or -1
};

std::vector<FaultVerdict> detectable_faults(const structmodel::StructuralModel& model);
bool isolable(const structmodel::StructuralModel& model, const std::string& fi, const std::string& fj);
IsolabilityMatrix isolability_matrix(const structmodel::StructuralModel& model);

/// Throws DiagnosisError when the fault sets differ.
MatrixDiff compare_matrices(const IsolabilityMatrix& a, const IsolabilityMatrix& b);

}  // namespace sadiag::diagnosis
