#include "sadiag/diagnosis/diagnosis.hpp"

#include "sadiag/structmodel/transforms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sadiag::diagnosis {

using graphcore::Part;
using structmodel::StructuralModel;

IsolabilityMatrix::IsolabilityMatrix(std::vector<std::string> faults, std::vector<char> detectable,
                                     std::vector<char> cells)
    : faults_(std::move(faults)), detectable_(std::move(detectable)), cells_(std::move(cells)) {
    if (detectable_.size() != faults_.size() || cells_.size() != faults_.size() * faults_.size()) {
        throw DiagnosisError("isolability matrix dimensions do not match its fault list");
    }
}

std::optional<std::size_t> IsolabilityMatrix::index_of(const std::string& fault) const {
    auto it = std::find(faults_.begin(), faults_.end(), fault);
    if (it == faults_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - faults_.begin());
}

namespace {

IsolabilityMatrix permuted(const IsolabilityMatrix& m, const std::vector<std::size_t>& order) {
    const std::size_t n = m.size();
    std::vector<std::string> faults;
    std::vector<char> detectable;
    std::vector<char> cells(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        faults.push_back(m.faults()[order[a]]);
        detectable.push_back(m.detectable(order[a]) ? 1 : 0);
        for (std::size_t b = 0; b < n; ++b) cells[a * n + b] = m.at(order[a], order[b]) ? 1 : 0;
    }
    return IsolabilityMatrix(std::move(faults), std::move(detectable), std::move(cells));
}

}  // namespace

IsolabilityMatrix IsolabilityMatrix::sorted_by_id() const {
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return faults_[a] < faults_[b]; });
    return permuted(*this, order);
}

std::vector<std::vector<std::string>> IsolabilityMatrix::blocks() const {
    const std::size_t n = size();
    std::vector<int> component(n, -1);
    std::vector<std::vector<std::string>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (!detectable(s) || component[s] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<std::size_t> stack{s};
        component[s] = id;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            out.back().push_back(faults_[i]);
            for (std::size_t j = 0; j < n; ++j) {
                if (component[j] < 0 && detectable(j) && (at(i, j) || at(j, i))) {
                    component[j] = id;
                    stack.push_back(j);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool IsolabilityMatrix::blocks_are_cliques() const {
    for (const auto& block : blocks()) {
        for (const auto& a : block) {
            for (const auto& b : block) {
                if (!at(*index_of(a), *index_of(b))) return false;
            }
        }
    }
    return true;
}

std::uint64_t IsolabilityMatrix::pattern_hash() const {
    const IsolabilityMatrix s = sorted_by_id();
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&](unsigned char byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (char c : s.faults_[i]) feed(static_cast<unsigned char>(c));
        feed(0);
        feed(s.detectable(i) ? 'D' : 'U');
        for (std::size_t j = 0; j < s.size(); ++j) feed(s.at(i, j) ? '1' : '0');
    }
    return h;
}

StructuralModel prepare_for_analysis(const StructuralModel& model) {
    return structmodel::expand_differential(structmodel::condense_regions(model));
}

Analysis::Analysis(const StructuralModel& model, bool with_classes)
    : model_(prepare_for_analysis(model)),
      graph_(graphcore::Bipartite::from_model(model_)),
      dm_(with_classes ? graphcore::dm_decompose_with_classes(graph_) : graphcore::dm_decompose(graph_)),
      faults_(model_.fault_ids()) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < faults_.size(); ++i) index.emplace(faults_[i], i);
    fault_rows_.resize(faults_.size());
    for (std::size_t l = 0; l < model_.constraints().size(); ++l) {
        for (const auto& f : model_.faults_of(model_.constraints()[l])) {
            fault_rows_[index.at(f)].push_back(static_cast<int>(l));
        }
    }

    const std::vector<int> over = dm_.left_in(Part::over);
    over_graph_ = graph_.induced(over);
    over_position_.assign(graph_.left.size(), -1);
    for (std::size_t k = 0; k < over.size(); ++k) over_position_[over[k]] = static_cast<int>(k);

    detectable_.assign(faults_.size(), 0);
    for (std::size_t f = 0; f < faults_.size(); ++f) {
        for (int l : fault_rows_[f]) {
            if (dm_.left_part[l] == Part::over) detectable_[f] = 1;
        }
    }
}

std::size_t Analysis::fault_index(const std::string& fault) const {
    auto it = std::find(faults_.begin(), faults_.end(), fault);
    if (it == faults_.end()) throw DiagnosisError("unknown fault '" + fault + "'");
    return static_cast<std::size_t>(it - faults_.begin());
}

std::vector<FaultVerdict> Analysis::verdicts() const {
    std::vector<int> class_of(graph_.left.size(), -1);
    for (std::size_t k = 0; k < dm_.classes.size(); ++k) {
        for (int l : dm_.classes[k]) class_of[l] = static_cast<int>(k);
    }
    std::vector<FaultVerdict> out;
    for (std::size_t f = 0; f < faults_.size(); ++f) {
        FaultVerdict v{faults_[f], detectable(f), std::nullopt};
        for (int l : fault_rows_[f]) {
            if (class_of[l] >= 0) {
                v.class_id = class_of[l];
                break;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<char> Analysis::detectable_without(std::size_t removed) const {
    std::vector<int> drop;
    for (int l : fault_rows_.at(removed)) {
        if (over_position_[l] >= 0) drop.push_back(over_position_[l]);
    }
    std::sort(drop.begin(), drop.end());
    const std::vector<char> over_after = graphcore::over_constraints(over_graph_.without_left(drop));

    // Map surviving over_graph_ rows back to their position after removal.
    std::vector<int> shifted(over_graph_.left.size(), -1);
    int next = 0;
    for (std::size_t k = 0; k < over_graph_.left.size(); ++k) {
        if (!std::binary_search(drop.begin(), drop.end(), static_cast<int>(k))) shifted[k] = next++;
    }
    std::vector<char> out(faults_.size(), 0);
    for (std::size_t f = 0; f < faults_.size(); ++f) {
        for (int l : fault_rows_[f]) {
            const int k = over_position_[l];
            if (k >= 0 && shifted[k] >= 0 && over_after[shifted[k]]) out[f] = 1;
        }
    }
    return out;
}

bool Analysis::isolable(std::size_t i, std::size_t j) const {
    if (i >= faults_.size() || j >= faults_.size()) throw DiagnosisError("fault index out of range");
    if (i == j) throw DiagnosisError("isolability needs two distinct faults");
    if (!detectable(i)) return false;
    return detectable_without(j)[i] != 0;
}

IsolabilityMatrix Analysis::isolability_matrix() const {
    const std::size_t n = faults_.size();
    std::vector<char> cells(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::vector<char> still = detectable_without(j);
        for (std::size_t i = 0; i < n; ++i) {
            if (!detectable(i)) continue;
            cells[i * n + j] = (i == j || !still[i]) ? 1 : 0;
        }
    }
    const IsolabilityMatrix natural(faults_, detectable_, cells);

    // Order: detectable faults grouped by block (blocks keyed by first member),
    // then by id; undetectable faults last, by id.
    std::map<std::string, std::string> block_key;
    for (const auto& block : natural.blocks()) {
        for (const auto& f : block) block_key[f] = block.front();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const bool da = detectable(a), db = detectable(b);
        if (da != db) return da;
        if (da) {
            const auto& ka = block_key.at(faults_[a]);
            const auto& kb = block_key.at(faults_[b]);
            if (ka != kb) return ka < kb;
        }
        return faults_[a] < faults_[b];
    });
    return permuted(natural, order);
}

std::vector<FaultVerdict> detectable_faults(const StructuralModel& model) {
    return Analysis(model).verdicts();
}

bool isolable(const StructuralModel& model, const std::string& fi, const std::string& fj) {
    const Analysis analysis(model);
    return analysis.isolable(analysis.fault_index(fi), analysis.fault_index(fj));
}

IsolabilityMatrix isolability_matrix(const StructuralModel& model) {
    return Analysis(model).isolability_matrix();
}

MatrixDiff compare_matrices(const IsolabilityMatrix& a, const IsolabilityMatrix& b) {
    const IsolabilityMatrix sa = a.sorted_by_id();
    const IsolabilityMatrix sb = b.sorted_by_id();
    if (sa.faults() != sb.faults()) throw DiagnosisError("cannot compare isolability matrices over different fault sets");
    MatrixDiff diff;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa.detectable(i) != sb.detectable(i)) diff.detectability_changed.push_back(sa.faults()[i]);
        for (std::size_t j = 0; j < sa.size(); ++j) {
            if (sa.at(i, j) != sb.at(i, j)) diff.cells.push_back({sa.faults()[i], sa.faults()[j], sa.at(i, j), sb.at(i, j)});
        }
    }
    return diff;
}

}  // namespace sadiag::diagnosis
