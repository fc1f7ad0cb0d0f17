#include "sadiag/graphcore/bipartite.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sadiag::graphcore {

std::size_t Bipartite::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : adjacency) n += row.size();
    return n;
}

Bipartite Bipartite::from_model(const structmodel::StructuralModel& model) {
    Bipartite g;
    std::unordered_map<std::string, int> column;
    for (const auto& v : model.variables()) {
        if (v.kind != structmodel::VariableKind::unknown) continue;
        column.emplace(v.id, static_cast<int>(g.right.size()));
        g.right.push_back(v.id);
    }
    for (const auto& c : model.constraints()) {
        g.left.push_back(c.id);
        std::vector<int> row;
        for (const auto& t : c.touches) {
            auto it = column.find(t);
            if (it != column.end()) row.push_back(it->second);
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        g.adjacency.push_back(std::move(row));
    }
    return g;
}

Bipartite Bipartite::without_left(std::span<const int> removed) const {
    std::vector<char> drop(left.size(), 0);
    for (int r : removed) drop.at(static_cast<std::size_t>(r)) = 1;
    Bipartite g;
    g.right = right;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (drop[i]) continue;
        g.left.push_back(left[i]);
        g.adjacency.push_back(adjacency[i]);
    }
    return g;
}

Bipartite Bipartite::induced(std::span<const int> keep_left, std::vector<int>* left_map,
                             std::vector<int>* right_map) const {
    std::vector<int> new_index(right.size(), -1);
    Bipartite g;
    if (left_map) left_map->clear();
    if (right_map) right_map->clear();
    for (int l : keep_left) {
        for (int r : adjacency.at(static_cast<std::size_t>(l))) {
            if (new_index[r] < 0) {
                new_index[r] = static_cast<int>(g.right.size());
                g.right.push_back(right[r]);
                if (right_map) right_map->push_back(r);
            }
        }
    }
    for (int l : keep_left) {
        g.left.push_back(left[l]);
        if (left_map) left_map->push_back(l);
        std::vector<int> row;
        for (int r : adjacency[l]) row.push_back(new_index[r]);
        std::sort(row.begin(), row.end());
        g.adjacency.push_back(std::move(row));
    }
    return g;
}

void Bipartite::check() const {
    if (adjacency.size() != left.size()) throw std::invalid_argument("adjacency size differs from left vertex count");
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        std::vector<int> row = adjacency[i];
        for (int r : row) {
            if (r < 0 || r >= right_count()) throw std::invalid_argument("edge out of range at '" + left[i] + "'");
        }
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw std::invalid_argument("duplicate edge at '" + left[i] + "'");
        }
    }
}

}  // namespace sadiag::graphcore
