#pragma once

#include "sadiag/structmodel/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace sadiag::graphcore {

/// Constraint-by-unknown incidence. Left vertices are constraints, right
/// vertices are unknown variables; both keep declaration order.
struct Bipartite {
    std::vector<std::string> left;
    std::vector<std::string> right;
    std::vector<std::vector<int>> adjacency;  // left index -> sorted right indices

    int left_count() const { return static_cast<int>(left.size()); }
    int right_count() const { return static_cast<int>(right.size()); }
    std::size_t edge_count() const;

    /// Builds the graph over unknowns only; known and fault symbols carry no edge.
    static Bipartite from_model(const structmodel::StructuralModel& model);

    /// Same graph with the given left vertices removed. Right vertices are
    /// kept so indices of variables stay comparable.
    Bipartite without_left(std::span<const int> removed) const;

    /// Induced subgraph on the given left vertices and every right vertex they touch.
    /// `left_map`/`right_map` receive the original index of each new vertex.
    Bipartite induced(std::span<const int> keep_left, std::vector<int>* left_map = nullptr,
                      std::vector<int>* right_map = nullptr) const;

    /// Throws std::invalid_argument on out-of-range or duplicate edges.
    void check() const;
};

}  // namespace sadiag::graphcore
