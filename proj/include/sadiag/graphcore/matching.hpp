#pragma once

#include "sadiag/graphcore/bipartite.hpp"

#include <utility>
#include <vector>

namespace sadiag::graphcore {

/// Injective constraint/variable pairing. -1 marks an unmatched vertex.
struct Matching {
    std::vector<int> left_mate;
    std::vector<int> right_mate;

    int size() const;
    std::vector<std::pair<int, int>> pairs() const;  // (left, right), ordered by left
    bool is_valid_for(const Bipartite& g) const;
};

/// Maximum cardinality matching (Hopcroft-Karp). Free left vertices and
/// adjacency lists are scanned in index order, so the result is a pure
/// function of the input ordering.
Matching max_matching(const Bipartite& g);

}  // namespace sadiag::graphcore
