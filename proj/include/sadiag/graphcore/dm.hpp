#pragma once

#include "sadiag/graphcore/bipartite.hpp"
#include "sadiag/graphcore/matching.hpp"

#include <vector>

namespace sadiag::graphcore {

enum class Part { under, just, over };

/// Coarse Dulmage-Mendelsohn partition.
///
/// under: everything reachable by alternating paths from an unmatched variable.
/// over:  everything reachable by alternating paths from an unmatched constraint.
/// just:  the perfectly matched remainder.
///
/// The partition does not depend on which maximum matching was used.
struct DmDecomposition {
    Matching matching;
    std::vector<Part> left_part;   // per constraint
    std::vector<Part> right_part;  // per variable
    /// Equivalence classes of the over part (filled by `equivalence_classes`).
    std::vector<std::vector<int>> classes;

    std::vector<int> left_in(Part p) const;
    std::vector<int> right_in(Part p) const;
    bool has_over() const;
};

DmDecomposition dm_decompose(const Bipartite& g);

/// Boolean per constraint: is it in the over-determined part.
std::vector<char> over_constraints(const Bipartite& g);

/// Partition of the over-part constraints: c1 and c2 are equivalent when
/// removing c1 drops c2 out of the over part. Computed by one DM run per
/// class representative on the over-part subgraph, O(|over| * DM).
/// Classes are ordered by their smallest constraint index, members ascending.
std::vector<std::vector<int>> equivalence_classes(const Bipartite& g, const DmDecomposition& dm);

/// dm_decompose followed by equivalence_classes.
DmDecomposition dm_decompose_with_classes(const Bipartite& g);

/// Fine ordering of the just part: strongly connected blocks of the matched
/// digraph, listed in a topological (solvable) order. Used for DOT output.
std::vector<std::vector<int>> just_blocks(const Bipartite& g, const DmDecomposition& dm);

}  // namespace sadiag::graphcore
