#pragma once

#include "sadiag/graphcore/bipartite.hpp"
#include "sadiag/graphcore/dm.hpp"

#include <string>
#include <vector>

namespace sadiag::graphcore {

struct DotOptions {
    std::string graph_name = "structure";
    /// Group just-determined constraints into their fine blocks (clusters).
    bool fine_blocks = false;
    /// Optional extra label line per constraint (e.g. the faults it carries).
    std::vector<std::string> constraint_notes;
};

/// Graphviz rendering with the three DM parts colored
/// (under: orange, just: light blue, over: light green).
std::string to_dot(const Bipartite& g, const DmDecomposition& dm, const DotOptions& options = {});

/// Incidence matrix, rows = constraints, columns = unknown variables, 0/1 entries.
std::string incidence_csv(const Bipartite& g);

}  // namespace sadiag::graphcore
