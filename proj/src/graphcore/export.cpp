#include "sadiag/graphcore/export.hpp"

#include <sstream>

namespace sadiag::graphcore {

namespace {

const char* fill_of(Part p) {
    switch (p) {
        case Part::under:
            return "orange";
        case Part::just:
            return "lightblue";
        case Part::over:
            return "palegreen";
    }
    return "white";
}

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const Bipartite& g, const DmDecomposition& dm, const DotOptions& options) {
    std::ostringstream out;
    out << "graph " << quoted(options.graph_name) << " {\n";
    out << "  rankdir=LR;\n  node [style=filled, fontname=\"Helvetica\"];\n";

    auto constraint_node = [&](int l, const std::string& indent) {
        std::string label = g.left[l];
        if (static_cast<std::size_t>(l) < options.constraint_notes.size() && !options.constraint_notes[l].empty()) {
            label += "\\n" + options.constraint_notes[l];
        }
        out << indent << quoted("c:" + g.left[l]) << " [shape=box, label=" << quoted(label)
            << ", fillcolor=" << fill_of(dm.left_part[l]) << "];\n";
    };

    std::vector<char> emitted(g.left.size(), 0);
    if (options.fine_blocks) {
        int k = 0;
        for (const auto& block : just_blocks(g, dm)) {
            ++k;
            out << "  subgraph cluster_just_" << k << " {\n    label=" << quoted("block " + std::to_string(k))
                << ";\n";
            for (int l : block) {
                constraint_node(l, "    ");
                emitted[l] = 1;
            }
            out << "  }\n";
        }
    }
    for (int l = 0; l < g.left_count(); ++l) {
        if (!emitted[l]) constraint_node(l, "  ");
    }
    for (int r = 0; r < g.right_count(); ++r) {
        out << "  " << quoted("v:" + g.right[r]) << " [shape=ellipse, label=" << quoted(g.right[r])
            << ", fillcolor=" << fill_of(dm.right_part[r]) << "];\n";
    }
    for (int l = 0; l < g.left_count(); ++l) {
        for (int r : g.adjacency[l]) {
            const bool matched = dm.matching.left_mate.size() == g.left.size() && dm.matching.left_mate[l] == r;
            out << "  " << quoted("c:" + g.left[l]) << " -- " << quoted("v:" + g.right[r])
                << (matched ? " [penwidth=2.5]" : "") << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string incidence_csv(const Bipartite& g) {
    std::ostringstream out;
    out << "constraint";
    for (const auto& v : g.right) out << "," << v;
    out << "\n";
    for (int l = 0; l < g.left_count(); ++l) {
        std::vector<char> row(g.right.size(), 0);
        for (int r : g.adjacency[l]) row[r] = 1;
        out << g.left[l];
        for (char x : row) out << "," << (x ? 1 : 0);
        out << "\n";
    }
    return out.str();
}

}  // namespace sadiag::graphcore
