#include "sadiag/graphcore/dm.hpp"

#include <algorithm>
#include <functional>

namespace sadiag::graphcore {

std::vector<int> DmDecomposition::left_in(Part p) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < left_part.size(); ++i) {
        if (left_part[i] == p) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> DmDecomposition::right_in(Part p) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < right_part.size(); ++i) {
        if (right_part[i] == p) out.push_back(static_cast<int>(i));
    }
    return out;
}

bool DmDecomposition::has_over() const {
    return std::find(left_part.begin(), left_part.end(), Part::over) != left_part.end();
}

namespace {

// Marks vertices reachable by alternating paths from the unmatched constraints.
void mark_over(const Bipartite& g, const Matching& m, std::vector<char>& left_seen, std::vector<char>& right_seen) {
    std::vector<int> stack;
    for (int l = 0; l < g.left_count(); ++l) {
        if (m.left_mate[l] < 0) {
            left_seen[l] = 1;
            stack.push_back(l);
        }
    }
    while (!stack.empty()) {
        const int l = stack.back();
        stack.pop_back();
        for (int r : g.adjacency[l]) {
            if (right_seen[r]) continue;
            right_seen[r] = 1;
            const int next = m.right_mate[r];  // always matched: the matching is maximum
            if (next >= 0 && !left_seen[next]) {
                left_seen[next] = 1;
                stack.push_back(next);
            }
        }
    }
}

// Marks vertices reachable by alternating paths from the unmatched variables.
void mark_under(const Bipartite& g, const Matching& m, std::vector<char>& left_seen, std::vector<char>& right_seen) {
    std::vector<std::vector<int>> incident(g.right.size());
    for (int l = 0; l < g.left_count(); ++l) {
        for (int r : g.adjacency[l]) incident[r].push_back(l);
    }
    std::vector<int> stack;
    for (int r = 0; r < g.right_count(); ++r) {
        if (m.right_mate[r] < 0) {
            right_seen[r] = 1;
            stack.push_back(r);
        }
    }
    while (!stack.empty()) {
        const int r = stack.back();
        stack.pop_back();
        for (int l : incident[r]) {
            if (left_seen[l]) continue;
            left_seen[l] = 1;
            const int next = m.left_mate[l];
            if (next >= 0 && !right_seen[next]) {
                right_seen[next] = 1;
                stack.push_back(next);
            }
        }
    }
}

}  // namespace

DmDecomposition dm_decompose(const Bipartite& g) {
    DmDecomposition dm;
    dm.matching = max_matching(g);
    dm.left_part.assign(g.left.size(), Part::just);
    dm.right_part.assign(g.right.size(), Part::just);

    std::vector<char> left_over(g.left.size(), 0), right_over(g.right.size(), 0);
    mark_over(g, dm.matching, left_over, right_over);
    std::vector<char> left_under(g.left.size(), 0), right_under(g.right.size(), 0);
    mark_under(g, dm.matching, left_under, right_under);

    for (std::size_t i = 0; i < g.left.size(); ++i) {
        if (left_over[i]) dm.left_part[i] = Part::over;
        if (left_under[i]) dm.left_part[i] = Part::under;
    }
    for (std::size_t i = 0; i < g.right.size(); ++i) {
        if (right_over[i]) dm.right_part[i] = Part::over;
        if (right_under[i]) dm.right_part[i] = Part::under;
    }
    return dm;
}

std::vector<char> over_constraints(const Bipartite& g) {
    const Matching m = max_matching(g);
    std::vector<char> left_seen(g.left.size(), 0), right_seen(g.right.size(), 0);
    mark_over(g, m, left_seen, right_seen);
    return left_seen;
}

std::vector<std::vector<int>> equivalence_classes(const Bipartite& g, const DmDecomposition& dm) {
    const std::vector<int> over = dm.left_in(Part::over);
    const Bipartite sub = g.induced(over);
    std::vector<int> class_of(over.size(), -1);
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < over.size(); ++i) {
        if (class_of[i] >= 0) continue;
        const int id = static_cast<int>(classes.size());
        classes.emplace_back();
        const int removed[] = {static_cast<int>(i)};
        const std::vector<char> still_over = over_constraints(sub.without_left(removed));
        // without_left shifts indices above i down by one.
        for (std::size_t j = 0; j < over.size(); ++j) {
            const bool gone = j == i || !still_over[j < i ? j : j - 1];
            if (gone && class_of[j] < 0) {
                class_of[j] = id;
                classes.back().push_back(over[j]);
            }
        }
    }
    return classes;
}

DmDecomposition dm_decompose_with_classes(const Bipartite& g) {
    DmDecomposition dm = dm_decompose(g);
    dm.classes = equivalence_classes(g, dm);
    return dm;
}

std::vector<std::vector<int>> just_blocks(const Bipartite& g, const DmDecomposition& dm) {
    const std::vector<int> just = dm.left_in(Part::just);
    std::vector<int> position(g.left.size(), -1);
    for (std::size_t i = 0; i < just.size(); ++i) position[just[i]] = static_cast<int>(i);

    // Edge a -> b when constraint a needs the variable computed by constraint b.
    std::vector<std::vector<int>> depends(just.size());
    for (std::size_t i = 0; i < just.size(); ++i) {
        const int l = just[i];
        for (int r : g.adjacency[l]) {
            if (r == dm.matching.left_mate[l]) continue;
            const int other = dm.matching.right_mate[r];
            if (other >= 0 && position[other] >= 0) depends[i].push_back(position[other]);
        }
    }

    // Tarjan emits a component only after everything it depends on.
    std::vector<int> index(just.size(), -1), low(just.size(), 0);
    std::vector<char> on_stack(just.size(), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> blocks;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (int w : depends[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> block;
            int w = -1;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                block.push_back(just[w]);
            } while (w != v);
            std::sort(block.begin(), block.end());
            blocks.push_back(std::move(block));
        }
    };
    for (std::size_t v = 0; v < just.size(); ++v) {
        if (index[v] < 0) visit(static_cast<int>(v));
    }
    return blocks;
}

}  // namespace sadiag::graphcore
