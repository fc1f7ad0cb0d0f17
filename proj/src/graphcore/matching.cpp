#include "sadiag/graphcore/matching.hpp"

#include <limits>
#include <queue>

namespace sadiag::graphcore {

int Matching::size() const {
    int n = 0;
    for (int m : left_mate) n += m >= 0 ? 1 : 0;
    return n;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t l = 0; l < left_mate.size(); ++l) {
        if (left_mate[l] >= 0) out.emplace_back(static_cast<int>(l), left_mate[l]);
    }
    return out;
}

bool Matching::is_valid_for(const Bipartite& g) const {
    if (left_mate.size() != g.left.size() || right_mate.size() != g.right.size()) return false;
    for (std::size_t l = 0; l < left_mate.size(); ++l) {
        const int r = left_mate[l];
        if (r < 0) continue;
        if (r >= g.right_count() || right_mate[r] != static_cast<int>(l)) return false;
        bool edge = false;
        for (int x : g.adjacency[l]) edge = edge || x == r;
        if (!edge) return false;
    }
    for (std::size_t r = 0; r < right_mate.size(); ++r) {
        const int l = right_mate[r];
        if (l >= 0 && (l >= g.left_count() || left_mate[l] != static_cast<int>(r))) return false;
    }
    return true;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
public:
    explicit HopcroftKarp(const Bipartite& g)
        : g_(g), left_mate_(g.left.size(), -1), right_mate_(g.right.size(), -1), dist_(g.left.size(), kInf) {}

    Matching run() {
        while (bfs()) {
            for (int l = 0; l < g_.left_count(); ++l) {
                if (left_mate_[l] < 0) dfs(l);
            }
        }
        return Matching{left_mate_, right_mate_};
    }

private:
    // Layers left vertices by alternating distance from the free ones.
    bool bfs() {
        std::queue<int> queue;
        for (int l = 0; l < g_.left_count(); ++l) {
            if (left_mate_[l] < 0) {
                dist_[l] = 0;
                queue.push(l);
            } else {
                dist_[l] = kInf;
            }
        }
        bool found_free_right = false;
        while (!queue.empty()) {
            const int l = queue.front();
            queue.pop();
            for (int r : g_.adjacency[l]) {
                const int next = right_mate_[r];
                if (next < 0) {
                    found_free_right = true;
                } else if (dist_[next] == kInf) {
                    dist_[next] = dist_[l] + 1;
                    queue.push(next);
                }
            }
        }
        return found_free_right;
    }

    bool dfs(int l) {
        for (int r : g_.adjacency[l]) {
            const int next = right_mate_[r];
            if (next < 0 || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                left_mate_[l] = r;
                right_mate_[r] = l;
                return true;
            }
        }
        dist_[l] = kInf;
        return false;
    }

    const Bipartite& g_;
    std::vector<int> left_mate_;
    std::vector<int> right_mate_;
    std::vector<int> dist_;
};

}  // namespace

Matching max_matching(const Bipartite& g) {
    return HopcroftKarp(g).run();
}

}  // namespace sadiag::graphcore
