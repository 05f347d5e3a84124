#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace rchase {

// A directed cycle in the graph given by successor lists, or empty if acyclic.
inline std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& succ) {
    std::vector<int> colour(succ.size(), 0);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> cycle;
    auto dfs = [&](auto&& self, std::size_t u) -> bool {
        colour[u] = 1;
        stack.push_back(u);
        for (std::size_t v : succ[u]) {
            if (colour[v] == 1) {
                cycle.assign(std::find(stack.begin(), stack.end(), v), stack.end());
                return true;
            }
            if (colour[v] == 0 && self(self, v)) return true;
        }
        stack.pop_back();
        colour[u] = 2;
        return false;
    };
    for (std::size_t u = 0; u < succ.size(); ++u)
        if (colour[u] == 0 && dfs(dfs, u)) return cycle;
    return {};
}

// Minimal union-find with path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t add() {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace rchase
