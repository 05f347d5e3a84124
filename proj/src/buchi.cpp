#include "rchase/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace rchase {

bool BuchiAutomaton::well_formed() const {
    if (delta.size() != accepting.size() || initial >= delta.size()) return false;
    for (const auto& row : delta) {
        if (row.size() != alphabet_size) return false;
        for (std::size_t q : row)
            if (q >= delta.size()) return false;
    }
    if (reject) {
        if (*reject >= delta.size() || accepting[*reject]) return false;
        for (std::size_t q : delta[*reject])
            if (q != *reject) return false;
    }
    return true;
}

namespace {

// Shortest words from `from` to every reachable state: predecessor and letter.
struct BfsTree {
    std::vector<std::optional<std::size_t>> pred;
    std::vector<std::size_t> letter;
    std::vector<std::size_t> order;
};

BfsTree bfs(const BuchiAutomaton& a, std::size_t from, bool skip_self) {
    BfsTree t{std::vector<std::optional<std::size_t>>(a.size()), std::vector<std::size_t>(a.size(), 0), {}};
    std::vector<bool> seen(a.size(), false);
    std::deque<std::size_t> queue;
    // With skip_self the search starts from the successors of `from`, so that
    // reaching `from` again closes a cycle.
    if (skip_self) {
        for (std::size_t l = 0; l < a.alphabet_size; ++l) {
            std::size_t q = a.delta[from][l];
            if (!seen[q]) {
                seen[q] = true;
                t.pred[q] = from;
                t.letter[q] = l;
                queue.push_back(q);
                t.order.push_back(q);
            }
        }
    } else {
        seen[from] = true;
        queue.push_back(from);
        t.order.push_back(from);
    }
    while (!queue.empty()) {
        std::size_t q = queue.front();
        queue.pop_front();
        if (skip_self && q == from) continue;
        for (std::size_t l = 0; l < a.alphabet_size; ++l) {
            std::size_t r = a.delta[q][l];
            if (seen[r]) continue;
            seen[r] = true;
            t.pred[r] = q;
            t.letter[r] = l;
            queue.push_back(r);
            t.order.push_back(r);
        }
    }
    return t;
}

std::vector<std::size_t> word_to(const BfsTree& t, std::size_t from, std::size_t to, bool closing) {
    std::vector<std::size_t> w;
    std::size_t q = to;
    bool first = closing;
    while (first || q != from) {
        first = false;
        w.push_back(t.letter[q]);
        q = *t.pred[q];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace

std::optional<Lasso> buchi_nonempty(const BuchiAutomaton& a) {
    BfsTree reach = bfs(a, a.initial, false);
    for (std::size_t s : reach.order) {
        if (!a.accepting[s]) continue;
        BfsTree back = bfs(a, s, true);
        if (!back.pred[s]) continue;
        Lasso l;
        l.stem = word_to(reach, a.initial, s, false);
        l.cycle = word_to(back, s, s, true);
        return l;
    }
    return std::nullopt;
}

bool accepts_lasso(const BuchiAutomaton& a, const Lasso& w) {
    if (w.cycle.empty()) return false;
    std::size_t q = a.initial;
    for (std::size_t l : w.stem) q = a.delta[q][l];
    // Iterate the cycle until its start state repeats; the states visited from
    // the first occurrence on recur forever.
    std::map<std::size_t, std::size_t> first_seen;
    std::vector<bool> accepting_round;
    while (!first_seen.count(q)) {
        first_seen.emplace(q, accepting_round.size());
        bool acc = false;
        for (std::size_t l : w.cycle) {
            q = a.delta[q][l];
            acc = acc || a.accepting[q];
        }
        accepting_round.push_back(acc);
    }
    return std::any_of(accepting_round.begin() + static_cast<long>(first_seen[q]), accepting_round.end(),
                       [](bool b) { return b; });
}

}  // namespace rchase
