#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rchase/error.hpp"

namespace rchase {

// A complete deterministic Büchi automaton over letters 0..alphabet_size-1.
struct BuchiAutomaton {
    std::size_t alphabet_size = 0;
    std::size_t initial = 0;
    std::vector<std::vector<std::size_t>> delta;  // delta[state][letter]
    std::vector<bool> accepting;
    std::optional<std::size_t> reject;            // absorbing, non-accepting

    std::size_t size() const { return delta.size(); }
    // Total, in-range transitions; absorbing non-accepting reject state.
    bool well_formed() const;
};

struct Lasso {
    std::vector<std::size_t> stem;
    std::vector<std::size_t> cycle;  // non-empty
};

// An accepted ultimately periodic word stem.cycle^omega, or nothing if the
// language is empty. The cycle returns to an accepting state, so it visits one
// at least once every |cycle| <= |states| letters, and
// |stem| + |cycle| <= |states| * (|states| + 1).
std::optional<Lasso> buchi_nonempty(const BuchiAutomaton& a);

// Whether a accepts stem.cycle^omega.
bool accepts_lasso(const BuchiAutomaton& a, const Lasso& w);

// Builds the reachable part of an automaton given by a successor function.
// State 0 of the result is the reject sink (reached when `step` returns
// nothing), state 1 the initial state. Throws Error beyond max_states.
template <class State, class Hash = std::hash<State>>
BuchiAutomaton explore_automaton(const State& init, std::size_t alphabet_size,
                                 const std::function<std::optional<State>(const State&, std::size_t)>& step,
                                 const std::function<bool(const State&)>& accepting,
                                 std::vector<State>* states_out = nullptr, std::size_t max_states = 1000000) {
    BuchiAutomaton a;
    a.alphabet_size = alphabet_size;
    a.reject = 0;
    a.initial = 1;
    a.delta.push_back(std::vector<std::size_t>(alphabet_size, 0));
    a.accepting.push_back(false);
    std::vector<State> states;
    std::unordered_map<State, std::size_t, Hash> index;
    auto intern = [&](const State& s) {
        auto [it, fresh] = index.emplace(s, a.delta.size());
        if (fresh) {
            if (a.delta.size() >= max_states) throw Error("automaton exceeds " + std::to_string(max_states) + " states");
            states.push_back(s);
            a.delta.emplace_back(alphabet_size, 0);
            a.accepting.push_back(accepting(s));
        }
        return it->second;
    };
    intern(init);
    for (std::size_t q = 1; q < a.delta.size(); ++q) {
        for (std::size_t l = 0; l < alphabet_size; ++l) {
            std::optional<State> next = step(states[q - 1], l);
            a.delta[q][l] = next ? intern(*next) : 0;
        }
    }
    if (states_out) *states_out = std::move(states);
    return a;
}

}  // namespace rchase
