#pragma once

#include <optional>
#include <vector>

#include "rchase/sticky.hpp"

namespace rchase::sticky_detail {

// One letter read on an abstract atom.
struct AbstractStep {
    EqualityType next;
    std::vector<int> head_source;   // per head position: block of the current atom, or -1
    std::vector<bool> frontier;     // per head position
    std::vector<int> block_source;  // per block of next: block of the current atom, or -1
};

std::optional<AbstractStep> abstract_step(const Ruleset& rules, const EqualityType& e, const CatLetter& w);

// Head positions receiving a term from the given positions of the current atom.
PositionSet delta_pos(const Ruleset& rules, PositionSet pi, const CatLetter& w);

struct CcState {
    PositionSet pi1 = 0;
    PositionSet pi2 = 0;
    bool top = false;
    bool operator==(const CcState&) const = default;
};

std::vector<std::vector<bool>> immortal_positions(const Ruleset& rules);

std::optional<CcState> cc_step(const Ruleset& rules, const std::vector<std::vector<bool>>& immortal, const CcState& q,
                               const CatLetter& w);

}  // namespace rchase::sticky_detail
