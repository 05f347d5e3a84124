#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rchase/tgd.hpp"

namespace rchase {

// A body variable of a given rule. Rules are renamed apart, so the pair is unique.
struct RuleVariable {
    std::size_t rule;
    Term var;

    auto operator<=>(const RuleVariable&) const = default;
};

struct GuardedReport {
    bool guarded = true;
    // Index of the guard (left-most body atom holding every body variable) per rule.
    std::vector<std::optional<std::size_t>> guards;
    // First rule without a guard.
    std::optional<std::size_t> violation;
};

GuardedReport check_guarded(const Ruleset& rules);

// Least fixpoint of the marking procedure.
std::set<RuleVariable> marked_variables(const Ruleset& rules);

struct StickyReport {
    bool sticky = true;
    std::set<RuleVariable> marked;
    // A marked variable occurring more than once in a rule body.
    std::optional<RuleVariable> violation;
};

StickyReport check_sticky(const Ruleset& rules);

// 0-based head positions of a rule holding an unmarked variable. Existential
// positions are never marked and therefore always included.
std::vector<std::size_t> immortal_head_positions(const Ruleset& rules, std::size_t rule,
                                                 const std::set<RuleVariable>& marked);

struct ClassReport {
    GuardedReport guarded;
    StickyReport sticky;
    std::string to_string(const Ruleset& rules) const;
};

ClassReport classify(const Ruleset& rules);

}  // namespace rchase
