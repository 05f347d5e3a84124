#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rchase/instance.hpp"
#include "rchase/term.hpp"

namespace rchase {

// A single-head, constant-free tuple-generating dependency body -> exists z. head.
class Tgd {
public:
    // Throws RuleError on an empty body, a constant or null argument, or a
    // nullary atom.
    Tgd(std::string name, std::vector<Atom> body, Atom head);

    const std::string& name() const { return name_; }
    std::uint32_t name_symbol() const { return name_symbol_; }
    const std::vector<Atom>& body() const { return body_; }
    const Atom& head() const { return head_; }

    // Distinct body variables in order of first occurrence. Triggers assign
    // terms in this order.
    const std::vector<Term>& body_vars() const { return body_vars_; }
    const std::vector<Term>& frontier() const { return frontier_; }
    const std::vector<Term>& existentials() const { return existentials_; }

    // Slot of a body variable in body_vars(), or -1.
    int slot_of(Term var) const;
    bool is_frontier(Term var) const;
    bool is_existential(Term var) const;

    // Head positions (0-based) holding a frontier variable.
    std::vector<std::size_t> frontier_positions() const;

    // For each body atom and position, the slot of its variable.
    const std::vector<std::vector<int>>& body_slots() const { return body_slots_; }
    // For each head position: slot >= 0 of a frontier variable, or -(k+1) for existential k.
    const std::vector<int>& head_slots() const { return head_slots_; }

    std::size_t variable_count() const { return body_vars_.size() + existentials_.size(); }

    std::string to_string() const;
    bool operator==(const Tgd& other) const;

private:
    std::string name_;
    std::uint32_t name_symbol_ = 0;
    std::vector<Atom> body_;
    Atom head_;
    std::vector<Term> body_vars_;
    std::vector<Term> frontier_;
    std::vector<Term> existentials_;
    std::vector<std::vector<int>> body_slots_;
    std::vector<int> head_slots_;
};

struct SchemaEntry {
    Predicate pred;
    std::size_t arity;
};

// An ordered list of TGDs with distinct names and consistent arities.
// Variables are scoped per rule, so rules are implicitly renamed apart.
class Ruleset {
public:
    Ruleset() = default;
    // Throws RuleError on duplicate names or inconsistent arities.
    explicit Ruleset(std::vector<Tgd> rules, std::vector<SchemaEntry> extra_schema = {});

    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }
    const Tgd& operator[](std::size_t i) const { return rules_[i]; }
    const std::vector<Tgd>& rules() const { return rules_; }
    auto begin() const { return rules_.begin(); }
    auto end() const { return rules_.end(); }

    std::optional<std::size_t> index_of(std::string_view name) const;

    // Predicates in order of first occurrence.
    const std::vector<SchemaEntry>& schema() const { return schema_; }
    std::optional<std::size_t> arity(Predicate p) const;
    std::size_t max_arity() const { return max_arity_; }
    // Largest number of distinct variables in a single rule.
    std::size_t max_rule_variables() const;

    // Checks that every atom uses a schema predicate with matching arity, or a
    // predicate unknown to the schema. Throws RuleError on an arity clash.
    void check_compatible(const Instance& instance) const;

    std::string to_string() const;
    bool operator==(const Ruleset& other) const { return rules_ == other.rules_; }

private:
    void add_schema(Predicate p, std::size_t arity);

    std::vector<Tgd> rules_;
    std::vector<SchemaEntry> schema_;
    std::unordered_map<std::uint32_t, std::size_t> arity_;
    std::size_t max_arity_ = 0;
};

}  // namespace rchase
