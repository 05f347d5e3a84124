#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rchase/chase.hpp"
#include "rchase/chase_graph.hpp"

namespace rchase {

struct ChaseableReport {
    enum class Failure { None, NotParentClosed, BeforeCycle };

    bool chaseable = true;
    Failure failure = Failure::None;
    // A node whose parent is missing, or the nodes of a before-cycle in order.
    std::vector<std::size_t> witness;
    std::string message;
};

// Decides whether the database nodes of g together with `subset` form a
// chaseable set: parent-closed and without a cycle of the before relation.
// Finite sets satisfy the remaining condition vacuously.
ChaseableReport is_chaseable(const ChaseGraph& g, std::span<const std::size_t> subset);

// Emits the non-database nodes of a chaseable set in before-minimal order
// (smallest node index first among the minimal ones). Every step is re-checked
// for activeness. Throws Error if the set is not chaseable.
Derivation chaseable_to_derivation(const ChaseGraph& g, std::span<const std::size_t> subset);

// One occurrence of an atom in a multiset instance.
struct Occurrence {
    Atom label;
    std::optional<Trigger> trigger;           // empty for K_0 occurrences
    std::optional<std::size_t> guard_parent;  // occurrence of the guard image
};

// A multiset of atoms with provenance and guard-parent edges.
class MultiInstance {
public:
    MultiInstance() = default;
    explicit MultiInstance(std::span<const Atom> base);

    std::size_t add(Occurrence occ);
    std::size_t size() const { return occurrences_.size(); }
    const Occurrence& operator[](std::size_t i) const { return occurrences_[i]; }
    const std::vector<Occurrence>& occurrences() const { return occurrences_; }

    // The set of labels.
    Instance labels() const;
    // First occurrence with the given label.
    std::optional<std::size_t> find(const Atom& label) const;
    // Follows guard-parent edges to an occurrence without one.
    std::size_t gp_root(std::size_t i) const;
    bool gp_descends(std::size_t descendant, std::size_t ancestor) const;

private:
    std::vector<Occurrence> occurrences_;
};

// Appends one occurrence per trigger. The guard parent of each new occurrence is
// guard_occurrences[i] when given, else the first occurrence whose label is the
// image of the rule's guard. Triggers must be active on the labels of k.
MultiInstance weakly_restricted_step(const MultiInstance& k, std::span<const Trigger> triggers, const Ruleset& rules,
                                     std::span<const std::size_t> guard_occurrences = {});

struct Rank {
    std::size_t step = 0;
    std::size_t index = 0;
    auto operator<=>(const Rank&) const = default;
};

// A total order on the non-base occurrences of a multiset instance.
class EnumerationOrder {
public:
    EnumerationOrder() = default;
    explicit EnumerationOrder(std::vector<std::optional<Rank>> ranks) : ranks_(std::move(ranks)) {}

    const std::vector<std::optional<Rank>>& ranks() const { return ranks_; }
    // Ranked occurrences from smallest to largest.
    std::vector<std::size_t> sequence() const;
    // Base occurrences are unranked, every other occurrence is ranked, ranks
    // are distinct, and every guard parent precedes its children.
    bool validate(const MultiInstance& k) const;

private:
    std::vector<std::optional<Rank>> ranks_;
};

struct ExtractState {
    std::vector<std::size_t> pending;
    std::vector<std::size_t> born;
    std::vector<std::size_t> stopped;
};

struct ExtractResult {
    Derivation derivation;
    std::vector<std::size_t> born;
    std::vector<std::size_t> stopped;
};

// Turns a weakly restricted multiset into a restricted derivation of the base
// labels: occurrences are visited in enumeration order; one that is the result
// of an active trigger on the atoms born so far is born, otherwise it and all of
// its guard descendants are stopped. The observer sees the state after every
// iteration.
ExtractResult extract(const MultiInstance& k, const EnumerationOrder& order, const Ruleset& rules,
                      const std::function<void(const ExtractState&)>& observer = {});

// An active trigger on `instance` whose result is `atom`, if any.
std::optional<Trigger> find_active_producer(const Ruleset& rules, const Instance& instance, const Atom& atom);

}  // namespace rchase
