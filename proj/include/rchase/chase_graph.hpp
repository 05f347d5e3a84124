#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rchase/chase.hpp"

namespace rchase {

struct ChaseNode {
    Atom label;
    std::optional<Trigger> trigger;   // empty for database nodes
    std::vector<std::size_t> parents; // one per body atom, in body order
    std::size_t depth = 0;

    bool is_database() const { return !trigger.has_value(); }
};

using Edge = std::pair<std::size_t, std::size_t>;

// A depth-bounded prefix of the real oblivious chase: one node per database
// atom and one node per (trigger, tuple of parent nodes). Nodes are stored in
// order of non-decreasing depth; database nodes come first.
class ChaseGraph {
public:
    ChaseGraph() = default;
    ChaseGraph(Ruleset rules, std::vector<ChaseNode> nodes);

    const Ruleset& rules() const { return rules_; }
    const std::vector<ChaseNode>& nodes() const { return nodes_; }
    const ChaseNode& operator[](std::size_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t database_size() const;

    // (parent, child), one entry per distinct pair.
    std::vector<Edge> parent_edges() const;
    // (v, u) such that label(v) stops label(u); u is a non-database node and v != u.
    std::vector<Edge> stop_pairs() const;

private:
    Ruleset rules_;
    std::vector<ChaseNode> nodes_;
};

// Builds all nodes of depth <= max_depth. Throws Error if more than max_nodes
// nodes would be created.
ChaseGraph build_real_oblivious(const Ruleset& rules, const Instance& database, std::size_t max_depth,
                                std::size_t max_nodes = 200000);

// Edges of the before relation: database node -> non-database node, parent ->
// child, and u -> v whenever label(v) stops label(u). Sorted, without duplicates.
std::vector<Edge> before_edges(const ChaseGraph& g);

}  // namespace rchase
