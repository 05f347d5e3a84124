#pragma once

#include <string>

#include "rchase/ajt.hpp"
#include "rchase/chase_graph.hpp"
#include "rchase/guarded.hpp"

namespace rchase {

struct DotOptions {
    bool parent_edges = true;
    bool guard_parent_edges = false;  // requires a guarded ruleset
    bool side_parent_edges = false;   // requires a guarded ruleset
    bool stop_edges = false;
};

// Nodes are labelled "atom" plus the producing rule ("db" for database atoms).
std::string chase_graph_dot(const ChaseGraph& g, const DotOptions& options = {});

// The tree T_ac; nodes show their label and the copied database atom.
std::string join_tree_dot(const Treeification& t);

std::string ajt_dot(const AbstractJoinTree& t, const Ruleset& rules);

}  // namespace rchase
