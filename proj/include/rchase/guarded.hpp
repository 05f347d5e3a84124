#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rchase/chase_graph.hpp"
#include "rchase/chaseable.hpp"
#include "rchase/error.hpp"

namespace rchase {

// <P, m, xi>: an atom alpha is a pi-sideatom of beta when pred(alpha) = P,
// arity(beta) = m and alpha[i] = beta[xi(i)] for all i. Positions are 0-based.
struct SideatomType {
    Predicate pred;
    std::size_t guard_arity = 0;
    std::vector<std::size_t> xi;

    std::string to_string() const;
    auto operator<=>(const SideatomType&) const = default;
};

bool sideatom_match(const Atom& alpha, const SideatomType& pi, const Atom& beta);

// Type of body atom `k` of a rule relative to its guard.
SideatomType sideatom_type(const Tgd& rule, std::size_t guard, std::size_t k);

struct SideParent {
    std::size_t node;
    SideatomType type;
};

struct GuardAnnotation {
    std::vector<std::optional<std::size_t>> guard_parent;  // per node
    std::vector<std::vector<SideParent>> side_parents;     // per node
};

// Splits the parents of every node into its guard parent and typed side
// parents. Throws UnsupportedError for unguarded rulesets.
GuardAnnotation annotate_gp_sp(const ChaseGraph& g);

// Guard-parent root of a node.
std::size_t gp_root(const GuardAnnotation& ann, std::size_t node);

// <alpha, alpha', beta, beta'>: distinct database nodes alpha and beta, alpha'
// a proper guard descendant of alpha, beta' equal to or a guard descendant of
// beta, and beta' a side parent of alpha'.
struct Situation {
    std::size_t alpha;
    std::size_t alpha_prime;
    std::size_t beta;
    std::size_t beta_prime;
    auto operator<=>(const Situation&) const = default;
};

struct RemoteSideParents {
    std::vector<Situation> situations;
    // (alpha, beta) such that alpha longs for beta; sorted, distinct.
    std::vector<std::pair<std::size_t, std::size_t>> longs_for;
};

RemoteSideParents remote_side_parents(const ChaseGraph& g, const GuardAnnotation& ann);

// The graph of a restricted derivation: one node per database atom and per
// step; the parents of a step are the nodes of its body image.
ChaseGraph derivation_graph(const Derivation& d, const Ruleset& rules);

class PrefixTooShortError : public Error {
public:
    PrefixTooShortError(Atom missing, const std::string& message)
        : Error(message), missing_(std::move(missing)) {}
    const Atom& missing() const { return missing_; }

private:
    Atom missing_;
};

struct JoinTreeNode {
    Atom label;
    Atom source;  // h_ac(label): the database atom this node copies
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    std::size_t depth = 0;
};

// The tree T_ac of longs-for paths from alpha_inf and the acyclic database D_ac
// it spells out. Node 0 is the root, labelled alpha_inf.
struct Treeification {
    std::vector<JoinTreeNode> nodes;
    std::size_t ell_infinity = 0;
    std::vector<Situation> situations;                     // over the prefix graph
    std::vector<std::pair<Atom, Atom>> longs_for;          // (alpha, beta) atoms

    MultiInstance database() const;
    Instance database_set() const;
    // h_ac on terms.
    std::map<Term, Term> term_map() const;
};

// Builds T_ac for alpha_inf from a derivation prefix of `database`. Throws
// PrefixTooShortError when alpha_inf has no guard descendants in the prefix or
// when a remote side parent is first realized in the second half of a
// budget-exhausted prefix.
Treeification treeify(const Instance& database, const Atom& alpha_inf, const Derivation& prefix, const Ruleset& rules);

// The weakly restricted sequence K_0, K_1, ... mirroring a derivation of the
// original database over D_ac, with the enumeration order of its occurrences.
struct WeakChase {
    MultiInstance k;
    EnumerationOrder order;
    std::vector<Atom> hbar;              // per occurrence: the mirrored atom of the original derivation
    std::vector<std::size_t> tree_node;  // per occurrence: tree node of its guard root
};

WeakChase build_weak_chase(const Treeification& tree, const Derivation& original, const Ruleset& rules,
                           std::size_t steps);

}  // namespace rchase
