#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rchase/chaseable.hpp"
#include "rchase/tgd.hpp"

namespace rchase {

// Node label of an abstract join tree. `eq` is an equivalence relation over
// {f,m} x [width]: element f_i is i (positions of the father), m_i is width+i
// (positions of the node itself). It is stored as canonical block ids.
struct AjtLabel {
    Predicate pred;
    std::optional<std::size_t> origin;  // rule index; empty for database nodes
    std::vector<int> eq;

    static std::size_t f(std::size_t i) { return i; }
    static std::size_t m(std::size_t width, std::size_t i) { return width + i; }
    bool same(std::size_t a, std::size_t b) const { return eq[a] == eq[b]; }
};

// Smallest equivalence over 2*width elements containing the given pairs.
std::vector<int> make_equivalence(std::size_t width, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

struct AjtNode {
    AjtLabel label;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
};

// Node 0 is the root.
struct AbstractJoinTree {
    std::size_t width = 0;
    std::vector<AjtNode> nodes;

    std::size_t add(AjtLabel label, std::optional<std::size_t> parent);
};

struct AjtViolation {
    int condition;  // 0 for shape errors (arity, degree, unknown predicate or rule)
    std::size_t node;
    std::string message;
};

// Checks the structural conditions of an abstract join tree for the ruleset.
std::optional<AjtViolation> validate_ajt(const AbstractJoinTree& t, const Ruleset& rules);

struct DecodedAjt {
    std::vector<Atom> atoms;  // per node
    Instance instance;        // all nodes
    Instance database;        // database nodes only
};

// One fresh constant e<k> per class of the smallest equivalence over
// (node, position) generated by m-m pairs within a node and f-m pairs along edges.
DecodedAjt decode_ajt(const AbstractJoinTree& t, const Ruleset& rules);

// Encodes a tree of atoms: eq(y) records equalities inside y and between y and its father.
AbstractJoinTree encode_ajt(std::size_t width, const std::vector<Atom>& atoms,
                            const std::vector<std::optional<std::size_t>>& parent,
                            const std::vector<std::optional<std::size_t>>& origin);

// Every rule node has a side parent of each required type, and the before
// relation over the decoded nodes is acyclic.
ChaseableReport ajt_chaseable_check(const AbstractJoinTree& t, const Ruleset& rules);

}  // namespace rchase
