#include "rchase/guarded.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rchase/classes.hpp"

namespace rchase {

std::string SideatomType::to_string() const {
    std::string s = "<" + std::string(pred.name()) + "," + std::to_string(guard_arity) + ",{";
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(i + 1) + "->" + std::to_string(xi[i] + 1);
    }
    return s + "}>";
}

bool sideatom_match(const Atom& alpha, const SideatomType& pi, const Atom& beta) {
    if (alpha.pred != pi.pred || beta.arity() != pi.guard_arity || alpha.arity() != pi.xi.size()) return false;
    for (std::size_t i = 0; i < pi.xi.size(); ++i)
        if (pi.xi[i] >= beta.arity() || alpha.args[i] != beta.args[pi.xi[i]]) return false;
    return true;
}

SideatomType sideatom_type(const Tgd& rule, std::size_t guard, std::size_t k) {
    const Atom& g = rule.body()[guard];
    const Atom& a = rule.body()[k];
    SideatomType pi{a.pred, g.arity(), {}};
    for (const Term& v : a.args) {
        auto it = std::find(g.args.begin(), g.args.end(), v);
        if (it == g.args.end()) throw UnsupportedError("rule " + rule.name() + ": body atom is not covered by the guard");
        pi.xi.push_back(static_cast<std::size_t>(it - g.args.begin()));
    }
    return pi;
}

GuardAnnotation annotate_gp_sp(const ChaseGraph& g) {
    GuardedReport gr = check_guarded(g.rules());
    if (!gr.guarded)
        throw UnsupportedError("ruleset is not guarded: rule " + g.rules()[*gr.violation].name() + " has no guard");
    GuardAnnotation ann;
    ann.guard_parent.resize(g.size());
    ann.side_parents.resize(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) {
        if (g[u].is_database()) continue;
        const Tgd& rule = g.rules()[g[u].trigger->rule];
        std::size_t guard = *gr.guards[g[u].trigger->rule];
        ann.guard_parent[u] = g[u].parents[guard];
        for (std::size_t k = 0; k < rule.body().size(); ++k)
            if (k != guard) ann.side_parents[u].push_back({g[u].parents[k], sideatom_type(rule, guard, k)});
    }
    return ann;
}

std::size_t gp_root(const GuardAnnotation& ann, std::size_t node) {
    while (ann.guard_parent[node]) node = *ann.guard_parent[node];
    return node;
}

RemoteSideParents remote_side_parents(const ChaseGraph& g, const GuardAnnotation& ann) {
    std::set<Situation> sits;
    std::set<std::pair<std::size_t, std::size_t>> longs;
    for (std::size_t ap = 0; ap < g.size(); ++ap) {
        if (g[ap].is_database()) continue;
        std::size_t alpha = gp_root(ann, ap);
        for (const SideParent& sp : ann.side_parents[ap]) {
            std::size_t beta = gp_root(ann, sp.node);
            if (beta == alpha || g[beta].label == g[alpha].label) continue;
            sits.insert({alpha, ap, beta, sp.node});
            longs.emplace(alpha, beta);
        }
    }
    return {{sits.begin(), sits.end()}, {longs.begin(), longs.end()}};
}

ChaseGraph derivation_graph(const Derivation& d, const Ruleset& rules) {
    std::vector<ChaseNode> nodes;
    std::unordered_map<Atom, std::size_t, AtomHash> index;
    for (const Atom& a : d.database) {
        index.emplace(a, nodes.size());
        nodes.push_back(ChaseNode{a, std::nullopt, {}, 0});
    }
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& s = d.steps[i];
        ChaseNode n{s.produced, s.trigger, {}, 0};
        for (const Atom& b : body_image(rules, s.trigger)) {
            auto it = index.find(b);
            if (it == index.end()) throw Error("step " + std::to_string(i) + ": body atom " + b.to_string() + " is missing");
            n.parents.push_back(it->second);
            n.depth = std::max(n.depth, nodes[it->second].depth + 1);
        }
        if (!index.emplace(s.produced, nodes.size()).second)
            throw Error("step " + std::to_string(i) + ": atom " + s.produced.to_string() + " produced twice");
        nodes.push_back(std::move(n));
    }
    return ChaseGraph(rules, std::move(nodes));
}

}  // namespace rchase
