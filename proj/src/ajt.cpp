#include "rchase/ajt.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rchase/classes.hpp"
#include "rchase/graph_util.hpp"
#include "rchase/guarded.hpp"

namespace rchase {

std::vector<int> make_equivalence(std::size_t width, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    UnionFind uf(2 * width);
    for (const auto& [a, b] : pairs) uf.unite(a, b);
    std::vector<int> out(2 * width);
    std::map<std::size_t, int> ids;
    for (std::size_t i = 0; i < 2 * width; ++i) {
        auto [it, fresh] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

std::size_t AbstractJoinTree::add(AjtLabel label, std::optional<std::size_t> parent) {
    std::size_t id = nodes.size();
    nodes.push_back(AjtNode{std::move(label), parent, {}});
    if (parent) nodes[*parent].children.push_back(id);
    return id;
}

namespace {

std::string node_name(const AbstractJoinTree& t, std::size_t x) {
    return "node " + std::to_string(x) + " (" + std::string(t.nodes[x].label.pred.name()) + ")";
}

}  // namespace

std::optional<AjtViolation> validate_ajt(const AbstractJoinTree& t, const Ruleset& rules) {
    const std::size_t w = t.width;
    const std::size_t degree = std::max(w, rules.size());
    if (t.nodes.empty()) return AjtViolation{1, 0, "empty tree has no database node"};
    for (std::size_t x = 0; x < t.nodes.size(); ++x) {
        const AjtNode& n = t.nodes[x];
        if (n.label.eq.size() != 2 * w) return AjtViolation{0, x, node_name(t, x) + ": equivalence has wrong size"};
        auto ar = rules.arity(n.label.pred);
        if (!ar || *ar > w) return AjtViolation{0, x, node_name(t, x) + ": predicate not in the schema"};
        if (n.label.origin && *n.label.origin >= rules.size())
            return AjtViolation{0, x, node_name(t, x) + ": unknown rule"};
        if (n.children.size() > degree)
            return AjtViolation{0, x, node_name(t, x) + ": more than " + std::to_string(degree) + " children"};
        if ((x == 0) != !n.parent.has_value()) return AjtViolation{0, x, node_name(t, x) + ": node 0 must be the only root"};
    }
    bool any_db = std::any_of(t.nodes.begin(), t.nodes.end(), [](const AjtNode& n) { return !n.label.origin; });
    if (!any_db) return AjtViolation{1, 0, "no database node"};

    GuardedReport gr = check_guarded(rules);
    for (std::size_t y = 1; y < t.nodes.size(); ++y) {
        const AjtLabel& ly = t.nodes[y].label;
        std::size_t x = *t.nodes[y].parent;
        const AjtLabel& lx = t.nodes[x].label;
        if (!ly.origin && lx.origin)
            return AjtViolation{2, y, node_name(t, y) + ": database node below rule node " + std::to_string(x)};
        std::size_t arx = *rules.arity(lx.pred);
        for (std::size_t i = 0; i < arx; ++i)
            for (std::size_t j = 0; j < arx; ++j)
                if (lx.same(AjtLabel::m(w, i), AjtLabel::m(w, j)) != ly.same(AjtLabel::f(i), AjtLabel::f(j)))
                    return AjtViolation{4, y, node_name(t, y) + ": father equalities disagree at positions " +
                                                  std::to_string(i + 1) + "," + std::to_string(j + 1)};
        if (!ly.origin) continue;
        const Tgd& rule = rules[*ly.origin];
        if (!gr.guards[*ly.origin]) return AjtViolation{3, y, "rule " + rule.name() + " has no guard"};
        const Atom& alpha = rule.body()[*gr.guards[*ly.origin]];
        const Atom& beta = rule.head();
        if (lx.pred != alpha.pred || ly.pred != beta.pred)
            return AjtViolation{3, y, node_name(t, y) + ": predicates do not match rule " + rule.name()};
        for (std::size_t i = 0; i < alpha.arity(); ++i) {
            for (std::size_t j = 0; j < beta.arity(); ++j)
                if (alpha.args[i] == beta.args[j] && !ly.same(AjtLabel::f(i), AjtLabel::m(w, j)))
                    return AjtViolation{5, y, node_name(t, y) + ": frontier equality f" + std::to_string(i + 1) + "=m" +
                                                  std::to_string(j + 1) + " missing"};
            for (std::size_t j = 0; j < alpha.arity(); ++j)
                if (alpha.args[i] == alpha.args[j] && !ly.same(AjtLabel::f(i), AjtLabel::f(j)))
                    return AjtViolation{5, y, node_name(t, y) + ": guard equality f" + std::to_string(i + 1) + "=f" +
                                                  std::to_string(j + 1) + " missing"};
        }
        for (std::size_t j = 0; j < beta.arity(); ++j) {
            if (!rule.is_existential(beta.args[j])) continue;
            for (std::size_t i = 0; i < beta.arity(); ++i)
                if (ly.same(AjtLabel::m(w, i), AjtLabel::m(w, j)) != (beta.args[i] == beta.args[j]))
                    return AjtViolation{5, y, node_name(t, y) + ": existential position " + std::to_string(j + 1) +
                                                  " has wrong equalities"};
        }
    }
    return std::nullopt;
}

DecodedAjt decode_ajt(const AbstractJoinTree& t, const Ruleset& rules) {
    const std::size_t w = t.width;
    std::vector<std::size_t> base;
    std::vector<std::size_t> arity;
    UnionFind uf;
    for (const AjtNode& n : t.nodes) {
        base.push_back(uf.size());
        arity.push_back(*rules.arity(n.label.pred));
        for (std::size_t i = 0; i < arity.back(); ++i) uf.add();
    }
    for (std::size_t x = 0; x < t.nodes.size(); ++x) {
        const AjtLabel& l = t.nodes[x].label;
        for (std::size_t i = 0; i < arity[x]; ++i)
            for (std::size_t j = i + 1; j < arity[x]; ++j)
                if (l.same(AjtLabel::m(w, i), AjtLabel::m(w, j))) uf.unite(base[x] + i, base[x] + j);
        if (!t.nodes[x].parent) continue;
        std::size_t p = *t.nodes[x].parent;
        for (std::size_t i = 0; i < arity[p]; ++i)
            for (std::size_t j = 0; j < arity[x]; ++j)
                if (l.same(AjtLabel::f(i), AjtLabel::m(w, j))) uf.unite(base[p] + i, base[x] + j);
    }
    DecodedAjt out;
    std::map<std::size_t, Term> terms;
    for (std::size_t x = 0; x < t.nodes.size(); ++x) {
        Atom a{t.nodes[x].label.pred, {}};
        for (std::size_t i = 0; i < arity[x]; ++i) {
            std::size_t cls = uf.find(base[x] + i);
            auto it = terms.find(cls);
            if (it == terms.end()) it = terms.emplace(cls, Term::constant("e" + std::to_string(terms.size()))).first;
            a.args.push_back(it->second);
        }
        out.instance.insert(a);
        if (!t.nodes[x].label.origin) out.database.insert(a);
        out.atoms.push_back(std::move(a));
    }
    return out;
}

AbstractJoinTree encode_ajt(std::size_t width, const std::vector<Atom>& atoms,
                            const std::vector<std::optional<std::size_t>>& parent,
                            const std::vector<std::optional<std::size_t>>& origin) {
    AbstractJoinTree t{width, {}};
    for (std::size_t y = 0; y < atoms.size(); ++y) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        const Atom& a = atoms[y];
        for (std::size_t i = 0; i < a.arity(); ++i)
            for (std::size_t j = 0; j < a.arity(); ++j)
                if (a.args[i] == a.args[j]) pairs.emplace_back(AjtLabel::m(width, i), AjtLabel::m(width, j));
        if (parent[y]) {
            const Atom& f = atoms[*parent[y]];
            for (std::size_t i = 0; i < f.arity(); ++i) {
                for (std::size_t j = 0; j < f.arity(); ++j)
                    if (f.args[i] == f.args[j]) pairs.emplace_back(AjtLabel::f(i), AjtLabel::f(j));
                for (std::size_t j = 0; j < a.arity(); ++j)
                    if (f.args[i] == a.args[j]) pairs.emplace_back(AjtLabel::f(i), AjtLabel::m(width, j));
            }
        }
        t.add(AjtLabel{a.pred, origin[y], make_equivalence(width, pairs)}, parent[y]);
    }
    return t;
}

namespace {

// h(target) = candidate for some h fixing the terms at the given positions of target.
bool stops_at(const Atom& candidate, const Atom& target, const std::vector<std::size_t>& fixed_positions) {
    if (candidate.pred != target.pred || candidate.arity() != target.arity()) return false;
    std::set<Term> fixed;
    for (std::size_t p : fixed_positions) fixed.insert(target.args[p]);
    std::map<Term, Term> h;
    for (std::size_t p = 0; p < target.arity(); ++p) {
        const Term& t = target.args[p];
        if (fixed.count(t)) {
            if (candidate.args[p] != t) return false;
            continue;
        }
        auto [it, fresh] = h.emplace(t, candidate.args[p]);
        if (!fresh && it->second != candidate.args[p]) return false;
    }
    return true;
}

}  // namespace

ChaseableReport ajt_chaseable_check(const AbstractJoinTree& t, const Ruleset& rules) {
    ChaseableReport rep;
    if (auto v = validate_ajt(t, rules)) {
        rep.chaseable = false;
        rep.failure = ChaseableReport::Failure::NotParentClosed;
        rep.witness = {v->node};
        rep.message = "not an abstract join tree: condition " + std::to_string(v->condition) + ": " + v->message;
        return rep;
    }
    DecodedAjt dec = decode_ajt(t, rules);
    GuardedReport gr = check_guarded(rules);
    const std::size_t n = t.nodes.size();
    std::vector<std::vector<std::size_t>> succ(n);

    for (std::size_t y = 0; y < n; ++y) {
        const AjtLabel& ly = t.nodes[y].label;
        if (!ly.origin) {
            for (std::size_t z = 0; z < n; ++z)
                if (t.nodes[z].label.origin) succ[y].push_back(z);
            continue;
        }
        std::size_t x = *t.nodes[y].parent;
        succ[x].push_back(y);
        const Tgd& rule = rules[*ly.origin];
        std::size_t guard = *gr.guards[*ly.origin];
        for (std::size_t k = 0; k < rule.body().size(); ++k) {
            if (k == guard) continue;
            SideatomType pi = sideatom_type(rule, guard, k);
            bool found = false;
            for (std::size_t z = 0; z < n; ++z)
                if (z != y && sideatom_match(dec.atoms[z], pi, dec.atoms[x])) {
                    succ[z].push_back(y);
                    found = true;
                }
            if (!found) {
                rep.chaseable = false;
                rep.failure = ChaseableReport::Failure::NotParentClosed;
                rep.witness = {y};
                rep.message = "node " + std::to_string(y) + " " + dec.atoms[y].to_string() + " has no side parent of type " +
                              pi.to_string();
                return rep;
            }
        }
        auto fr = rule.frontier_positions();
        for (std::size_t z = 0; z < n; ++z)
            if (z != y && stops_at(dec.atoms[z], dec.atoms[y], fr)) succ[y].push_back(z);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    auto cycle = find_cycle(succ);
    if (!cycle.empty()) {
        rep.chaseable = false;
        rep.failure = ChaseableReport::Failure::BeforeCycle;
        rep.witness = cycle;
        rep.message = "before-cycle:";
        for (std::size_t v : cycle) rep.message += " " + std::to_string(v) + ":" + dec.atoms[v].to_string();
    }
    return rep;
}

}  // namespace rchase
