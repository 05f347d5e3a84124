#include "rchase/chaseable.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rchase/classes.hpp"
#include "rchase/error.hpp"
#include "rchase/homomorphism.hpp"

namespace rchase {

namespace {

// Node set = database nodes + subset; adjacency of the before relation restricted to it.
struct InducedBefore {
    std::vector<std::size_t> nodes;                 // sorted
    std::map<std::size_t, std::vector<std::size_t>> succ;
};

InducedBefore induced_before(const ChaseGraph& g, std::span<const std::size_t> subset) {
    std::set<std::size_t> members(subset.begin(), subset.end());
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v].is_database()) members.insert(v);
    InducedBefore ib{{members.begin(), members.end()}, {}};
    for (std::size_t u : ib.nodes) ib.succ[u];
    for (std::size_t u : ib.nodes) {
        const ChaseNode& n = g[u];
        if (n.is_database()) {
            for (std::size_t v : ib.nodes)
                if (!g[v].is_database()) ib.succ[u].push_back(v);
            continue;
        }
        for (std::size_t p : n.parents)
            if (members.count(p)) ib.succ[p].push_back(u);
        for (std::size_t v : ib.nodes)
            if (v != u && stops(g.rules(), g[v].label, *n.trigger)) ib.succ[u].push_back(v);
    }
    for (auto& [u, s] : ib.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return ib;
}

// Finds a cycle by depth-first search; empty if acyclic.
std::vector<std::size_t> find_cycle(const InducedBefore& ib) {
    std::map<std::size_t, int> colour;
    std::vector<std::size_t> stack;
    std::vector<std::size_t> cycle;
    auto dfs = [&](auto&& self, std::size_t u) -> bool {
        colour[u] = 1;
        stack.push_back(u);
        for (std::size_t v : ib.succ.at(u)) {
            if (colour[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (colour[v] == 0 && self(self, v)) return true;
        }
        stack.pop_back();
        colour[u] = 2;
        return false;
    };
    for (std::size_t u : ib.nodes)
        if (colour[u] == 0 && dfs(dfs, u)) return cycle;
    return {};
}

}  // namespace

ChaseableReport is_chaseable(const ChaseGraph& g, std::span<const std::size_t> subset) {
    ChaseableReport rep;
    std::set<std::size_t> members(subset.begin(), subset.end());
    for (std::size_t u : members) {
        if (u >= g.size()) throw Error("node " + std::to_string(u) + " is not in the chase graph");
        for (std::size_t p : g[u].parents)
            if (!g[p].is_database() && !members.count(p)) {
                rep.chaseable = false;
                rep.failure = ChaseableReport::Failure::NotParentClosed;
                rep.witness = {u, p};
                rep.message = "node " + std::to_string(u) + " " + g[u].label.to_string() + " misses parent " +
                              std::to_string(p) + " " + g[p].label.to_string();
                return rep;
            }
    }
    auto cycle = find_cycle(induced_before(g, subset));
    if (!cycle.empty()) {
        rep.chaseable = false;
        rep.failure = ChaseableReport::Failure::BeforeCycle;
        rep.witness = cycle;
        rep.message = "before-cycle:";
        for (std::size_t v : cycle) rep.message += " " + std::to_string(v) + ":" + g[v].label.to_string();
    }
    return rep;
}

Derivation chaseable_to_derivation(const ChaseGraph& g, std::span<const std::size_t> subset) {
    auto rep = is_chaseable(g, subset);
    if (!rep.chaseable) throw Error("set is not chaseable: " + rep.message);
    InducedBefore ib = induced_before(g, subset);
    std::map<std::size_t, std::size_t> indegree;
    for (std::size_t u : ib.nodes) indegree[u];
    for (const auto& [u, s] : ib.succ)
        for (std::size_t v : s) ++indegree[v];
    std::set<std::size_t> ready;
    for (const auto& [u, d] : indegree)
        if (d == 0) ready.insert(u);

    Derivation out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v].is_database()) out.database.insert(g[v].label);
    Instance current = out.database;
    while (!ready.empty()) {
        std::size_t u = *ready.begin();
        ready.erase(ready.begin());
        for (std::size_t v : ib.succ[u])
            if (--indegree[v] == 0) ready.insert(v);
        if (g[u].is_database()) continue;
        const Trigger& t = *g[u].trigger;
        if (!is_trigger_on(g.rules(), t, current) || !is_active(g.rules(), t, current))
            throw Error("internal: node " + std::to_string(u) + " is not an active step");
        current.insert(g[u].label);
        out.steps.push_back({t, g[u].label});
    }
    out.status = active_triggers(g.rules(), current).empty() ? ChaseStatus::Saturated : ChaseStatus::BudgetExhausted;
    return out;
}

MultiInstance::MultiInstance(std::span<const Atom> base) {
    for (const Atom& a : base) occurrences_.push_back(Occurrence{a, std::nullopt, std::nullopt});
}

std::size_t MultiInstance::add(Occurrence occ) {
    occurrences_.push_back(std::move(occ));
    return occurrences_.size() - 1;
}

Instance MultiInstance::labels() const {
    Instance out;
    for (const Occurrence& o : occurrences_) out.insert(o.label);
    return out;
}

std::optional<std::size_t> MultiInstance::find(const Atom& label) const {
    for (std::size_t i = 0; i < occurrences_.size(); ++i)
        if (occurrences_[i].label == label) return i;
    return std::nullopt;
}

std::size_t MultiInstance::gp_root(std::size_t i) const {
    while (occurrences_[i].guard_parent) i = *occurrences_[i].guard_parent;
    return i;
}

bool MultiInstance::gp_descends(std::size_t descendant, std::size_t ancestor) const {
    std::size_t i = descendant;
    while (occurrences_[i].guard_parent) {
        i = *occurrences_[i].guard_parent;
        if (i == ancestor) return true;
    }
    return false;
}

MultiInstance weakly_restricted_step(const MultiInstance& k, std::span<const Trigger> triggers, const Ruleset& rules,
                                     std::span<const std::size_t> guard_occurrences) {
    GuardedReport gr = check_guarded(rules);
    Instance labels = k.labels();
    MultiInstance out = k;
    for (std::size_t i = 0; i < triggers.size(); ++i) {
        const Trigger& t = triggers[i];
        if (!is_trigger_on(rules, t, labels) || !is_active(rules, t, labels))
            throw Error("weakly restricted step: " + trigger_to_string(rules, t) + " is not an active trigger");
        std::optional<std::size_t> gp;
        if (i < guard_occurrences.size()) {
            gp = guard_occurrences[i];
        } else if (auto g = gr.guards[t.rule]) {
            gp = k.find(body_image(rules, t)[*g]);
        }
        out.add(Occurrence{result_atom(rules, t), t, gp});
    }
    return out;
}

std::vector<std::size_t> EnumerationOrder::sequence() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ranks_.size(); ++i)
        if (ranks_[i]) out.push_back(i);
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return *ranks_[a] < *ranks_[b]; });
    return out;
}

bool EnumerationOrder::validate(const MultiInstance& k) const {
    if (ranks_.size() != k.size()) return false;
    std::set<Rank> seen;
    for (std::size_t i = 0; i < k.size(); ++i) {
        bool base = !k[i].trigger.has_value();
        if (base != !ranks_[i].has_value()) return false;
        if (base) continue;
        if (!seen.insert(*ranks_[i]).second) return false;
        if (auto gp = k[i].guard_parent)
            if (ranks_[*gp] && !(*ranks_[*gp] < *ranks_[i])) return false;
    }
    return true;
}

std::optional<Trigger> find_active_producer(const Ruleset& rules, const Instance& instance, const Atom& atom) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const Tgd& rule = rules[r];
        if (rule.head().pred != atom.pred || rule.head().arity() != atom.arity()) continue;
        std::vector<std::optional<Term>> pre(rule.body_vars().size());
        bool ok = true;
        const auto& hs = rule.head_slots();
        for (std::size_t p = 0; p < hs.size() && ok; ++p) {
            if (hs[p] < 0) {
                ok = atom.args[p].is_null();
                continue;
            }
            auto& slot = pre[static_cast<std::size_t>(hs[p])];
            if (slot && *slot != atom.args[p]) ok = false;
            slot = atom.args[p];
        }
        if (!ok) continue;
        std::optional<Trigger> found;
        match_body(rule, instance, [&](const std::vector<Term>& values) {
            Trigger t{r, values};
            if (result_atom(rules, t) == atom && is_active(rules, t, instance)) {
                found = std::move(t);
                return false;
            }
            return true;
        }, std::nullopt, pre);
        if (found) return found;
    }
    return std::nullopt;
}

ExtractResult extract(const MultiInstance& k, const EnumerationOrder& order, const Ruleset& rules,
                      const std::function<void(const ExtractState&)>& observer) {
    if (!order.validate(k)) throw Error("enumeration order does not match the multiset instance");
    ExtractResult res;
    std::vector<int> where(k.size(), 0);  // 0 pending, 1 born, 2 stopped
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!k[i].trigger) {
            where[i] = 1;
            res.born.push_back(i);
            res.derivation.database.insert(k[i].label);
        }
    Instance current = res.derivation.database;

    auto snapshot = [&]() {
        ExtractState s;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (where[i] == 0) s.pending.push_back(i);
            else if (where[i] == 1) s.born.push_back(i);
            else s.stopped.push_back(i);
        }
        return s;
    };

    for (std::size_t kappa : order.sequence()) {
        if (where[kappa] != 0) continue;
        if (auto t = find_active_producer(rules, current, k[kappa].label)) {
            where[kappa] = 1;
            res.born.push_back(kappa);
            current.insert(k[kappa].label);
            res.derivation.steps.push_back({std::move(*t), k[kappa].label});
        } else {
            where[kappa] = 2;
            res.stopped.push_back(kappa);
            for (std::size_t o = 0; o < k.size(); ++o)
                if (where[o] == 0 && k.gp_descends(o, kappa)) {
                    where[o] = 2;
                    res.stopped.push_back(o);
                }
        }
        if (observer) observer(snapshot());
    }
    res.derivation.status =
        active_triggers(rules, current).empty() ? ChaseStatus::Saturated : ChaseStatus::BudgetExhausted;
    return res;
}

}  // namespace rchase
