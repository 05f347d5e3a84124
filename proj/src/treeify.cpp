#include "rchase/guarded.hpp"

#include <algorithm>
#include <deque>

#include "rchase/classes.hpp"

namespace rchase {

MultiInstance Treeification::database() const {
    std::vector<Atom> atoms;
    for (const JoinTreeNode& n : nodes) atoms.push_back(n.label);
    return MultiInstance(atoms);
}

Instance Treeification::database_set() const {
    Instance out;
    for (const JoinTreeNode& n : nodes) out.insert(n.label);
    return out;
}

std::map<Term, Term> Treeification::term_map() const {
    std::map<Term, Term> out;
    for (const JoinTreeNode& n : nodes)
        for (std::size_t i = 0; i < n.label.arity(); ++i) out.emplace(n.label.args[i], n.source.args[i]);
    return out;
}

Treeification treeify(const Instance& database, const Atom& alpha_inf, const Derivation& prefix, const Ruleset& rules) {
    auto root_index = database.index_of(alpha_inf);
    if (!root_index) throw Error("atom " + alpha_inf.to_string() + " is not in the database");
    if (!(prefix.database == database)) throw Error("the prefix does not start from the given database");

    ChaseGraph g = derivation_graph(prefix, rules);
    GuardAnnotation ann = annotate_gp_sp(g);
    RemoteSideParents rsp = remote_side_parents(g, ann);
    const std::size_t db = database.size();
    const std::size_t n = prefix.length();
    // Index of the first instance I_j containing the node's atom.
    auto instance_index = [&](std::size_t node) { return node < db ? std::size_t{0} : node - db + 1; };

    bool has_descendant = false;
    for (std::size_t v = db; v < g.size() && !has_descendant; ++v) has_descendant = gp_root(ann, v) == *root_index;
    if (!has_descendant)
        throw PrefixTooShortError(alpha_inf, "prefix too short: " + alpha_inf.to_string() +
                                                 " has no guard descendants in " + std::to_string(n) + " steps");

    Treeification out;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_realized;
    std::size_t max_beta_prime = 0;
    bool any = false;
    for (const Situation& s : rsp.situations) {
        out.situations.push_back(s);
        if (s.alpha != *root_index) continue;
        any = true;
        max_beta_prime = std::max(max_beta_prime, instance_index(s.beta_prime));
        auto key = std::make_pair(s.beta, s.beta_prime);
        std::size_t at = instance_index(s.alpha_prime);
        auto [it, fresh] = first_realized.emplace(key, at);
        if (!fresh) it->second = std::min(it->second, at);
    }
    // A saturated derivation is complete; only budget-cut prefixes can be short.
    const std::size_t window = std::max<std::size_t>(1, n / 2);
    for (const auto& [key, at] : first_realized)
        if (prefix.status == ChaseStatus::BudgetExhausted && at + window > n)
            throw PrefixTooShortError(
                g[key.second].label,
                "prefix too short: remote side parent " + g[key.second].label.to_string() + " of a guard descendant of " +
                    alpha_inf.to_string() + " first appears at step " + std::to_string(at) + " of " + std::to_string(n));
    // beta' lies in I_{ell-1}; the extra level keeps children one step ahead of their parent.
    out.ell_infinity = any ? max_beta_prime + 1 : 0;

    std::map<std::size_t, std::vector<std::size_t>> longs;
    for (const auto& [a, b] : rsp.longs_for) {
        longs[a].push_back(b);
        out.longs_for.emplace_back(g[a].label, g[b].label);
    }

    out.nodes.push_back(JoinTreeNode{alpha_inf, alpha_inf, std::nullopt, {}, 0});
    std::vector<std::size_t> source_node{*root_index};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        if (out.nodes[v].depth >= out.ell_infinity) continue;
        for (std::size_t b : longs[source_node[v]]) {
            const Atom& alpha = out.nodes[v].source;
            const Atom& beta = g[b].label;
            std::size_t u = out.nodes.size();
            Atom label{beta.pred, {}};
            for (const Term& t : beta.args) {
                auto j = std::find(alpha.args.begin(), alpha.args.end(), t);
                if (j != alpha.args.end())
                    label.args.push_back(out.nodes[v].label.args[static_cast<std::size_t>(j - alpha.args.begin())]);
                else
                    label.args.push_back(Term::constant(t.to_string() + "@" + std::to_string(u)));
            }
            out.nodes.push_back(JoinTreeNode{std::move(label), beta, v, {}, out.nodes[v].depth + 1});
            out.nodes[v].children.push_back(u);
            source_node.push_back(b);
            queue.push_back(u);
        }
    }
    return out;
}

WeakChase build_weak_chase(const Treeification& tree, const Derivation& original, const Ruleset& rules,
                           std::size_t steps) {
    GuardedReport gr = check_guarded(rules);
    if (!gr.guarded) throw UnsupportedError("weakly restricted construction needs a guarded ruleset");
    WeakChase w;
    w.k = tree.database();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        w.hbar.push_back(tree.nodes[i].source);
        w.tree_node.push_back(i);
    }
    std::vector<std::optional<Rank>> ranks(w.k.size());
    const long long ell = static_cast<long long>(tree.ell_infinity);

    for (std::size_t i = 0; i < steps && i < original.length(); ++i) {
        const Trigger& orig = original.steps[i].trigger;
        const Tgd& rule = rules[orig.rule];
        std::size_t guard = *gr.guards[orig.rule];
        const Atom guard_image = body_image(rules, orig)[guard];
        Instance labels = w.k.labels();

        std::vector<Trigger> chosen;
        std::vector<std::size_t> guard_occ;
        for (std::size_t kappa = 0; kappa < w.k.size(); ++kappa) {
            if (w.hbar[kappa] != guard_image) continue;
            std::size_t tn = w.tree_node[w.k.gp_root(kappa)];
            bool deep_ok = tn == 0 || static_cast<long long>(tree.nodes[tn].depth) < ell - static_cast<long long>(i);
            if (!deep_ok) continue;
            // The guard holds every body variable, so matching it fixes the trigger.
            const Atom& lab = w.k[kappa].label;
            std::vector<std::optional<Term>> vals(rule.body_vars().size());
            bool ok = lab.arity() == rule.body()[guard].arity() && lab.pred == rule.body()[guard].pred;
            for (std::size_t p = 0; ok && p < lab.arity(); ++p) {
                auto& v = vals[static_cast<std::size_t>(rule.body_slots()[guard][p])];
                if (v && *v != lab.args[p]) ok = false;
                v = lab.args[p];
            }
            if (!ok) continue;
            Trigger t{orig.rule, {}};
            for (auto& v : vals) t.values.push_back(*v);
            if (!is_trigger_on(rules, t, labels) || !is_active(rules, t, labels)) continue;
            if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) continue;
            chosen.push_back(std::move(t));
            guard_occ.push_back(kappa);
        }
        std::size_t before = w.k.size();
        w.k = weakly_restricted_step(w.k, chosen, rules, guard_occ);
        std::vector<std::size_t> fresh;
        for (std::size_t o = before; o < w.k.size(); ++o) {
            w.hbar.push_back(original.steps[i].produced);
            w.tree_node.push_back(w.tree_node[w.k.gp_root(o)]);
            ranks.emplace_back();
            fresh.push_back(o);
        }
        std::stable_sort(fresh.begin(), fresh.end(), [&](std::size_t a, std::size_t b) {
            return tree.nodes[w.tree_node[a]].depth < tree.nodes[w.tree_node[b]].depth;
        });
        for (std::size_t j = 0; j < fresh.size(); ++j) ranks[fresh[j]] = Rank{i, j};
    }
    w.order = EnumerationOrder(std::move(ranks));
    return w;
}

}  // namespace rchase
