#include "rchase/chase_graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rchase/error.hpp"

namespace rchase {

ChaseGraph::ChaseGraph(Ruleset rules, std::vector<ChaseNode> nodes)
    : rules_(std::move(rules)), nodes_(std::move(nodes)) {}

std::size_t ChaseGraph::database_size() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const ChaseNode& n) { return n.is_database(); }));
}

std::vector<Edge> ChaseGraph::parent_edges() const {
    std::set<Edge> out;
    for (std::size_t u = 0; u < nodes_.size(); ++u)
        for (std::size_t p : nodes_[u].parents) out.emplace(p, u);
    return {out.begin(), out.end()};
}

std::vector<Edge> ChaseGraph::stop_pairs() const {
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_pred;
    for (std::size_t v = 0; v < nodes_.size(); ++v) by_pred[nodes_[v].label.pred.id].push_back(v);
    std::vector<Edge> out;
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
        if (nodes_[u].is_database()) continue;
        for (std::size_t v : by_pred[nodes_[u].label.pred.id])
            if (v != u && stops(rules_, nodes_[v].label, *nodes_[u].trigger)) out.emplace_back(v, u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ChaseGraph build_real_oblivious(const Ruleset& rules, const Instance& database, std::size_t max_depth,
                                std::size_t max_nodes) {
    rules.check_compatible(database);
    std::vector<ChaseNode> nodes;
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_pred;
    for (const Atom& a : database) {
        by_pred[a.pred.id].push_back(nodes.size());
        nodes.push_back(ChaseNode{a, std::nullopt, {}, 0});
    }

    for (std::size_t depth = 1; depth <= max_depth; ++depth) {
        std::vector<ChaseNode> fresh;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Tgd& rule = rules[r];
            const auto& slots = rule.body_slots();
            std::vector<std::optional<Term>> values(rule.body_vars().size());
            std::vector<std::size_t> chosen;

            // Chooses one node per body atom with consistent labels.
            auto extend = [&](auto&& self, std::size_t k) -> void {
                if (k == rule.body().size()) {
                    bool reaches = std::any_of(chosen.begin(), chosen.end(),
                                               [&](std::size_t p) { return nodes[p].depth + 1 == depth; });
                    if (!reaches) return;
                    Trigger t{r, {}};
                    for (const auto& v : values) t.values.push_back(*v);
                    Atom label = result_atom(rules, t);
                    fresh.push_back(ChaseNode{std::move(label), std::move(t), chosen, depth});
                    if (nodes.size() + fresh.size() > max_nodes)
                        throw Error("chase graph exceeds " + std::to_string(max_nodes) + " nodes");
                    return;
                }
                auto it = by_pred.find(rule.body()[k].pred.id);
                if (it == by_pred.end()) return;
                for (std::size_t cand : it->second) {
                    const Atom& a = nodes[cand].label;
                    std::vector<std::size_t> newly;
                    bool ok = a.arity() == slots[k].size();
                    for (std::size_t i = 0; ok && i < slots[k].size(); ++i) {
                        auto& v = values[static_cast<std::size_t>(slots[k][i])];
                        if (v) {
                            ok = *v == a.args[i];
                        } else {
                            v = a.args[i];
                            newly.push_back(static_cast<std::size_t>(slots[k][i]));
                        }
                    }
                    if (ok) {
                        chosen.push_back(cand);
                        self(self, k + 1);
                        chosen.pop_back();
                    }
                    for (std::size_t s : newly) values[s].reset();
                }
            };
            extend(extend, 0);
        }
        if (fresh.empty()) break;
        for (ChaseNode& n : fresh) {
            by_pred[n.label.pred.id].push_back(nodes.size());
            nodes.push_back(std::move(n));
        }
    }
    return ChaseGraph(rules, std::move(nodes));
}

std::vector<Edge> before_edges(const ChaseGraph& g) {
    std::set<Edge> out;
    for (std::size_t u = 0; u < g.size(); ++u) {
        if (!g[u].is_database()) continue;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (!g[v].is_database()) out.emplace(u, v);
    }
    for (const Edge& e : g.parent_edges()) out.insert(e);
    for (const auto& [v, u] : g.stop_pairs()) out.emplace(u, v);
    return {out.begin(), out.end()};
}

}  // namespace rchase
