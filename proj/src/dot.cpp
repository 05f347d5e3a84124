#include "rchase/dot.hpp"

#include <vector>

namespace rchase {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// Label lines are joined with DOT's \n escape.
std::string node_line(std::size_t id, const std::vector<std::string>& lines, const std::string& extra = "") {
    std::string label;
    for (std::size_t i = 0; i < lines.size(); ++i) label += (i ? "\\n" : "") + escape(lines[i]);
    return "  n" + std::to_string(id) + " [label=\"" + label + "\"" + extra + "];\n";
}

std::string edge_line(std::size_t from, std::size_t to, const std::string& attrs) {
    return "  n" + std::to_string(from) + " -> n" + std::to_string(to) + (attrs.empty() ? "" : " [" + attrs + "]") +
           ";\n";
}

}  // namespace

std::string chase_graph_dot(const ChaseGraph& g, const DotOptions& options) {
    std::string out = "digraph chase {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const ChaseNode& n = g[i];
        std::string origin = n.is_database() ? "db" : g.rules()[n.trigger->rule].name();
        out += node_line(i, {n.label.to_string(), origin}, n.is_database() ? ", style=bold" : "");
    }
    if (options.parent_edges)
        for (const auto& [p, c] : g.parent_edges()) out += edge_line(p, c, "");
    if (options.guard_parent_edges || options.side_parent_edges) {
        GuardAnnotation ann = annotate_gp_sp(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (options.guard_parent_edges && ann.guard_parent[i])
                out += edge_line(*ann.guard_parent[i], i, "color=blue, label=\"gp\"");
            if (options.side_parent_edges)
                for (const SideParent& sp : ann.side_parents[i])
                    out += edge_line(sp.node, i, "color=darkgreen, style=dashed, label=\"sp\"");
        }
    }
    if (options.stop_edges)
        for (const auto& [v, u] : g.stop_pairs()) out += edge_line(v, u, "color=red, style=dotted, label=\"stops\"");
    return out + "}\n";
}

std::string join_tree_dot(const Treeification& t) {
    std::string out = "digraph join_tree {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        out += node_line(i, {t.nodes[i].label.to_string(), "~ " + t.nodes[i].source.to_string()});
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].parent) out += edge_line(*t.nodes[i].parent, i, "");
    return out + "}\n";
}

std::string ajt_dot(const AbstractJoinTree& t, const Ruleset& rules) {
    std::string out = "digraph ajt {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const AjtLabel& l = t.nodes[i].label;
        std::string eq;
        for (std::size_t k = 0; k < l.eq.size(); ++k) eq += (k ? "," : "") + std::to_string(l.eq[k]);
        std::string origin = l.origin ? rules[*l.origin].name() : "db";
        out += node_line(i, {std::string(l.pred.name()) + " " + origin, "[" + eq + "]"});
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].parent) out += edge_line(*t.nodes[i].parent, i, "");
    return out + "}\n";
}

}  // namespace rchase
