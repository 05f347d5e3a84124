#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "rchase/chase.hpp"
#include "rchase/chase_graph.hpp"
#include "rchase/classes.hpp"
#include "rchase/dot.hpp"
#include "rchase/formats.hpp"
#include "rchase/guarded.hpp"
#include "rchase/sticky.hpp"

using namespace rchase;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kInputError = 2;

Ruleset load_rules(const std::string& path) { return parse_ruleset(read_file(path), path); }

Instance load_database(const std::string& path, const Ruleset& rules) {
    Instance db = parse_database(read_file(path), path);
    rules.check_compatible(db);
    return db;
}

Strategy parse_strategy(const std::string& text, const Ruleset& rules, const Instance& db) {
    if (text == "fair") return Strategy::fair();
    if (text == "lifo") return Strategy::lifo();
    if (text.rfind("random:", 0) == 0) {
        std::string seed = text.substr(7);
        if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos)
            throw Error("bad random seed '" + seed + "'");
        return Strategy::random(std::stoull(seed));
    }
    if (text.rfind("script:", 0) == 0) {
        std::string path = text.substr(7);
        ParsedDerivation p = parse_derivation(read_file(path), rules, db, path, false);
        return Strategy::scripted(p.derivation.triggers());
    }
    throw Error("unknown strategy '" + text + "' (expected fair, lifo, random:<seed> or script:<path>)");
}

int cmd_check(const std::string& ruleset) {
    Ruleset rules = load_rules(ruleset);
    std::cout << classify(rules).to_string(rules);
    return kOk;
}

int cmd_chase(const std::string& ruleset, const std::string& database, const std::string& mode,
              const std::string& strategy, std::size_t max_steps, const std::string& trace) {
    Ruleset rules = load_rules(ruleset);
    Instance db = load_database(database, rules);
    if (mode == "oblivious") {
        ObliviousResult r = run_oblivious(rules, db, max_steps);
        if (!trace.empty()) write_file(trace, serialize_database(r.instance));
        std::cout << "status=" << status_name(r.status) << " steps=" << r.steps << " atoms=" << r.instance.size()
                  << "\n";
        return kOk;
    }
    if (mode != "restricted") throw Error("unknown mode '" + mode + "' (expected restricted or oblivious)");
    Strategy s = parse_strategy(strategy, rules, db);
    Derivation d = run_restricted(rules, db, s, max_steps);
    if (!trace.empty()) write_file(trace, serialize_derivation(d, rules, TraceHeader{database, ruleset, s.to_string()}));
    std::cout << "status=" << status_name(d.status) << " steps=" << d.length()
              << " atoms=" << d.final_instance().size() << "\n";
    return kOk;
}

int cmd_graph(const std::string& ruleset, const std::string& database, std::size_t depth, const std::string& dot,
              const DotOptions& options) {
    Ruleset rules = load_rules(ruleset);
    Instance db = load_database(database, rules);
    ChaseGraph g = build_real_oblivious(rules, db, depth);
    std::string text = chase_graph_dot(g, options);
    if (dot.empty() || dot == "-")
        std::cout << text;
    else
        write_file(dot, text);
    std::cerr << "nodes=" << g.size() << " parent_edges=" << g.parent_edges().size() << "\n";
    return kOk;
}

int cmd_decide_sticky(const std::string& ruleset, const std::string& witness, std::size_t replay) {
    Ruleset rules = load_rules(ruleset);
    StickyReport sr = check_sticky(rules);
    if (!sr.sticky) {
        std::cerr << "error: ruleset is not sticky";
        if (sr.violation)
            std::cerr << ": marked variable " << sr.violation->var << " occurs more than once in the body of rule "
                      << rules[sr.violation->rule].name();
        std::cerr << "\n";
        return kInputError;
    }
    TerminationVerdict v = decide_ct_sticky(rules, replay);
    if (v.terminating) {
        std::cout << "TERMINATING\n";
        return kOk;
    }
    std::cout << "NONTERMINATING\n";
    std::cout << "lasso: " << v.lasso->to_string(rules) << "\n";
    std::cout << "witness:\n" << serialize_database(v.witness);
    std::cout << "replay: steps=" << v.replay.length() << " status=" << status_name(v.replay.status) << "\n";
    if (!witness.empty()) {
        write_file(witness, serialize_database(v.witness));
        write_file(witness + ".trace",
                   serialize_derivation(v.replay, rules, TraceHeader{witness, ruleset, "script"}));
    }
    return kViolated;
}

int cmd_treeify(const std::string& ruleset, const std::string& database, const std::string& alpha,
                const std::string& prefix, const std::string& out) {
    Ruleset rules = load_rules(ruleset);
    Instance db = load_database(database, rules);
    Atom a = parse_fact(alpha);
    ParsedDerivation p = parse_derivation(read_file(prefix), rules, db, prefix, false);
    Treeification t = treeify(db, a, p.derivation, rules);
    std::string dac = serialize_database(t.database_set());
    if (out.empty()) {
        std::cout << dac;
    } else {
        write_file(out, dac);
        write_file(out + ".dot", join_tree_dot(t));
    }
    std::cerr << "tree_nodes=" << t.nodes.size() << " atoms=" << t.database_set().size()
              << " ell_infinity=" << t.ell_infinity << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restricted chase toolkit: classification, chase runs, chase graphs, termination"};
    app.require_subcommand(1);

    std::string ruleset, database, mode = "restricted", strategy = "fair", trace, dot, witness, alpha, prefix, out;
    std::size_t max_steps = 1000, depth = 2, replay = 100;
    DotOptions dot_options;

    auto* check = app.add_subcommand("check", "Classify a ruleset (guarded, sticky)");
    check->add_option("ruleset", ruleset, "Ruleset file")->required();

    auto* chase = app.add_subcommand("chase", "Run the restricted or oblivious chase");
    chase->add_option("ruleset", ruleset, "Ruleset file")->required();
    chase->add_option("database", database, "Database file")->required();
    chase->add_option("--mode", mode, "restricted or oblivious")->check(CLI::IsMember({"restricted", "oblivious"}));
    chase->add_option("--strategy", strategy, "fair, lifo, random:<seed> or script:<path>");
    chase->add_option("--max-steps", max_steps, "Step budget");
    chase->add_option("--trace", trace, "Write the derivation trace here");

    auto* graph = app.add_subcommand("graph", "Export a depth-bounded real oblivious chase graph as DOT");
    graph->add_option("ruleset", ruleset, "Ruleset file")->required();
    graph->add_option("database", database, "Database file")->required();
    graph->add_option("--depth", depth, "Maximal node depth");
    graph->add_option("--dot", dot, "Output file (default: standard output)");
    graph->add_flag("--guard-parents", dot_options.guard_parent_edges, "Draw guard-parent edges");
    graph->add_flag("--side-parents", dot_options.side_parent_edges, "Draw side-parent edges");
    graph->add_flag("--stops", dot_options.stop_edges, "Draw stop edges");

    auto* sticky = app.add_subcommand("decide-sticky", "Decide restricted chase termination of a sticky ruleset");
    sticky->add_option("ruleset", ruleset, "Ruleset file")->required();
    sticky->add_option("--witness", witness, "Write the witness database here (script to <file>.trace)");
    sticky->add_option("--replay", replay, "Number of replayed witness steps");

    auto* tree = app.add_subcommand("treeify", "Build the acyclic database D_ac for a guarded ruleset");
    tree->add_option("ruleset", ruleset, "Ruleset file")->required();
    tree->add_option("database", database, "Database file")->required();
    tree->add_option("--alpha", alpha, "Database atom alpha_inf")->required();
    tree->add_option("--prefix", prefix, "Derivation prefix trace")->required();
    tree->add_option("--out", out, "Write D_ac here and the join tree to <file>.dot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check) return cmd_check(ruleset);
        if (*chase) return cmd_chase(ruleset, database, mode, strategy, max_steps, trace);
        if (*graph) return cmd_graph(ruleset, database, depth, dot, dot_options);
        if (*sticky) return cmd_decide_sticky(ruleset, witness, replay);
        if (*tree) return cmd_treeify(ruleset, database, alpha, prefix, out);
    } catch (const ChaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const PrefixTooShortError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
