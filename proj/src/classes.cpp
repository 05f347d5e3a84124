#include "rchase/classes.hpp"

#include <algorithm>
#include <sstream>

namespace rchase {

GuardedReport check_guarded(const Ruleset& rules) {
    GuardedReport rep;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const Tgd& rule = rules[r];
        std::optional<std::size_t> guard;
        for (std::size_t k = 0; k < rule.body().size() && !guard; ++k) {
            const auto& args = rule.body()[k].args;
            bool all = std::all_of(rule.body_vars().begin(), rule.body_vars().end(), [&](const Term& v) {
                return std::find(args.begin(), args.end(), v) != args.end();
            });
            if (all) guard = k;
        }
        rep.guards.push_back(guard);
        if (!guard && rep.guarded) {
            rep.guarded = false;
            rep.violation = r;
        }
    }
    return rep;
}

std::set<RuleVariable> marked_variables(const Ruleset& rules) {
    std::set<RuleVariable> marked;
    for (std::size_t r = 0; r < rules.size(); ++r)
        for (const Term& v : rules[r].body_vars())
            if (!rules[r].is_frontier(v)) marked.insert({r, v});

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Atom& head = rules[r].head();
            for (const Term& x : rules[r].frontier()) {
                if (marked.count({r, x})) continue;
                std::vector<std::size_t> positions;
                for (std::size_t i = 0; i < head.arity(); ++i)
                    if (head.args[i] == x) positions.push_back(i);
                bool propagate = false;
                for (std::size_t r2 = 0; r2 < rules.size() && !propagate; ++r2)
                    for (const Atom& b : rules[r2].body()) {
                        if (b.pred != head.pred) continue;
                        if (std::all_of(positions.begin(), positions.end(),
                                        [&](std::size_t i) { return marked.count({r2, b.args[i]}) != 0; })) {
                            propagate = true;
                            break;
                        }
                    }
                if (propagate) {
                    marked.insert({r, x});
                    changed = true;
                }
            }
        }
    }
    return marked;
}

StickyReport check_sticky(const Ruleset& rules) {
    StickyReport rep;
    rep.marked = marked_variables(rules);
    for (const RuleVariable& rv : rep.marked) {
        std::size_t count = 0;
        for (const Atom& a : rules[rv.rule].body()) count += static_cast<std::size_t>(std::count(a.args.begin(), a.args.end(), rv.var));
        if (count > 1) {
            rep.sticky = false;
            rep.violation = rv;
            break;
        }
    }
    return rep;
}

std::vector<std::size_t> immortal_head_positions(const Ruleset& rules, std::size_t rule,
                                                 const std::set<RuleVariable>& marked) {
    std::vector<std::size_t> out;
    const Atom& head = rules[rule].head();
    for (std::size_t i = 0; i < head.arity(); ++i)
        if (!marked.count({rule, head.args[i]})) out.push_back(i);
    return out;
}

ClassReport classify(const Ruleset& rules) { return {check_guarded(rules), check_sticky(rules)}; }

std::string ClassReport::to_string(const Ruleset& rules) const {
    std::ostringstream os;
    os << "guarded: " << (guarded.guarded ? "yes" : "no") << "\n";
    for (std::size_t r = 0; r < rules.size(); ++r) {
        os << "  " << rules[r].name() << ": ";
        if (guarded.guards[r])
            os << "guard " << *guarded.guards[r] << " " << rules[r].body()[*guarded.guards[r]].to_string() << "\n";
        else
            os << "no guard\n";
    }
    os << "sticky: " << (sticky.sticky ? "yes" : "no");
    if (sticky.violation)
        os << " (variable " << sticky.violation->var.to_string() << " of rule " << rules[sticky.violation->rule].name()
           << " is marked and repeated)";
    os << "\n";
    os << "marked:";
    for (const RuleVariable& rv : sticky.marked) os << " " << rules[rv.rule].name() << "." << rv.var.to_string();
    os << "\n";
    for (std::size_t r = 0; r < rules.size(); ++r) {
        os << "  immortal " << rules[r].name() << ": {";
        auto ps = immortal_head_positions(rules, r, sticky.marked);
        for (std::size_t k = 0; k < ps.size(); ++k) os << (k ? "," : "") << ps[k] + 1;
        os << "}\n";
    }
    return os.str();
}

}  // namespace rchase
