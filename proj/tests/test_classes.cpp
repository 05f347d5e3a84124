#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "rchase/chase_graph.hpp"
#include "rchase/classes.hpp"
#include "rchase/error.hpp"
#include "rchase/formats.hpp"
#include "support/generators.hpp"

using namespace rchase;

namespace {

RuleVariable rv(std::size_t rule, const char* name) { return {rule, Term::variable(name)}; }

// Marking as a Kleene iteration: each round recomputes the full set from the
// previous one, reading the two marking rules literally.
std::set<RuleVariable> marked_by_rounds(const Ruleset& rules) {
    std::set<RuleVariable> prev, cur;
    do {
        prev = cur;
        cur.clear();
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Atom& h = rules[r].head();
            for (const Term& x : rules[r].body_vars()) {
                std::vector<std::size_t> pos;
                for (std::size_t i = 0; i < h.arity(); ++i)
                    if (h.args[i] == x) pos.push_back(i);
                bool mark = pos.empty();
                for (std::size_t r2 = 0; r2 < rules.size() && !mark; ++r2)
                    for (const Atom& b : rules[r2].body()) {
                        if (b.pred != h.pred) continue;
                        bool all = true;
                        for (std::size_t i : pos) all = all && prev.count({r2, b.args[i]});
                        mark = mark || all;
                    }
                if (mark) cur.insert({r, x});
            }
        }
    } while (cur != prev);
    return cur;
}

}  // namespace

TEST(Guarded, LeftMostGuardIsChosen) {
    Ruleset rs = parse_ruleset("a : R(x,y), S(x) -> T(y)\nb : S(x), R(x,y), R(y,x) -> T(x)\nc : T(x) -> S(x)");
    GuardedReport g = check_guarded(rs);
    EXPECT_TRUE(g.guarded);
    EXPECT_EQ(g.guards[0], 0u);
    EXPECT_EQ(g.guards[1], 1u);
    EXPECT_EQ(g.guards[2], 0u);
    EXPECT_EQ(g.violation, std::nullopt);
}

TEST(Guarded, ViolationIsFirstUnguardedRule) {
    Ruleset rs = parse_ruleset("a : S(x) -> T(x)\nb : R(x,y), R(y,z) -> T(x)\nc : S(x), T(y) -> S(y)");
    GuardedReport g = check_guarded(rs);
    EXPECT_FALSE(g.guarded);
    EXPECT_EQ(g.violation, 1u);
    EXPECT_FALSE(g.guards[1].has_value());
    EXPECT_FALSE(g.guards[2].has_value());
}

TEST(Guarded, RemoteSideParentExample) {
    Ruleset rs = parse_ruleset("s1 : S(x,y) -> T(x)\ns2 : R(x,y), T(y) -> P(x,y)\ns3 : P(x,y) -> P(y,z)");
    GuardedReport g = check_guarded(rs);
    EXPECT_TRUE(g.guarded);
    EXPECT_EQ(g.guards, (std::vector<std::optional<std::size_t>>{0u, 0u, 0u}));
}

TEST(Marking, ChainMarksBothBodyVariables) {
    Ruleset t0 = parse_ruleset("s : R(x,y) -> R(y,z)");
    EXPECT_EQ(marked_variables(t0), (std::set<RuleVariable>{rv(0, "x"), rv(0, "y")}));
}

TEST(Marking, JoinMarksOnlyTheJoinVariable) {
    Ruleset t3 = parse_ruleset("s : R(x,y), R(y,z) -> T(x,z)");
    EXPECT_EQ(marked_variables(t3), (std::set<RuleVariable>{rv(0, "y")}));
    StickyReport s = check_sticky(t3);
    EXPECT_FALSE(s.sticky);
    ASSERT_TRUE(s.violation.has_value());
    EXPECT_EQ(*s.violation, rv(0, "y"));
}

TEST(Marking, CopyRuleMarksNothing) {
    EXPECT_TRUE(marked_variables(parse_ruleset("P(x,y) -> R(x,y)")).empty());
}

TEST(Sticky, Examples) {
    EXPECT_TRUE(check_sticky(parse_ruleset("s : R(x,y) -> R(y,z)")).sticky);
    EXPECT_TRUE(check_sticky(parse_ruleset("s1 : S(x) -> R(x,y)\ns2 : R(x,y) -> S(y)")).sticky);
    EXPECT_TRUE(check_sticky(parse_ruleset("R(x,y) -> S(y,z)")).sticky);
    // x is unmarked, so repeating it is harmless.
    EXPECT_TRUE(check_sticky(parse_ruleset("R(x,x) -> S(x)")).sticky);
    EXPECT_FALSE(check_sticky(parse_ruleset("R(x,x) -> S(y)")).sticky);
}

TEST(Immortal, Examples) {
    Ruleset t0 = parse_ruleset("s : R(x,y) -> R(y,z)");
    EXPECT_EQ(immortal_head_positions(t0, 0, marked_variables(t0)), (std::vector<std::size_t>{1}));
    Ruleset rs = parse_ruleset("R(x,y) -> S(x)");
    EXPECT_EQ(immortal_head_positions(rs, 0, marked_variables(rs)), (std::vector<std::size_t>{0}));
    // Every head variable marked.
    Ruleset all = parse_ruleset("a : R(x,y) -> S(x)\nb : S(x) -> T(y)");
    EXPECT_TRUE(immortal_head_positions(all, 0, marked_variables(all)).empty());
}

TEST(Classify, ReportText) {
    Ruleset t3 = parse_ruleset("s : R(x,y), R(y,z) -> T(x,z)");
    std::string text = classify(t3).to_string(t3);
    EXPECT_NE(text.find("guarded: no"), std::string::npos) << text;
    EXPECT_NE(text.find("sticky: no"), std::string::npos) << text;
    EXPECT_NE(text.find("y"), std::string::npos);
}

TEST(ClassesProperty, MarkingMatchesRoundOracle) {
    gen::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        Ruleset rs = gen::random_ruleset(rng, gen::RulesetShape{4, 3, 3, 3, 4, false});
        EXPECT_EQ(marked_variables(rs), marked_by_rounds(rs)) << rs.to_string();
    }
}

TEST(ClassesProperty, StickyReportInvariants) {
    gen::Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        Ruleset rs = gen::random_ruleset(rng);
        StickyReport s = check_sticky(rs);
        GuardedReport g = check_guarded(rs);
        for (std::size_t r = 0; r < rs.size(); ++r) {
            if (!g.guards[r]) continue;
            const Atom& guard = rs[r].body()[*g.guards[r]];
            for (const Term& v : rs[r].body_vars())
                EXPECT_NE(std::find(guard.args.begin(), guard.args.end(), v), guard.args.end());
        }
        if (s.sticky) continue;
        ASSERT_TRUE(s.violation.has_value());
        EXPECT_TRUE(s.marked.count(*s.violation));
        std::size_t occurrences = 0;
        for (const Atom& a : rs[s.violation->rule].body())
            occurrences += static_cast<std::size_t>(std::count(a.args.begin(), a.args.end(), s.violation->var));
        EXPECT_GE(occurrences, 2u);
    }
}

TEST(ClassesProperty, MarkingIsMonotone) {
    gen::Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        Ruleset rs = gen::random_ruleset(rng, gen::RulesetShape{4, 3, 2, 3, 4, false});
        auto full = marked_variables(rs);
        for (std::size_t k = 0; k <= rs.size(); ++k) {
            Ruleset prefix(std::vector<Tgd>(rs.rules().begin(), rs.rules().begin() + static_cast<long>(k)));
            for (const RuleVariable& m : marked_variables(prefix)) EXPECT_TRUE(full.count(m)) << rs.to_string();
        }
    }
}

// Restricted to immortal positions that hold a frontier variable.
TEST(ClassesProperty, ImmortalFrontierTermsPropagateToChildren) {
    gen::Rng rng(10);
    std::size_t checked = 0;
    for (int built = 0; built < 30;) {
        Ruleset rs = gen::random_sticky_ruleset(rng);
        Instance db = gen::random_database(rng, rs, 3, 2);
        ChaseGraph g;
        try {
            g = build_real_oblivious(rs, db, 4, 20000);
        } catch (const Error&) {
            continue;  // too large at depth 4
        }
        ++built;
        auto marked = marked_variables(rs);
        std::map<std::size_t, std::vector<std::size_t>> immortal;
        for (std::size_t r = 0; r < rs.size(); ++r) immortal[r] = immortal_head_positions(rs, r, marked);
        for (auto [parent, child] : g.parent_edges()) {
            const ChaseNode& p = g[parent];
            if (p.is_database()) continue;
            const Tgd& rule = rs[p.trigger->rule];
            for (std::size_t pos : immortal[p.trigger->rule]) {
                if (!rule.is_frontier(rule.head().args[pos])) continue;
                ++checked;
                const Term& c = p.label.args[pos];
                const auto& args = g[child].label.args;
                EXPECT_NE(std::find(args.begin(), args.end(), c), args.end())
                    << rs.to_string() << p.label.to_string() << " -> " << g[child].label.to_string();
            }
        }
    }
    EXPECT_GT(checked, 0u);
}

// Existential positions count as immortal, yet their null can be dropped by
// the next rule when a marked variable reads it.
TEST(Immortal, ExistentialPositionNeedNotPropagate) {
    Ruleset rs = parse_ruleset("r : P(x,y,w) -> P(z,w,u)");
    auto marked = marked_variables(rs);
    EXPECT_TRUE(check_sticky(rs).sticky);
    EXPECT_EQ(immortal_head_positions(rs, 0, marked), (std::vector<std::size_t>{0, 2}));
    ChaseGraph g = build_real_oblivious(rs, parse_database("P(a,b,c)"), 2);
    ASSERT_EQ(g.size(), 3u);
    const Term born = g[1].label.args[0];
    EXPECT_TRUE(born.is_null());
    const auto& child = g[2].label.args;
    EXPECT_EQ(std::find(child.begin(), child.end(), born), child.end());
}
