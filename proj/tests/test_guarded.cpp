#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "rchase/ajt.hpp"
#include "rchase/classes.hpp"
#include "rchase/formats.hpp"
#include "rchase/guarded.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rchase;

namespace {

const char* kRemote = "s1 : S(x,y) -> T(x)\ns2 : R(x,y), T(y) -> P(x,y)\ns3 : P(x,y) -> P(y,z)\n";
const char* kOblivious = "s1 : P(x,y) -> R(x,y)\ns2 : P(x,y) -> S(x)\ns3 : R(x,y) -> S(x)\ns4 : S(x) -> R(x,y)\n";

struct RemoteExample {
    Ruleset rules = parse_ruleset(kRemote);
    Instance db = parse_database("R(a,b)\nS(b,c)");
    Derivation run(std::size_t steps) const { return run_restricted(rules, db, Strategy::lifo(), steps); }
};

std::size_t node_labelled(const ChaseGraph& g, const std::string& text) {
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v].label.to_string() == text) return v;
    ADD_FAILURE() << "no node " << text;
    return 0;
}

std::set<Term> terms_of(const Atom& a) { return {a.args.begin(), a.args.end()}; }

// Every term's occurrence set spans a connected subtree.
bool is_join_tree(const Treeification& t) {
    std::map<Term, std::vector<std::size_t>> occ;
    for (std::size_t v = 0; v < t.nodes.size(); ++v)
        for (const Term& x : terms_of(t.nodes[v].label)) occ[x].push_back(v);
    for (const auto& [term, nodes] : occ) {
        // Connected iff exactly one occurrence has no parent holding the term.
        std::size_t tops = 0;
        for (std::size_t v : nodes) {
            auto p = t.nodes[v].parent;
            if (!p || !terms_of(t.nodes[*p].label).count(term)) ++tops;
        }
        if (tops != 1) return false;
    }
    return true;
}

// h_ac restricted to {label(u), label(v)} is injective and consistent.
bool pair_isomorphic(const JoinTreeNode& u, const JoinTreeNode& v) {
    std::vector<std::pair<Term, Term>> cells;
    for (std::size_t i = 0; i < u.label.arity(); ++i) cells.emplace_back(u.label.args[i], u.source.args[i]);
    for (std::size_t i = 0; i < v.label.arity(); ++i) cells.emplace_back(v.label.args[i], v.source.args[i]);
    for (const auto& [a, b] : cells)
        for (const auto& [c, d] : cells)
            if ((a == c) != (b == d)) return false;
    return true;
}

Treeification remote_tree(const RemoteExample& ex, std::size_t steps) {
    return treeify(ex.db, make_atom("R", {"a", "b"}), ex.run(steps), ex.rules);
}

// Builds an abstract join tree node by node from (pred, origin, father/me pairs).
AjtLabel label(const Ruleset& rs, const char* pred, std::optional<std::size_t> origin, std::size_t width,
               const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    (void)rs;
    return AjtLabel{Predicate::named(pred), origin, make_equivalence(width, pairs)};
}

}  // namespace

TEST(Sideatom, Examples) {
    SideatomType pi{Predicate::named("P"), 4, {0, 3, 2}};
    Atom alpha{Predicate::named("P"), {Term::constant("a"), Term::constant("b"), Term::constant("c")}};
    EXPECT_TRUE(sideatom_match(alpha, pi, make_atom("R", {"a", "d", "c", "b"})));
    EXPECT_FALSE(sideatom_match(alpha, pi, make_atom("R", {"a", "d", "c", "c"})));
    EXPECT_FALSE(sideatom_match(alpha, pi, make_atom("R", {"a", "d", "c"})));
    EXPECT_FALSE(sideatom_match(make_atom("Q", {"a", "b", "c"}), pi, make_atom("R", {"a", "d", "c", "b"})));
}

TEST(Sideatom, TypeOfBodyAtom) {
    Ruleset rs = parse_ruleset(kRemote);
    SideatomType pi = sideatom_type(rs[1], 0, 1);
    EXPECT_EQ(pi, (SideatomType{Predicate::named("T"), 2, {1}}));
}

TEST(Annotate, GuardAndSideParentOfP) {
    RemoteExample ex;
    ChaseGraph g = derivation_graph(ex.run(6), ex.rules);
    GuardAnnotation ann = annotate_gp_sp(g);
    std::size_t p = node_labelled(g, "P(a,b)");
    EXPECT_EQ(ann.guard_parent[p], node_labelled(g, "R(a,b)"));
    ASSERT_EQ(ann.side_parents[p].size(), 1u);
    EXPECT_EQ(ann.side_parents[p][0].node, node_labelled(g, "T(b)"));
    EXPECT_EQ(ann.side_parents[p][0].type, (SideatomType{Predicate::named("T"), 2, {1}}));
}

TEST(Annotate, SingleBodyRulesHaveOnlyGuardParents) {
    Ruleset rs = parse_ruleset(kOblivious);
    ChaseGraph g = build_real_oblivious(rs, parse_database("P(a,b)"), 3);
    GuardAnnotation ann = annotate_gp_sp(g);
    for (std::size_t v = 0; v < g.size(); ++v) {
        EXPECT_TRUE(ann.side_parents[v].empty());
        EXPECT_EQ(ann.guard_parent[v].has_value(), !g[v].is_database());
    }
    EXPECT_TRUE(remote_side_parents(g, ann).situations.empty());
}

TEST(Annotate, RejectsUnguardedRules) {
    Ruleset rs = parse_ruleset("s : R(x,y), R(y,z) -> T(x,z)");
    ChaseGraph g = build_real_oblivious(rs, parse_database("R(a,b)\nR(b,c)"), 1);
    EXPECT_THROW(annotate_gp_sp(g), UnsupportedError);
}

TEST(RemoteSideParents, ExampleSituation) {
    RemoteExample ex;
    ChaseGraph g = derivation_graph(ex.run(6), ex.rules);
    RemoteSideParents rsp = remote_side_parents(g, annotate_gp_sp(g));
    Situation s{node_labelled(g, "R(a,b)"), node_labelled(g, "P(a,b)"), node_labelled(g, "S(b,c)"),
                node_labelled(g, "T(b)")};
    EXPECT_NE(std::find(rsp.situations.begin(), rsp.situations.end(), s), rsp.situations.end());
    EXPECT_EQ(rsp.longs_for, (std::vector<std::pair<std::size_t, std::size_t>>{{s.alpha, s.beta}}));
}

TEST(GuardedProperty, ForestsAndSituations) {
    gen::Rng rng(61);
    std::size_t situations = 0;
    for (int i = 0; i < 80; ++i) {
        Ruleset rs = gen::random_guarded_ruleset(rng);
        Instance db = gen::random_database(rng, rs, 4, 3);
        Derivation d = run_restricted(rs, db, Strategy::random(static_cast<std::uint64_t>(i)), 15);
        ChaseGraph g = derivation_graph(d, rs);
        GuardAnnotation ann = annotate_gp_sp(g);
        for (std::size_t v = 0; v < g.size(); ++v) {
            std::size_t root = gp_root(ann, v);
            EXPECT_TRUE(g[root].is_database());
            EXPECT_EQ(ann.guard_parent[v].has_value(), !g[v].is_database());
        }
        for (const Situation& s : remote_side_parents(g, ann).situations) {
            ++situations;
            EXPECT_NE(s.alpha, s.beta);
            EXPECT_TRUE(g[s.alpha].is_database() && g[s.beta].is_database());
            EXPECT_EQ(gp_root(ann, s.alpha_prime), s.alpha);
            EXPECT_EQ(gp_root(ann, s.beta_prime), s.beta);
            auto alpha_terms = terms_of(g[s.alpha].label), beta_terms = terms_of(g[s.beta].label);
            for (const Term& t : g[s.beta_prime].label.args) {
                EXPECT_TRUE(alpha_terms.count(t)) << rs.to_string();
                EXPECT_TRUE(beta_terms.count(t)) << rs.to_string();
            }
        }
    }
    EXPECT_GT(situations, 0u);
}

TEST(Treeify, RemoteExample) {
    RemoteExample ex;
    Treeification t = remote_tree(ex, 6);
    ASSERT_EQ(t.nodes.size(), 2u);
    EXPECT_EQ(t.nodes[0].label, make_atom("R", {"a", "b"}));
    EXPECT_EQ(t.nodes[1].label, make_atom("S", {"b", "c@1"}));
    EXPECT_EQ(t.nodes[1].parent, 0u);
    EXPECT_EQ(t.nodes[1].source, make_atom("S", {"b", "c"}));
    EXPECT_EQ(t.ell_infinity, 2u);
    EXPECT_TRUE(is_join_tree(t));
    // D_ac is the original database up to renaming c.
    auto m = t.term_map();
    EXPECT_EQ(m.at(Term::constant("c@1")), Term::constant("c"));
    EXPECT_EQ(t.database_set().size(), ex.db.size());
}

TEST(Treeify, ShortPrefixIsReported) {
    RemoteExample ex;
    try {
        remote_tree(ex, 2);
        FAIL() << "expected PrefixTooShortError";
    } catch (const PrefixTooShortError& e) {
        EXPECT_EQ(e.missing(), make_atom("T", {"b"}));
    }
    EXPECT_THROW(remote_tree(ex, 0), PrefixTooShortError);
}

TEST(Treeify, NoLongingGivesSingleNode) {
    Ruleset rs = parse_ruleset("s : P(x,y) -> P(y,z)");
    Instance db = parse_database("P(a,b)\nS(b,c)");
    Derivation d = run_restricted(rs, db, Strategy::lifo(), 4);
    Treeification t = treeify(db, make_atom("P", {"a", "b"}), d, rs);
    EXPECT_EQ(t.nodes.size(), 1u);
    EXPECT_EQ(t.ell_infinity, 0u);
}

TEST(Treeify, TreeifiedDatabaseStillDoesNotTerminate) {
    RemoteExample ex;
    Treeification t = remote_tree(ex, 6);
    Derivation d = run_restricted(ex.rules, t.database_set(), Strategy::lifo(), 50);
    EXPECT_EQ(d.status, ChaseStatus::BudgetExhausted);
    EXPECT_EQ(d.length(), 50u);
}

TEST(GuardedProperty, TreeifyOutputsAreJoinTrees) {
    gen::Rng rng(62);
    std::size_t trees = 0, edges = 0;
    for (int i = 0; i < 400; ++i) {
        Ruleset rs = gen::random_guarded_ruleset(rng, gen::RulesetShape{4, 3, 3, 3, 4, true});
        Instance db = gen::random_database(rng, rs, 6, 3);
        Derivation d = run_restricted(rs, db, Strategy::random(static_cast<std::uint64_t>(i)), 30);
        for (const Atom& alpha : db) {
            Treeification t;
            try {
                t = treeify(db, alpha, d, rs);
            } catch (const PrefixTooShortError&) {
                continue;
            }
            ++trees;
            EXPECT_TRUE(is_join_tree(t)) << rs.to_string();
            EXPECT_EQ(t.nodes[0].label, alpha);
            for (std::size_t v = 0; v < t.nodes.size(); ++v) {
                EXPECT_TRUE(db.contains(t.nodes[v].source));
                EXPECT_LE(t.nodes[v].depth, t.ell_infinity);
                if (auto p = t.nodes[v].parent) {
                    EXPECT_EQ(t.nodes[v].depth, t.nodes[*p].depth + 1);
                    EXPECT_TRUE(pair_isomorphic(t.nodes[v], t.nodes[*p]));
                    ++edges;
                }
            }
        }
    }
    EXPECT_GT(trees, 20u);
    EXPECT_GT(edges, 0u);
}

// Root and grandchild share a constant that the middle node does not carry,
// so the tree renames it apart: h_ac is an isomorphism on edges, not on
// every pair of vertices.
TEST(Treeify, ThreeLevelTreeRenamesUnsharedTerms) {
    Ruleset rs = parse_ruleset(
        "a : S(x,y) -> T(x)\nb : R(x,y), T(y) -> P(x,y)\nc : V(x,y) -> U(x)\nd : S(x,y), U(y) -> Q(x,y)\n");
    Instance db = parse_database("R(a,b)\nS(b,c)\nV(c,a)");
    Derivation d = run_restricted(rs, db, Strategy::fair(), 20);
    ASSERT_EQ(d.status, ChaseStatus::Saturated);
    Treeification t = treeify(db, make_atom("R", {"a", "b"}), d, rs);
    ASSERT_EQ(t.nodes.size(), 3u);
    EXPECT_EQ(t.nodes[1].label, make_atom("S", {"b", "c@1"}));
    EXPECT_EQ(t.nodes[2].label, make_atom("V", {"c@1", "a@2"}));
    EXPECT_EQ(t.nodes[2].parent, 1u);
    EXPECT_TRUE(is_join_tree(t));
    EXPECT_TRUE(pair_isomorphic(t.nodes[0], t.nodes[1]));
    EXPECT_TRUE(pair_isomorphic(t.nodes[1], t.nodes[2]));
    EXPECT_FALSE(pair_isomorphic(t.nodes[0], t.nodes[2]));
}

TEST(WeakChase, ExtractOnTreeifiedExample) {
    RemoteExample ex;
    Derivation original = ex.run(60);
    Treeification t = treeify(ex.db, make_atom("R", {"a", "b"}), ex.run(6), ex.rules);
    WeakChase w = build_weak_chase(t, original, ex.rules, 8);
    ASSERT_TRUE(w.order.validate(w.k));
    bool invariant = true;
    ExtractResult r = extract(w.k, w.order, ex.rules, [&](const ExtractState& s) {
        std::vector<std::size_t> live = s.born;
        live.insert(live.end(), s.pending.begin(), s.pending.end());
        for (std::size_t o : live) {
            if (!w.k[o].trigger) continue;
            const Tgd& rule = ex.rules[w.k[o].trigger->rule];
            auto body = body_image(ex.rules, *w.k[o].trigger);
            for (std::size_t b = 1; b < rule.body().size(); ++b)
                invariant &= std::any_of(live.begin(), live.end(), [&](std::size_t q) { return w.k[q].label == body[b]; });
        }
    });
    EXPECT_TRUE(invariant);
    EXPECT_EQ(gen::replay_with_oracle(ex.rules, r.derivation), std::nullopt);
    std::set<std::size_t> born(r.born.begin(), r.born.end());
    for (std::size_t o = 0; o < w.k.size(); ++o)
        if (w.tree_node[o] == 0) EXPECT_TRUE(born.count(o)) << o << " " << w.k[o].label.to_string();
    EXPECT_GT(r.derivation.length(), 4u);
}

TEST(Ajt, SingleDatabaseNode) {
    Ruleset rs = parse_ruleset(kOblivious);
    AbstractJoinTree t{2, {}};
    t.add(label(rs, "R", std::nullopt, 2, {}), std::nullopt);
    EXPECT_EQ(validate_ajt(t, rs), std::nullopt);
    DecodedAjt d = decode_ajt(t, rs);
    ASSERT_EQ(d.atoms.size(), 1u);
    EXPECT_NE(d.atoms[0].args[0], d.atoms[0].args[1]);
    EXPECT_EQ(d.database.size(), 1u);
}

TEST(Ajt, DatabaseNodeBelowRuleNode) {
    Ruleset rs = parse_ruleset(kOblivious);
    AbstractJoinTree t{2, {}};
    t.add(label(rs, "S", std::nullopt, 2, {}), std::nullopt);
    t.add(label(rs, "R", 3, 2, {{AjtLabel::f(0), AjtLabel::m(2, 0)}}), 0);
    EXPECT_EQ(validate_ajt(t, rs), std::nullopt);
    t.add(label(rs, "P", std::nullopt, 2, {}), 1);
    auto v = validate_ajt(t, rs);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->condition, 2);
    EXPECT_EQ(v->node, 2u);
}

TEST(Ajt, MergedExistentialViolatesHeadCondition) {
    Ruleset rs = parse_ruleset(kOblivious);
    AbstractJoinTree t{2, {}};
    t.add(label(rs, "S", std::nullopt, 2, {}), std::nullopt);
    // s4 : S(x) -> R(x,y) with y merged into x.
    t.add(label(rs, "R", 3, 2, {{AjtLabel::f(0), AjtLabel::m(2, 0)}, {AjtLabel::m(2, 0), AjtLabel::m(2, 1)}}), 0);
    auto v = validate_ajt(t, rs);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->condition, 5);
}

TEST(Ajt, EdgeSharesTerm) {
    Ruleset rs = parse_ruleset(kOblivious);
    AbstractJoinTree t{2, {}};
    t.add(label(rs, "P", std::nullopt, 2, {}), std::nullopt);
    t.add(label(rs, "R", 0, 2, {{AjtLabel::f(0), AjtLabel::m(2, 0)}, {AjtLabel::f(1), AjtLabel::m(2, 1)}}), 0);
    ASSERT_EQ(validate_ajt(t, rs), std::nullopt);
    DecodedAjt d = decode_ajt(t, rs);
    EXPECT_EQ(d.atoms[0].args, d.atoms[1].args);
    EXPECT_EQ(d.instance.size(), 2u);
    EXPECT_EQ(d.database.size(), 1u);
}

TEST(Ajt, ChaseableCheckOnTreeifiedExample) {
    RemoteExample ex;
    Treeification tr = remote_tree(ex, 6);
    // D_ac = {R(a,b), S(b,c@1)}; first three steps T(b), P(a,b), P(b,n).
    Derivation d = run_restricted(ex.rules, tr.database_set(), Strategy::lifo(), 3);
    ASSERT_EQ(d.length(), 3u);
    ChaseGraph g = derivation_graph(d, ex.rules);
    GuardAnnotation ann = annotate_gp_sp(g);
    std::vector<Atom> atoms;
    std::vector<std::optional<std::size_t>> parent, origin;
    // The tree of D_ac, then guard children.
    atoms.push_back(tr.nodes[0].label);
    parent.push_back(std::nullopt);
    origin.push_back(std::nullopt);
    atoms.push_back(tr.nodes[1].label);
    parent.push_back(0);
    origin.push_back(std::nullopt);
    std::map<std::size_t, std::size_t> tree_of;
    tree_of[*tr.database_set().index_of(tr.nodes[0].label)] = 0;
    tree_of[*tr.database_set().index_of(tr.nodes[1].label)] = 1;
    for (std::size_t v = g.database_size(); v < g.size(); ++v) {
        tree_of[v] = atoms.size();
        atoms.push_back(g[v].label);
        parent.push_back(tree_of.at(*ann.guard_parent[v]));
        origin.push_back(g[v].trigger->rule);
    }
    AbstractJoinTree t = encode_ajt(ex.rules.max_arity(), atoms, parent, origin);
    ASSERT_EQ(validate_ajt(t, ex.rules), std::nullopt);
    ChaseableReport ok = ajt_chaseable_check(t, ex.rules);
    EXPECT_TRUE(ok.chaseable) << ok.message;

    // Without the T-node, P(a,b) lacks its side parent.
    AbstractJoinTree lacking{t.width, {}};
    lacking.add(t.nodes[0].label, std::nullopt);
    lacking.add(t.nodes[1].label, 0);
    std::vector<Atom> no_t{atoms[0], atoms[1]};
    std::vector<std::optional<std::size_t>> no_t_parent{std::nullopt, 0}, no_t_origin{std::nullopt, std::nullopt};
    for (std::size_t i = 2; i < atoms.size(); ++i) {
        if (atoms[i].pred == Predicate::named("T")) continue;
        no_t.push_back(atoms[i]);
        no_t_origin.push_back(origin[i]);
        std::size_t p = *parent[i];
        no_t_parent.push_back(p < 2 ? p : p - 1);
    }
    ChaseableReport missing = ajt_chaseable_check(encode_ajt(t.width, no_t, no_t_parent, no_t_origin), ex.rules);
    EXPECT_FALSE(missing.chaseable);
    EXPECT_EQ(missing.failure, ChaseableReport::Failure::NotParentClosed);
}

TEST(Ajt, MutuallyStoppingSiblings) {
    Ruleset rs = parse_ruleset(kOblivious);
    std::vector<Atom> atoms{make_atom("P", {"a", "b"}), make_atom("S", {"a"}), make_atom("S", {"a"})};
    AbstractJoinTree t = encode_ajt(2, atoms, {std::nullopt, 0, 0}, {std::nullopt, 1, 1});
    ASSERT_EQ(validate_ajt(t, rs), std::nullopt);
    ChaseableReport rep = ajt_chaseable_check(t, rs);
    EXPECT_FALSE(rep.chaseable);
    EXPECT_EQ(rep.failure, ChaseableReport::Failure::BeforeCycle);
}

TEST(AjtProperty, DecodedTermsFollowTheClosure) {
    gen::Rng rng(63);
    for (int i = 0; i < 150; ++i) {
        Ruleset rs = gen::random_guarded_ruleset(rng);
        const std::size_t w = rs.max_arity();
        AbstractJoinTree t{w, {}};
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::vector<std::size_t> ar;
        for (std::size_t x = 0; x < n; ++x) {
            const SchemaEntry& s = rs.schema()[std::uniform_int_distribution<std::size_t>(0, rs.schema().size() - 1)(rng)];
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (int k = 0; k < 3; ++k) {
                std::size_t a = std::uniform_int_distribution<std::size_t>(0, 2 * w - 1)(rng);
                std::size_t b = std::uniform_int_distribution<std::size_t>(0, 2 * w - 1)(rng);
                pairs.emplace_back(a, b);
            }
            std::optional<std::size_t> parent;
            if (x > 0) parent = std::uniform_int_distribution<std::size_t>(0, x - 1)(rng);
            t.add(AjtLabel{s.pred, std::nullopt, make_equivalence(w, pairs)}, parent);
            ar.push_back(s.arity);
        }
        DecodedAjt d = decode_ajt(t, rs);
        // Brute-force closure over (node, position) cells.
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t p = 0; p < ar[x]; ++p) cells.emplace_back(x, p);
        const std::size_t c = cells.size();
        std::vector<std::vector<bool>> same(c, std::vector<bool>(c, false));
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = 0; b < c; ++b) {
                auto [x, i] = cells[a];
                auto [y, j] = cells[b];
                const AjtLabel& lx = t.nodes[x].label;
                const AjtLabel& ly = t.nodes[y].label;
                if (x == y) same[a][b] = lx.same(AjtLabel::m(w, i), AjtLabel::m(w, j));
                else if (t.nodes[y].parent == x) same[a][b] = ly.same(AjtLabel::f(i), AjtLabel::m(w, j));
                else if (t.nodes[x].parent == y) same[a][b] = lx.same(AjtLabel::f(j), AjtLabel::m(w, i));
            }
        for (std::size_t k = 0; k < c; ++k)
            for (std::size_t a = 0; a < c; ++a)
                if (same[a][k])
                    for (std::size_t b = 0; b < c; ++b)
                        if (same[k][b]) same[a][b] = true;
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = 0; b < c; ++b) {
                bool equal = d.atoms[cells[a].first].args[cells[a].second] == d.atoms[cells[b].first].args[cells[b].second];
                EXPECT_EQ(equal, same[a][b] || a == b);
            }
    }
}

TEST(AjtProperty, EncodeDecodeIsIdentityUpToRenaming) {
    gen::Rng rng(64);
    std::size_t checked = 0;
    for (int i = 0; i < 120; ++i) {
        Ruleset rs = gen::random_guarded_ruleset(rng);
        Instance db = gen::random_database(rng, rs, 1, 3);
        Derivation d = run_restricted(rs, db, Strategy::random(static_cast<std::uint64_t>(i)), 8);
        ChaseGraph g = derivation_graph(d, rs);
        GuardAnnotation ann = annotate_gp_sp(g);
        std::vector<Atom> atoms;
        std::vector<std::optional<std::size_t>> parent, origin;
        for (std::size_t v = 0; v < g.size(); ++v) {
            atoms.push_back(g[v].label);
            parent.push_back(ann.guard_parent[v]);
            origin.push_back(g[v].trigger ? std::optional<std::size_t>(g[v].trigger->rule) : std::nullopt);
        }
        AbstractJoinTree t = encode_ajt(rs.max_arity(), atoms, parent, origin);
        EXPECT_EQ(validate_ajt(t, rs), std::nullopt) << rs.to_string();
        DecodedAjt dec = decode_ajt(t, rs);
        std::map<Term, Term> fwd, bwd;
        bool bijective = true;
        for (std::size_t v = 0; v < atoms.size(); ++v) {
            ASSERT_EQ(dec.atoms[v].pred, atoms[v].pred);
            for (std::size_t p = 0; p < atoms[v].arity(); ++p) {
                auto [f, fnew] = fwd.emplace(atoms[v].args[p], dec.atoms[v].args[p]);
                auto [b, bnew] = bwd.emplace(dec.atoms[v].args[p], atoms[v].args[p]);
                bijective &= f->second == dec.atoms[v].args[p] && b->second == atoms[v].args[p];
            }
        }
        EXPECT_TRUE(bijective) << rs.to_string() << d.final_instance().to_string();
        ++checked;
    }
    EXPECT_EQ(checked, 120u);
}
