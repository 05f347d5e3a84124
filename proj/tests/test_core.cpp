#include <gtest/gtest.h>

#include <map>
#include <set>
#include <thread>

#include "rchase/equality_type.hpp"
#include "rchase/error.hpp"
#include "rchase/homomorphism.hpp"
#include "rchase/symbols.hpp"
#include "rchase/tgd.hpp"
#include "support/generators.hpp"

using namespace rchase;

namespace {

Term c(const char* n) { return Term::constant(n); }
Term v(const char* n) { return Term::variable(n); }
Atom atom(const char* p, std::vector<Term> args) { return Atom{Predicate::named(p), std::move(args)}; }

// All functions vars(pattern) -> dom(target) whose image of the pattern lies in the target.
std::set<std::map<Term, Term>> brute_force_homomorphisms(const std::vector<Atom>& pattern, const Instance& target) {
    std::vector<Term> vars;
    for (const Atom& a : pattern)
        for (const Term& t : a.args)
            if (t.is_variable() && std::find(vars.begin(), vars.end(), t) == vars.end()) vars.push_back(t);
    std::vector<Term> dom = target.active_domain();
    std::set<std::map<Term, Term>> out;
    if (dom.empty()) {
        if (vars.empty()) out.insert({});
        return out;
    }
    std::vector<std::size_t> choice(vars.size(), 0);
    for (;;) {
        std::map<Term, Term> h;
        for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = dom[choice[i]];
        bool ok = true;
        for (const Atom& a : pattern) {
            Atom img{a.pred, {}};
            for (const Term& t : a.args) img.args.push_back(t.is_variable() ? h[t] : t);
            ok = ok && target.contains(img);
        }
        if (ok) out.insert(h);
        std::size_t k = 0;
        while (k < vars.size() && ++choice[k] == dom.size()) choice[k++] = 0;
        if (k == vars.size()) break;
    }
    return out;
}

std::map<Term, Term> as_map(const Substitution& s) { return {s.pairs().begin(), s.pairs().end()}; }

}  // namespace

TEST(Symbols, InterningIsStableAcrossThreads) {
    std::vector<std::thread> threads;
    std::vector<std::vector<std::uint32_t>> ids(4);
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i) ids[t].push_back(intern("sym" + std::to_string(i)));
        });
    for (auto& th : threads) th.join();
    for (int t = 1; t < 4; ++t) EXPECT_EQ(ids[t], ids[0]);
    EXPECT_EQ(symbol_name(ids[0][7]), "sym7");
}

TEST(Term, KindsAndPrinting) {
    EXPECT_TRUE(c("a").is_constant());
    EXPECT_TRUE(v("x").is_variable());
    EXPECT_NE(c("x"), v("x"));
    EXPECT_EQ(atom("R", {c("a"), c("b")}).to_string(), "R(a,b)");
}

TEST(Term, NullsAreDeterminedByTheirKey) {
    std::uint32_t r = intern("rule"), z = intern("z");
    std::vector<Term> vals{c("a"), c("b")};
    Term n1 = make_null(r, z, vals);
    Term n2 = make_null(r, z, vals);
    Term n3 = make_null(r, intern("w"), vals);
    EXPECT_TRUE(n1.is_null());
    EXPECT_EQ(n1, n2);
    EXPECT_NE(n1, n3);
    EXPECT_EQ(null_key(n1).values, vals);
    EXPECT_EQ(null_depth(n1), 1u);
    std::vector<Term> deeper{n1};
    EXPECT_EQ(null_depth(make_null(r, z, deeper)), 2u);
}

TEST(Homomorphism, UniqueMatch) {
    Instance target{atom("P", {c("a"), c("b")})};
    std::vector<Atom> pattern{atom("P", {v("x"), v("y")})};
    auto hs = find_homomorphisms(pattern, target);
    ASSERT_EQ(hs.size(), 1u);
    EXPECT_EQ(hs[0].to_string(), "{x=a,y=b}");
}

TEST(Homomorphism, RepeatedVariableUnmatched) {
    Instance target{atom("R", {c("a"), c("b")})};
    std::vector<Atom> pattern{atom("R", {v("x"), v("x")})};
    EXPECT_TRUE(find_homomorphisms(pattern, target).empty());
}

TEST(Homomorphism, JoinSelectsSharedTerm) {
    Instance target{atom("R", {c("a"), c("b")}), atom("T", {c("b")}), atom("T", {c("c")})};
    std::vector<Atom> pattern{atom("R", {v("x"), v("y")}), atom("T", {v("y")})};
    auto hs = find_homomorphisms(pattern, target);
    ASSERT_EQ(hs.size(), 1u);
    EXPECT_EQ(as_map(hs[0]), (std::map<Term, Term>{{v("x"), c("a")}, {v("y"), c("b")}}));
}

TEST(Homomorphism, FixedBindingsAreRespected) {
    Instance target{atom("R", {c("a"), c("b")}), atom("R", {c("b"), c("c")})};
    std::vector<Atom> pattern{atom("R", {v("x"), v("y")})};
    auto hs = find_homomorphisms(pattern, target, Substitution{{v("x"), c("b")}});
    ASSERT_EQ(hs.size(), 1u);
    EXPECT_EQ(hs[0].get(v("y")), c("c"));
}

TEST(HomomorphismProperty, AgreesWithBruteForceOnSmallInstances) {
    gen::Rng rng(11);
    for (int round = 0; round < 150; ++round) {
        Ruleset rs = gen::random_ruleset(rng);
        Instance target = gen::random_database(rng, rs, 6, 3);
        for (const Tgd& rule : rs) {
            auto got = find_homomorphisms(rule.body(), target);
            std::set<std::map<Term, Term>> got_set;
            for (const auto& s : got) got_set.insert(as_map(s));
            EXPECT_EQ(got_set.size(), got.size()) << "duplicate homomorphism";
            EXPECT_EQ(got_set, brute_force_homomorphisms(rule.body(), target)) << rule.to_string();
            for (const auto& s : got)
                for (const Atom& a : rule.body()) {
                    Atom img = s.apply(a);
                    EXPECT_EQ(img.pred, a.pred);
                    EXPECT_EQ(img.arity(), a.arity());
                }
        }
    }
}

TEST(Homomorphism, MatchBodyWithPin) {
    Tgd rule("r", {atom("R", {v("x"), v("y")}), atom("R", {v("y"), v("z")})}, atom("T", {v("x"), v("z")}));
    Instance target{atom("R", {c("a"), c("b")}), atom("R", {c("b"), c("c")}), atom("R", {c("c"), c("d")})};
    std::vector<std::vector<Term>> seen;
    match_body(rule, target, [&](const std::vector<Term>& vals) {
        seen.push_back(vals);
        return true;
    }, BodyPin{1, 2});
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_EQ(seen[0], (std::vector<Term>{c("b"), c("c"), c("d")}));
}

TEST(EqualityType, Examples) {
    EXPECT_EQ(equality_type(atom("R", {c("a"), c("a")})).to_string(), "R{{1,2}}");
    EXPECT_EQ(equality_type(atom("P", {c("a"), c("b"), c("a")})).to_string(), "P{{1,3},{2}}");
    EXPECT_EQ(equality_type(atom("R", {c("a"), c("b")})).to_string(), "R{{1},{2}}");
    EXPECT_THROW(equality_type(atom("R", {v("x"), c("b")})), Error);
}

TEST(EqualityType, CanonicalAtoms) {
    EXPECT_EQ(canonical_atom(equality_type(atom("R", {c("a"), c("a")}))).to_string(), "R(*1,*1)");
    EqualityType p = equality_type(atom("P", {c("a"), c("b"), c("a")}));
    EXPECT_EQ(canonical_atom(p).to_string(), "P(*1,*2,*1)");
    TEqualityType tp{p, {0, -1}};
    std::vector<Term> slots{c("t")};
    EXPECT_EQ(canonical_atom(tp, slots).to_string(), "P(t,*2,t)");
}

TEST(EqualityType, TLabelsFollowDesignatedTerms) {
    std::vector<Term> designated{c("b"), c("z")};
    TEqualityType t = t_equality_type(atom("R", {c("a"), c("b"), c("b")}), designated);
    EXPECT_EQ(t.labels, (std::vector<int>{-1, 0}));
}

TEST(EqualityType, EnumerationMatchesBellNumbers) {
    for (std::size_t n = 0; n <= 6; ++n) {
        std::size_t count = 0;
        std::set<EqualityType> distinct;
        for_each_equality_type(Predicate::named("Q"), n, [&](const EqualityType& e) {
            ++count;
            distinct.insert(e);
            return true;
        });
        EXPECT_EQ(count, bell_number(n)) << n;
        EXPECT_EQ(distinct.size(), count);
    }
    EXPECT_EQ(bell_number(8), 4140u);
    EXPECT_THROW(all_equality_types(Predicate::named("Q"), 9), UnsupportedError);
}

TEST(EqualityTypeProperty, CanonicalAtomIsIsomorphic) {
    gen::Rng rng(5);
    std::uniform_int_distribution<int> term(0, 3), len(1, 6);
    for (int i = 0; i < 500; ++i) {
        Atom a{Predicate::named("W"), {}};
        int n = len(rng);
        for (int k = 0; k < n; ++k) a.args.push_back(Term::constant("t" + std::to_string(term(rng))));
        Atom can = canonical_atom(equality_type(a));
        std::map<Term, Term> fwd, back;
        for (std::size_t k = 0; k < a.arity(); ++k) {
            auto [f, fnew] = fwd.emplace(a.args[k], can.args[k]);
            auto [b, bnew] = back.emplace(can.args[k], a.args[k]);
            EXPECT_EQ(f->second, can.args[k]);
            EXPECT_EQ(b->second, a.args[k]);
        }
        EXPECT_EQ(equality_type(can), equality_type(a));
    }
}

TEST(Tgd, FrontierAndExistentials) {
    Tgd s4("s4", {atom("S", {v("x")})}, atom("R", {v("x"), v("y")}));
    EXPECT_EQ(s4.frontier(), (std::vector<Term>{v("x")}));
    EXPECT_EQ(s4.existentials(), (std::vector<Term>{v("y")}));
    EXPECT_EQ(s4.head_slots(), (std::vector<int>{0, -1}));
    EXPECT_EQ(s4.to_string(), "s4 : S(x) -> R(x,y)");
    Tgd s1("s1", {atom("P", {v("x"), v("y")})}, atom("R", {v("x"), v("y")}));
    EXPECT_TRUE(s1.existentials().empty());
    EXPECT_EQ(s1.frontier_positions(), (std::vector<std::size_t>{0, 1}));
}

TEST(Tgd, RejectsMalformedRules) {
    EXPECT_THROW(Tgd("r", {}, atom("R", {v("x")})), RuleError);
    EXPECT_THROW(Tgd("r", {atom("R", {c("a")})}, atom("R", {v("x")})), RuleError);
    EXPECT_THROW(Tgd("r", {atom("R", {})}, atom("S", {v("x")})), RuleError);
}

TEST(Ruleset, SchemaAndArityChecks) {
    Ruleset rs({Tgd("a", {atom("P", {v("x"), v("y")})}, atom("R", {v("x"), v("y"), v("z")}))});
    EXPECT_EQ(rs.max_arity(), 3u);
    EXPECT_EQ(rs.arity(Predicate::named("P")), 2u);
    EXPECT_EQ(rs.max_rule_variables(), 3u);
    EXPECT_THROW(Ruleset({Tgd("a", {atom("P", {v("x")})}, atom("P", {v("x"), v("y")}))}), RuleError);
    EXPECT_THROW(Ruleset({Tgd("a", {atom("P", {v("x")})}, atom("Q", {v("x")})),
                          Tgd("a", {atom("Q", {v("x")})}, atom("P", {v("x")}))}),
                 RuleError);
    EXPECT_THROW(rs.check_compatible(Instance{atom("P", {c("a")})}), RuleError);
}

TEST(Instance, SetSemanticsAndActiveDomain) {
    Instance i;
    EXPECT_TRUE(i.insert(atom("R", {c("a"), c("b")})));
    EXPECT_FALSE(i.insert(atom("R", {c("a"), c("b")})));
    i.insert(atom("S", {c("b")}));
    EXPECT_EQ(i.active_domain(), (std::vector<Term>{c("a"), c("b")}));
    Instance j{atom("S", {c("b")}), atom("R", {c("a"), c("b")})};
    EXPECT_EQ(i, j);
}
