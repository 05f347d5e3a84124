#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "rchase/sticky.hpp"
#include "sticky_internal.hpp"

namespace rchase {

using namespace sticky_detail;

Instance Caterpillar::legs_instance() const {
    Instance out;
    for (const auto& ls : legs)
        for (const Atom& a : ls) out.insert(a);
    return out;
}

namespace {

std::size_t first_position(PositionSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

Atom start_atom(const StartPair& start) {
    Atom a{start.e0.pred, {}};
    for (std::uint8_t b : start.e0.blocks) a.args.push_back(Term::constant("c" + std::to_string(b)));
    return a;
}

// Values of gamma's variables read off the current atom; other slots stay unset.
std::vector<std::optional<Term>> gamma_values(const Ruleset& rules, const CatLetter& w, const Atom& current) {
    const Tgd& rule = rules[w.rule];
    const auto& slots = rule.body_slots()[w.body_atom];
    std::vector<std::optional<Term>> values(rule.body_vars().size());
    if (rule.body()[w.body_atom].pred != current.pred || slots.size() != current.arity())
        throw Error("caterpillar letter " + w.to_string(rules) + " does not match " + current.to_string());
    for (std::size_t p = 0; p < slots.size(); ++p) {
        auto& v = values[static_cast<std::size_t>(slots[p])];
        if (v && *v != current.args[p])
            throw Error("caterpillar letter " + w.to_string(rules) + " does not match " + current.to_string());
        v = current.args[p];
    }
    return values;
}

void record_step(Caterpillar& c, const Ruleset& rules, const std::vector<std::vector<bool>>& immortal,
                 const CatLetter& w, Trigger t) {
    Atom next = result_atom(rules, t);
    std::vector<Atom> image = body_image(rules, t);
    std::vector<Atom> legs;
    for (std::size_t b = 0; b < image.size(); ++b)
        if (b != w.body_atom) legs.push_back(image[b]);
    c.gamma.push_back(w.body_atom);
    c.legs.push_back(std::move(legs));
    c.immortal.push_back(immortal[w.rule]);
    c.triggers.push_back(std::move(t));
    c.body.push_back(std::move(next));
    if (w.pass_on) {
        c.relays.push_back(c.body.back().args[first_position(w.pass_on)]);
        c.pass_on.push_back(c.body.size());
    }
}

Caterpillar decode_steps(const Ruleset& rules, const LassoWord& w, std::size_t steps,
                         const std::vector<std::vector<bool>>& immortal) {
    Caterpillar c;
    c.alpha0 = start_atom(w.start);
    c.relays.push_back(c.alpha0.args[first_position(w.start.pi0)]);
    std::size_t fresh = 0;
    for (std::size_t j = 0; j < steps; ++j) {
        CatLetter l = w.letter(j);
        auto values = gamma_values(rules, l, c.atom(j));
        Trigger t{l.rule, {}};
        for (auto& v : values) t.values.push_back(v ? *v : Term::constant("l" + std::to_string(fresh++)));
        record_step(c, rules, immortal, l, std::move(t));
    }
    return c;
}

bool legs_have_nulls(const Caterpillar& c) {
    for (const auto& ls : c.legs)
        for (const Atom& a : ls)
            for (const Term& t : a.args)
                if (t.is_null()) return true;
    return false;
}

// Nulls reach legs only when born in the stem: afterwards every null sharing
// a leg would sit at an immortal position forever, once per period. Starting
// the word at the cycle turns those nulls into constants of alpha0.
LassoWord rebase(const Ruleset& rules, const LassoWord& w, const std::vector<std::vector<bool>>& immortal) {
    std::size_t s = w.stem.size();
    Caterpillar c = decode_steps(rules, w, s, immortal);
    Term relay = c.relays.back();
    const Atom& a = c.atom(s);
    PositionSet pi = 0;
    for (std::size_t p = 0; p < a.arity(); ++p)
        if (a.args[p] == relay) pi |= PositionSet{1} << p;
    return LassoWord{StartPair{equality_type(a), pi}, {}, w.cycle};
}

// Leg terms that ever sit at an immortal body position keep their identity;
// the others may be unified. Follows the positions of a term born at step j
// through the periodic word until it dies, turns immortal, or loops.
bool unifiable(const Ruleset& rules, const LassoWord& w, const std::vector<std::vector<bool>>& immortal,
               std::size_t step, PositionSet positions) {
    std::set<std::pair<std::size_t, PositionSet>> seen;
    std::size_t j = step;
    const std::size_t period_start = w.stem.size();
    while (positions) {
        CatLetter l = w.letter(j);
        for (std::size_t k = 0; k < immortal[l.rule].size(); ++k)
            if ((positions >> k & 1u) && immortal[l.rule][k]) return false;
        ++j;
        if (j >= period_start) {
            std::size_t offset = (j - period_start) % w.cycle.size();
            if (!seen.emplace(offset, positions).second) return true;
        }
        positions = delta_pos(rules, positions, w.letter(j));
    }
    return true;
}

std::size_t pass_on_gap(const LassoWord& w) {
    std::size_t last = 0;
    std::size_t gap = 0;
    std::size_t n = w.stem.size() + 2 * w.cycle.size();
    for (std::size_t j = 0; j < n; ++j)
        if (w.letter(j).pass_on) {
            gap = std::max(gap, j + 1 - last);
            last = j + 1;
        }
    return gap;
}

}  // namespace

Caterpillar decode_lasso(const Ruleset& rules, const LassoWord& w, std::size_t periods) {
    if (w.cycle.empty()) throw Error("lasso word with an empty cycle");
    return decode_steps(rules, w, w.stem.size() + periods * w.cycle.size(), immortal_positions(rules));
}

FinitaryCaterpillar unify_legs(const Ruleset& rules, const LassoWord& word, std::size_t steps) {
    if (word.cycle.empty()) throw Error("lasso word with an empty cycle");
    auto immortal = immortal_positions(rules);
    FinitaryCaterpillar out;
    out.word = word;
    if (legs_have_nulls(decode_steps(rules, word, word.stem.size() + 2 * word.cycle.size(), immortal))) {
        out.word = rebase(rules, word, immortal);
        if (legs_have_nulls(decode_steps(rules, out.word, 3 * out.word.cycle.size(), immortal)))
            throw Error("legs still contain nulls after re-basing " + word.to_string(rules));
    }
    const LassoWord& w = out.word;
    out.m = (pass_on_gap(w) + 1) * rules.max_rule_variables();

    Caterpillar& c = out.caterpillar;
    c.alpha0 = start_atom(w.start);
    c.relays.push_back(c.alpha0.args[first_position(w.start.pi0)]);
    std::map<Term, std::size_t> pool_index;  // unified leg term -> pool index
    std::set<std::size_t> in_use;
    std::size_t fresh = 0;
    std::map<std::vector<std::int64_t>, std::size_t> seen_keys;
    const std::size_t limit = std::max<std::size_t>(steps, 1) + w.stem.size() + 200000;

    for (std::size_t j = 0; j < limit; ++j) {
        if (out.closed_after && j >= steps) break;
        CatLetter l = w.letter(j);
        const Tgd& rule = rules[l.rule];
        auto values = gamma_values(rules, l, c.atom(j));
        Trigger t{l.rule, {}};
        for (std::size_t slot = 0; slot < values.size(); ++slot) {
            if (values[slot]) {
                t.values.push_back(*values[slot]);
                continue;
            }
            Term var = rule.body_vars()[slot];
            PositionSet pos = 0;
            for (std::size_t k = 0; k < rule.head().arity(); ++k)
                if (rule.head().args[k] == var) pos |= PositionSet{1} << k;
            Term free = Term::constant("l" + std::to_string(fresh++));
            if (!unifiable(rules, w, immortal, j, pos)) {
                t.values.push_back(free);
                continue;
            }
            std::size_t idx = 0;
            while (in_use.count(idx)) ++idx;
            in_use.insert(idx);
            Term pooled = Term::constant("u" + std::to_string(idx));
            pool_index[pooled] = idx;
            out.unifier[free] = pooled;
            out.pool_size = std::max(out.pool_size, idx + 1);
            t.values.push_back(pooled);
        }
        record_step(c, rules, immortal, l, std::move(t));
        const Atom& a = c.body.back();
        if (l.pass_on) {
            in_use.clear();
            for (const Term& x : a.args)
                if (auto it = pool_index.find(x); it != pool_index.end()) in_use.insert(it->second);
        }
        if (out.closed_after || j + 1 < w.stem.size()) continue;
        std::vector<std::int64_t> key{static_cast<std::int64_t>((j + 1 - w.stem.size()) % w.cycle.size())};
        std::vector<Term> nulls;
        for (const Term& x : a.args) {
            if (auto it = pool_index.find(x); it != pool_index.end()) {
                key.push_back(0);
                key.push_back(static_cast<std::int64_t>(it->second));
            } else if (x.is_null()) {
                auto nt = std::find(nulls.begin(), nulls.end(), x);
                key.push_back(1);
                key.push_back(nt - nulls.begin());
                if (nt == nulls.end()) nulls.push_back(x);
            } else {
                key.push_back(2);
                key.push_back(x.id());
            }
        }
        key.push_back(-1);
        for (std::size_t i : in_use) key.push_back(static_cast<std::int64_t>(i));
        if (!seen_keys.emplace(std::move(key), j + 1).second) out.closed_after = j + 1;
    }
    if (!out.closed_after) throw Error("unified caterpillar did not become periodic for " + w.to_string(rules));

    out.witness.insert(c.alpha0);
    for (std::size_t j = 0; j < out.closed_after; ++j)
        for (const Atom& a : c.legs[j]) out.witness.insert(a);
    for (std::size_t j = out.closed_after; j < c.legs.size(); ++j)
        for (const Atom& a : c.legs[j])
            if (!out.witness.contains(a)) throw Error("leg " + a.to_string() + " outside the periodic witness");
    out.script.assign(c.triggers.begin(), c.triggers.begin() + static_cast<long>(std::min(steps, c.triggers.size())));
    return out;
}

TerminationVerdict decide_ct_sticky(const Ruleset& rules, std::size_t replay_steps) {
    StickyReport sr = check_sticky(rules);
    if (!sr.sticky) {
        std::string detail;
        if (sr.violation)
            detail = ": variable " + sr.violation->var.to_string() + " of rule " + rules[sr.violation->rule].name();
        throw UnsupportedError("ruleset is not sticky" + detail);
    }
    TerminationVerdict v;
    auto alphabet = caterpillar_alphabet(rules);
    for (const StartPair& start : start_pairs(rules)) {
        BuchiAutomaton a = build_caterpillar_automaton(rules, start);
        ++v.automata_built;
        auto lasso = buchi_nonempty(a);
        if (!lasso) continue;
        LassoWord w{start, {}, {}};
        for (std::size_t l : lasso->stem) w.stem.push_back(alphabet[l]);
        for (std::size_t l : lasso->cycle) w.cycle.push_back(alphabet[l]);
        FinitaryCaterpillar fc = unify_legs(rules, w, replay_steps);
        v.terminating = false;
        v.lasso = w;
        v.witness = fc.witness;
        v.script = fc.script;
        v.replay = run_restricted(rules, fc.witness, Strategy::scripted(fc.script), replay_steps);
        if (v.replay.length() != replay_steps || v.replay.status != ChaseStatus::BudgetExhausted)
            throw Error("replay of the non-termination witness stopped after " + std::to_string(v.replay.length()) +
                        " steps");
        return v;
    }
    return v;
}

}  // namespace rchase
