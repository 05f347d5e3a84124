#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rchase/buchi.hpp"
#include "rchase/chase.hpp"
#include "rchase/classes.hpp"
#include "rchase/equality_type.hpp"

namespace rchase {

using PositionSet = std::uint32_t;  // bit i = 0-based position i

std::string positions_to_string(PositionSet s);  // {1,3}, 1-based

// (sigma, gamma, P): apply rule sigma with body atom gamma matched on the
// current atom; P is empty or the head positions of one existential variable,
// marking where the next relay term is born.
struct CatLetter {
    std::size_t rule = 0;
    std::size_t body_atom = 0;
    PositionSet pass_on = 0;

    std::string to_string(const Ruleset& rules) const;  // (name,body-index,{positions})
    auto operator<=>(const CatLetter&) const = default;
};

// Rules in order, body atoms in order, P = {} first, then one letter per
// existential variable in order of first head occurrence.
std::vector<CatLetter> caterpillar_alphabet(const Ruleset& rules);

// The equality type of the next body atom when letter w is read on an atom of
// type e, or nothing if gamma cannot be mapped onto can(e).
std::optional<EqualityType> delta_et(const Ruleset& rules, const EqualityType& e, const CatLetter& w);

struct StartPair {
    EqualityType e0;
    PositionSet pi0 = 0;  // a block of e0
    auto operator<=>(const StartPair&) const = default;
};

// (e0, Pi0) over the schema: predicates in schema order, equality types in
// lexicographic order, blocks in order.
std::vector<StartPair> start_pairs(const Ruleset& rules);

// The automata over the caterpillar alphabet. State 0 is the reject sink.
// proper caterpillars: states are equality types
BuchiAutomaton build_apc(const Ruleset& rules, const EqualityType& e0, std::vector<EqualityType>* states = nullptr);
// quasi-caterpillars: states (Theta, e), Theta the abstractions of earlier atoms
// labelled by the blocks of the current atom; rejects when one of them stops
// the new atom
BuchiAutomaton build_aqc(const Ruleset& rules, const EqualityType& e0);
// connected caterpillars: states (Pi1, Pi2, q), accepting iff q is set
BuchiAutomaton build_acc(const Ruleset& rules, PositionSet pi0);
// product of the three for one start pair; accepting iff the connectedness flag is set
BuchiAutomaton build_caterpillar_automaton(const Ruleset& rules, const StartPair& start);

// An ultimately periodic caterpillar word.
struct LassoWord {
    StartPair start;
    std::vector<CatLetter> stem;
    std::vector<CatLetter> cycle;

    CatLetter letter(std::size_t i) const;  // i-th letter of stem.cycle^omega, 0-based
    std::string to_string(const Ruleset& rules) const;  // stem: [...] cycle: [...]
};

// A finite window of the free caterpillar of a lasso word.
struct Caterpillar {
    Atom alpha0;
    std::vector<Trigger> triggers;         // step j+1 produces body[j]
    std::vector<Atom> body;                // alpha_1, alpha_2, ...
    std::vector<std::vector<Atom>> legs;   // per step: images of the non-gamma body atoms
    std::vector<std::size_t> gamma;        // per step: the matched body atom
    std::vector<Term> relays;              // c_0, c_1, ...
    std::vector<std::size_t> pass_on;      // 1-based body indices where c_1, c_2, ... are born
    std::vector<std::vector<bool>> immortal;  // per body atom and position

    const Atom& atom(std::size_t j) const { return j == 0 ? alpha0 : body[j - 1]; }
    Instance legs_instance() const;
};

// Decodes stem.cycle^periods: alpha0 gets constants c0, c1, ... per block,
// variables outside gamma get fresh constants l0, l1, ..., existential
// variables get the trigger's nulls.
Caterpillar decode_lasso(const Ruleset& rules, const LassoWord& w, std::size_t periods = 3);

// A finite witness: legs unified so that only boundedly many constants occur.
struct FinitaryCaterpillar {
    LassoWord word;                // possibly re-based so that legs never contain nulls
    Caterpillar caterpillar;       // unified, over `steps` steps
    std::map<Term, Term> unifier;  // leg constant -> pool constant
    std::size_t pool_size = 0;
    std::size_t m = 0;             // (d+1) * m0
    std::size_t closed_after = 0;  // the legs of later steps repeat earlier ones
    Instance witness;              // alpha0 plus all legs
    std::vector<Trigger> script;
};

// Unifies the legs of the caterpillar of w and replays `steps` body steps.
FinitaryCaterpillar unify_legs(const Ruleset& rules, const LassoWord& w, std::size_t steps);

struct TerminationVerdict {
    bool terminating = true;
    std::optional<LassoWord> lasso;
    Instance witness;
    std::vector<Trigger> script;
    Derivation replay;
    std::size_t automata_built = 0;
};

// Decides all-instance restricted chase termination for a sticky ruleset.
// Non-termination comes with a witness database and a verified scripted replay
// of `replay_steps` active steps that leaves an active trigger. Throws
// UnsupportedError for non-sticky rulesets.
TerminationVerdict decide_ct_sticky(const Ruleset& rules, std::size_t replay_steps = 100);

}  // namespace rchase
