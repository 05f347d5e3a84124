#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rchase/instance.hpp"
#include "rchase/tgd.hpp"

namespace rchase {

// A rule index plus an assignment of terms to the rule's body variables, in
// Tgd::body_vars() order.
struct Trigger {
    std::size_t rule = 0;
    std::vector<Term> values;

    bool operator==(const Trigger&) const = default;
};

struct TriggerHash {
    std::size_t operator()(const Trigger& t) const { return hash_combine(t.rule, TermsHash{}(t.values)); }
};

// Builds a trigger from a substitution covering all body variables. Throws
// RuleError otherwise.
Trigger make_trigger(const Ruleset& rules, std::size_t rule, const Substitution& h);
Substitution trigger_substitution(const Ruleset& rules, const Trigger& t);
std::string trigger_to_string(const Ruleset& rules, const Trigger& t);

// h(body(sigma)), in body order.
std::vector<Atom> body_image(const Ruleset& rules, const Trigger& t);
// result(sigma, h): existential variables become the nulls determined by the trigger.
Atom result_atom(const Ruleset& rules, const Trigger& t);

bool is_trigger_on(const Ruleset& rules, const Trigger& t, const Instance& instance);

// True iff some h' with h'(result(t)) = candidate fixes every frontier term of t.
bool stops(const Ruleset& rules, const Atom& candidate, const Trigger& t);

// True iff no atom of the instance stops result(t).
bool is_active(const Ruleset& rules, const Trigger& t, const Instance& instance);

// All triggers on the instance: rule order, then homomorphism order.
std::vector<Trigger> enumerate_triggers(const Ruleset& rules, const Instance& instance);
std::vector<Trigger> active_triggers(const Ruleset& rules, const Instance& instance);

enum class ChaseStatus { Saturated, BudgetExhausted };
std::string status_name(ChaseStatus s);

struct DerivationStep {
    Trigger trigger;
    Atom produced;

    bool operator==(const DerivationStep&) const = default;
};

// I_0 = database, I_{i+1} = I_i + steps[i].produced.
struct Derivation {
    Instance database;
    std::vector<DerivationStep> steps;
    ChaseStatus status = ChaseStatus::Saturated;

    std::size_t length() const { return steps.size(); }
    Instance instance_at(std::size_t i) const;
    Instance final_instance() const { return instance_at(steps.size()); }
    std::vector<Trigger> triggers() const;

    bool operator==(const Derivation& other) const;
};

struct Strategy {
    enum class Kind { FairFifo, Lifo, Random, Scripted };
    Kind kind = Kind::FairFifo;
    std::uint64_t seed = 0;
    std::vector<Trigger> script;

    static Strategy fair() { return {}; }
    static Strategy lifo() { return {Kind::Lifo, 0, {}}; }
    static Strategy random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
    static Strategy scripted(std::vector<Trigger> script) { return {Kind::Scripted, 0, std::move(script)}; }

    std::string to_string() const;
};

// Restricted chase. Every step applies a trigger that is active on the current
// instance. Fair-fifo re-checks activeness when dequeuing and drops triggers
// that became inactive. Scripted runs throw ChaseError on a listed trigger that
// is not an active trigger. The result is Saturated iff no active trigger
// remains.
Derivation run_restricted(const Ruleset& rules, const Instance& database, const Strategy& strategy,
                          std::size_t max_steps);

struct ObliviousResult {
    Instance instance;
    std::size_t steps = 0;
    ChaseStatus status = ChaseStatus::Saturated;
};

// Oblivious chase: applies every trigger exactly once, in discovery order or,
// with a seed, in a pseudo-random order. Each application counts as a step.
ObliviousResult run_oblivious(const Ruleset& rules, const Instance& database, std::size_t max_steps,
                              std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace rchase

template <>
struct std::hash<rchase::Trigger> : rchase::TriggerHash {};
