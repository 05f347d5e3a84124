#include "rchase/chase.hpp"

#include <deque>
#include <random>
#include <unordered_set>

#include "rchase/error.hpp"
#include "rchase/homomorphism.hpp"
#include "rchase/symbols.hpp"

namespace rchase {

Trigger make_trigger(const Ruleset& rules, std::size_t rule, const Substitution& h) {
    if (rule >= rules.size()) throw RuleError("rule index " + std::to_string(rule) + " out of range");
    Trigger t{rule, {}};
    for (const Term& v : rules[rule].body_vars()) {
        auto val = h.get(v);
        if (!val)
            throw RuleError("substitution " + h.to_string() + " does not bind " + v.to_string() + " of rule " +
                            rules[rule].name());
        t.values.push_back(*val);
    }
    return t;
}

Substitution trigger_substitution(const Ruleset& rules, const Trigger& t) {
    Substitution h;
    const auto& vars = rules[t.rule].body_vars();
    for (std::size_t i = 0; i < vars.size(); ++i) h.bind(vars[i], t.values[i]);
    return h;
}

std::string trigger_to_string(const Ruleset& rules, const Trigger& t) {
    return "(" + rules[t.rule].name() + "," + trigger_substitution(rules, t).to_string() + ")";
}

std::vector<Atom> body_image(const Ruleset& rules, const Trigger& t) {
    const Tgd& r = rules[t.rule];
    std::vector<Atom> out;
    for (std::size_t k = 0; k < r.body().size(); ++k) {
        Atom a{r.body()[k].pred, {}};
        for (int s : r.body_slots()[k]) a.args.push_back(t.values[static_cast<std::size_t>(s)]);
        out.push_back(std::move(a));
    }
    return out;
}

Atom result_atom(const Ruleset& rules, const Trigger& t) {
    const Tgd& r = rules[t.rule];
    std::vector<Term> nulls;
    for (const Term& z : r.existentials()) nulls.push_back(make_null(r.name_symbol(), z.id(), t.values));
    Atom a{r.head().pred, {}};
    for (int s : r.head_slots())
        a.args.push_back(s >= 0 ? t.values[static_cast<std::size_t>(s)] : nulls[static_cast<std::size_t>(-s - 1)]);
    return a;
}

bool is_trigger_on(const Ruleset& rules, const Trigger& t, const Instance& instance) {
    if (t.rule >= rules.size() || t.values.size() != rules[t.rule].body_vars().size()) return false;
    for (const Atom& a : body_image(rules, t))
        if (!instance.contains(a)) return false;
    return true;
}

bool stops(const Ruleset& rules, const Atom& candidate, const Trigger& t) {
    const Tgd& r = rules[t.rule];
    if (candidate.pred != r.head().pred || candidate.arity() != r.head().arity()) return false;
    std::vector<std::optional<Term>> image(r.existentials().size());
    const auto& slots = r.head_slots();
    for (std::size_t p = 0; p < slots.size(); ++p) {
        int s = slots[p];
        if (s >= 0) {
            if (candidate.args[p] != t.values[static_cast<std::size_t>(s)]) return false;
        } else {
            auto& img = image[static_cast<std::size_t>(-s - 1)];
            if (img && *img != candidate.args[p]) return false;
            img = candidate.args[p];
        }
    }
    return true;
}

bool is_active(const Ruleset& rules, const Trigger& t, const Instance& instance) {
    Predicate p = rules[t.rule].head().pred;
    for (std::size_t idx : instance.with_predicate(p))
        if (stops(rules, instance[idx], t)) return false;
    return true;
}

std::vector<Trigger> enumerate_triggers(const Ruleset& rules, const Instance& instance) {
    std::vector<Trigger> out;
    for (std::size_t r = 0; r < rules.size(); ++r)
        match_body(rules[r], instance, [&](const std::vector<Term>& values) {
            out.push_back(Trigger{r, values});
            return true;
        });
    return out;
}

std::vector<Trigger> active_triggers(const Ruleset& rules, const Instance& instance) {
    std::vector<Trigger> out;
    for (Trigger& t : enumerate_triggers(rules, instance))
        if (is_active(rules, t, instance)) out.push_back(std::move(t));
    return out;
}

std::string status_name(ChaseStatus s) {
    return s == ChaseStatus::Saturated ? "saturated" : "budget-exhausted";
}

Instance Derivation::instance_at(std::size_t i) const {
    Instance out = database;
    for (std::size_t k = 0; k < i && k < steps.size(); ++k) out.insert(steps[k].produced);
    return out;
}

std::vector<Trigger> Derivation::triggers() const {
    std::vector<Trigger> out;
    for (const auto& s : steps) out.push_back(s.trigger);
    return out;
}

bool Derivation::operator==(const Derivation& other) const {
    return database == other.database && database.atoms() == other.database.atoms() && steps == other.steps &&
           status == other.status;
}

std::string Strategy::to_string() const {
    switch (kind) {
        case Kind::FairFifo: return "fair";
        case Kind::Lifo: return "lifo";
        case Kind::Random: return "random:" + std::to_string(seed);
        case Kind::Scripted: return "script";
    }
    return "?";
}

namespace {

// Finds the triggers on a growing instance, each exactly once.
class TriggerDiscovery {
public:
    TriggerDiscovery(const Ruleset& rules, const Instance& instance) : rules_(rules), instance_(instance) {}

    template <class F>
    void all(F&& emit) {
        for (std::size_t r = 0; r < rules_.size(); ++r)
            match_body(rules_[r], instance_, [&](const std::vector<Term>& values) {
                offer(Trigger{r, values}, emit);
                return true;
            });
    }

    // Triggers whose body image contains the atom at `index`.
    template <class F>
    void involving(std::size_t index, F&& emit) {
        Predicate p = instance_[index].pred;
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const auto& body = rules_[r].body();
            for (std::size_t k = 0; k < body.size(); ++k) {
                if (body[k].pred != p) continue;
                match_body(rules_[r], instance_, [&](const std::vector<Term>& values) {
                    offer(Trigger{r, values}, emit);
                    return true;
                }, BodyPin{k, index});
            }
        }
    }

private:
    template <class F>
    void offer(Trigger t, F& emit) {
        if (seen_.insert(t).second) emit(std::move(t));
    }

    const Ruleset& rules_;
    const Instance& instance_;
    std::unordered_set<Trigger, TriggerHash> seen_;
};

Derivation run_scripted(const Ruleset& rules, const Instance& database, const std::vector<Trigger>& script,
                        std::size_t max_steps) {
    Derivation d{database, {}, ChaseStatus::Saturated};
    Instance current = database;
    for (std::size_t i = 0; i < script.size() && d.steps.size() < max_steps; ++i) {
        const Trigger& t = script[i];
        if (!is_trigger_on(rules, t, current))
            throw ChaseError(i, "scripted " + trigger_to_string(rules, t) + " is not a trigger on the current instance");
        if (!is_active(rules, t, current))
            throw ChaseError(i, "scripted " + trigger_to_string(rules, t) + " is not active");
        Atom a = result_atom(rules, t);
        current.insert(a);
        d.steps.push_back({t, std::move(a)});
    }
    bool any_active = false;
    for (std::size_t r = 0; r < rules.size() && !any_active; ++r)
        match_body(rules[r], current, [&](const std::vector<Term>& values) {
            any_active = is_active(rules, Trigger{r, values}, current);
            return !any_active;
        });
    d.status = any_active ? ChaseStatus::BudgetExhausted : ChaseStatus::Saturated;
    return d;
}

}  // namespace

Derivation run_restricted(const Ruleset& rules, const Instance& database, const Strategy& strategy,
                          std::size_t max_steps) {
    rules.check_compatible(database);
    if (strategy.kind == Strategy::Kind::Scripted) return run_scripted(rules, database, strategy.script, max_steps);

    Derivation d{database, {}, ChaseStatus::Saturated};
    Instance current = database;
    TriggerDiscovery discovery(rules, current);
    std::deque<Trigger> pending;
    auto push = [&](Trigger t) { pending.push_back(std::move(t)); };
    discovery.all(push);
    std::mt19937_64 rng(strategy.seed);

    // Removes and returns the next candidate per strategy.
    auto take = [&]() {
        Trigger t;
        switch (strategy.kind) {
            case Strategy::Kind::Lifo:
                t = std::move(pending.back());
                pending.pop_back();
                break;
            case Strategy::Kind::Random: {
                std::size_t k = static_cast<std::size_t>(rng() % pending.size());
                std::swap(pending[k], pending.back());
                t = std::move(pending.back());
                pending.pop_back();
                break;
            }
            default:
                t = std::move(pending.front());
                pending.pop_front();
        }
        return t;
    };

    while (!pending.empty()) {
        Trigger t = take();
        // Activeness only shrinks as the instance grows, so dropping is final.
        if (!is_active(rules, t, current)) continue;
        if (d.steps.size() >= max_steps) {
            d.status = ChaseStatus::BudgetExhausted;
            return d;
        }
        Atom a = result_atom(rules, t);
        current.insert(a);
        d.steps.push_back({std::move(t), a});
        discovery.involving(current.size() - 1, push);
    }
    d.status = ChaseStatus::Saturated;
    return d;
}

ObliviousResult run_oblivious(const Ruleset& rules, const Instance& database, std::size_t max_steps,
                              std::optional<std::uint64_t> shuffle_seed) {
    rules.check_compatible(database);
    ObliviousResult res{database, 0, ChaseStatus::Saturated};
    TriggerDiscovery discovery(rules, res.instance);
    std::deque<Trigger> pending;
    auto push = [&](Trigger t) { pending.push_back(std::move(t)); };
    discovery.all(push);
    std::mt19937_64 rng(shuffle_seed.value_or(0));
    while (!pending.empty()) {
        if (res.steps >= max_steps) {
            res.status = ChaseStatus::BudgetExhausted;
            return res;
        }
        if (shuffle_seed) {
            std::size_t k = static_cast<std::size_t>(rng() % pending.size());
            std::swap(pending[k], pending.front());
        }
        Trigger t = std::move(pending.front());
        pending.pop_front();
        ++res.steps;
        if (res.instance.insert(result_atom(rules, t))) discovery.involving(res.instance.size() - 1, push);
    }
    return res;
}

}  // namespace rchase
