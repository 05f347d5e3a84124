#include "rchase/tgd.hpp"

#include <algorithm>
#include <unordered_set>

#include "rchase/error.hpp"
#include "rchase/symbols.hpp"

namespace rchase {

namespace {

void check_atom(const std::string& rule, const Atom& a) {
    if (a.args.empty())
        throw RuleError("rule " + rule + ": atom " + a.to_string() + " has no arguments");
    for (const Term& t : a.args)
        if (!t.is_variable())
            throw RuleError("rule " + rule + ": constant " + t.to_string() + " in rule atom " + a.to_string());
}

}  // namespace

Tgd::Tgd(std::string name, std::vector<Atom> body, Atom head)
    : name_(std::move(name)), body_(std::move(body)), head_(std::move(head)) {
    if (body_.empty()) throw RuleError("rule " + name_ + ": empty body");
    name_symbol_ = intern(name_);
    for (const Atom& a : body_) check_atom(name_, a);
    check_atom(name_, head_);

    for (const Atom& a : body_)
        for (const Term& t : a.args)
            if (std::find(body_vars_.begin(), body_vars_.end(), t) == body_vars_.end()) body_vars_.push_back(t);
    for (const Term& v : body_vars_)
        if (std::find(head_.args.begin(), head_.args.end(), v) != head_.args.end()) frontier_.push_back(v);
    for (const Term& t : head_.args)
        if (slot_of(t) < 0 && std::find(existentials_.begin(), existentials_.end(), t) == existentials_.end())
            existentials_.push_back(t);

    for (const Atom& a : body_) {
        std::vector<int> slots;
        for (const Term& t : a.args) slots.push_back(slot_of(t));
        body_slots_.push_back(std::move(slots));
    }
    for (const Term& t : head_.args) {
        int s = slot_of(t);
        if (s >= 0) {
            head_slots_.push_back(s);
        } else {
            auto k = std::find(existentials_.begin(), existentials_.end(), t) - existentials_.begin();
            head_slots_.push_back(-static_cast<int>(k) - 1);
        }
    }
}

int Tgd::slot_of(Term var) const {
    auto it = std::find(body_vars_.begin(), body_vars_.end(), var);
    return it == body_vars_.end() ? -1 : static_cast<int>(it - body_vars_.begin());
}

bool Tgd::is_frontier(Term var) const {
    return std::find(frontier_.begin(), frontier_.end(), var) != frontier_.end();
}

bool Tgd::is_existential(Term var) const {
    return std::find(existentials_.begin(), existentials_.end(), var) != existentials_.end();
}

std::vector<std::size_t> Tgd::frontier_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < head_slots_.size(); ++i)
        if (head_slots_[i] >= 0) out.push_back(i);
    return out;
}

std::string Tgd::to_string() const {
    std::string s = name_ + " : ";
    for (std::size_t i = 0; i < body_.size(); ++i) {
        if (i) s += ", ";
        s += body_[i].to_string();
    }
    return s + " -> " + head_.to_string();
}

bool Tgd::operator==(const Tgd& other) const {
    return name_ == other.name_ && body_ == other.body_ && head_ == other.head_;
}

Ruleset::Ruleset(std::vector<Tgd> rules, std::vector<SchemaEntry> extra_schema) : rules_(std::move(rules)) {
    std::unordered_set<std::string> names;
    for (const Tgd& r : rules_) {
        if (!names.insert(r.name()).second) throw RuleError("duplicate rule name " + r.name());
        for (const Atom& a : r.body()) add_schema(a.pred, a.arity());
        add_schema(r.head().pred, r.head().arity());
    }
    for (const SchemaEntry& e : extra_schema) add_schema(e.pred, e.arity);
}

void Ruleset::add_schema(Predicate p, std::size_t arity) {
    auto [it, fresh] = arity_.emplace(p.id, arity);
    if (!fresh) {
        if (it->second != arity)
            throw RuleError("predicate " + std::string(p.name()) + " used with arities " +
                            std::to_string(it->second) + " and " + std::to_string(arity));
        return;
    }
    schema_.push_back({p, arity});
    max_arity_ = std::max(max_arity_, arity);
}

std::optional<std::size_t> Ruleset::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].name() == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> Ruleset::arity(Predicate p) const {
    auto it = arity_.find(p.id);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
}

std::size_t Ruleset::max_rule_variables() const {
    std::size_t m = 0;
    for (const Tgd& r : rules_) m = std::max(m, r.variable_count());
    return m;
}

void Ruleset::check_compatible(const Instance& instance) const {
    for (const Atom& a : instance) {
        auto ar = arity(a.pred);
        if (ar && *ar != a.arity())
            throw RuleError("atom " + a.to_string() + " has arity " + std::to_string(a.arity()) + " but predicate " +
                            std::string(a.pred.name()) + " has arity " + std::to_string(*ar));
    }
}

std::string Ruleset::to_string() const {
    std::string s;
    for (const Tgd& r : rules_) s += r.to_string() + "\n";
    return s;
}

}  // namespace rchase
