#include "rchase/instance.hpp"

#include <algorithm>
#include <unordered_set>

namespace rchase {

Instance::Instance(std::initializer_list<Atom> atoms) {
    for (const Atom& a : atoms) insert(a);
}

Instance::Instance(std::span<const Atom> atoms) {
    for (const Atom& a : atoms) insert(a);
}

bool Instance::insert(const Atom& atom) {
    auto [it, fresh] = index_.emplace(atom, atoms_.size());
    if (!fresh) return false;
    by_pred_[atom.pred.id].push_back(atoms_.size());
    atoms_.push_back(atom);
    return true;
}

std::optional<std::size_t> Instance::index_of(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::size_t> Instance::with_predicate(Predicate p) const {
    auto it = by_pred_.find(p.id);
    if (it == by_pred_.end()) return {};
    return it->second;
}

std::vector<Term> Instance::active_domain() const {
    std::vector<Term> out;
    std::unordered_set<Term, TermHash> seen;
    for (const Atom& a : atoms_)
        for (const Term& t : a.args)
            if (seen.insert(t).second) out.push_back(t);
    return out;
}

std::string Instance::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += ", ";
        s += atoms_[i].to_string();
    }
    return s + "}";
}

bool Instance::operator==(const Instance& other) const {
    if (size() != other.size()) return false;
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return other.contains(a); });
}

Substitution::Substitution(std::initializer_list<std::pair<Term, Term>> pairs) {
    for (const auto& [v, t] : pairs) bind(v, t);
}

std::optional<Term> Substitution::get(Term var) const {
    for (const auto& [v, t] : pairs_)
        if (v == var) return t;
    return std::nullopt;
}

bool Substitution::bind(Term var, Term value) {
    if (auto cur = get(var)) return *cur == value;
    pairs_.emplace_back(var, value);
    return true;
}

Term Substitution::apply(Term t) const {
    if (!t.is_variable()) return t;
    if (auto v = get(t)) return *v;
    return t;
}

Atom Substitution::apply(const Atom& a) const {
    Atom out{a.pred, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    return out;
}

std::string Substitution::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) s += ',';
        s += pairs_[i].first.to_string() + "=" + pairs_[i].second.to_string();
    }
    return s + "}";
}

bool Substitution::operator==(const Substitution& other) const {
    if (size() != other.size()) return false;
    return std::all_of(pairs_.begin(), pairs_.end(), [&](const auto& p) { return other.get(p.first) == p.second; });
}

}  // namespace rchase
