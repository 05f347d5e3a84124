#include "rchase/term.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "rchase/symbols.hpp"

namespace rchase {

namespace {

struct KeyRef {
    std::uint32_t rule;
    std::uint32_t var;
    std::span<const Term> values;
    bool operator==(const KeyRef& o) const {
        return rule == o.rule && var == o.var && std::equal(values.begin(), values.end(), o.values.begin(), o.values.end());
    }
};

struct KeyRefHash {
    std::size_t operator()(const KeyRef& k) const {
        return hash_combine(hash_combine(k.rule, k.var), TermsHash{}(k.values));
    }
};

struct NullTable {
    std::shared_mutex mutex;
    std::deque<NullKey> keys;
    std::deque<std::size_t> depths;
    std::unordered_map<KeyRef, std::uint32_t, KeyRefHash> ids;
};

NullTable& nulls() {
    static NullTable t;
    return t;
}

}  // namespace


Term Term::constant(std::string_view name) { return Term(TermKind::Constant, intern(name)); }
Term Term::variable(std::string_view name) { return Term(TermKind::Variable, intern(name)); }

std::string_view Term::name() const { return is_null() ? std::string_view("?") : symbol_name(id_); }

std::string Term::to_string() const {
    if (is_null()) return "?" + std::to_string(id_);
    return std::string(symbol_name(id_));
}

Term make_null(std::uint32_t rule_symbol, std::uint32_t var_symbol, std::span<const Term> values) {
    NullTable& t = nulls();
    KeyRef probe{rule_symbol, var_symbol, values};
    {
        std::shared_lock lock(t.mutex);
        auto it = t.ids.find(probe);
        if (it != t.ids.end()) return Term(TermKind::Null, it->second);
    }
    std::size_t depth = 1;
    for (const Term& v : values)
        if (v.is_null()) depth = std::max(depth, null_depth(v) + 1);
    std::unique_lock lock(t.mutex);
    auto it = t.ids.find(probe);
    if (it != t.ids.end()) return Term(TermKind::Null, it->second);
    auto id = static_cast<std::uint32_t>(t.keys.size());
    t.keys.push_back(NullKey{rule_symbol, var_symbol, std::vector<Term>(values.begin(), values.end())});
    t.depths.push_back(depth);
    const NullKey& stored = t.keys.back();
    t.ids.emplace(KeyRef{stored.rule_symbol, stored.var_symbol, stored.values}, id);
    return Term(TermKind::Null, id);
}

const NullKey& null_key(Term null) {
    NullTable& t = nulls();
    std::shared_lock lock(t.mutex);
    return t.keys.at(null.id());
}

std::size_t null_depth(Term null) {
    NullTable& t = nulls();
    std::shared_lock lock(t.mutex);
    return t.depths.at(null.id());
}

Predicate Predicate::named(std::string_view name) { return Predicate{intern(name)}; }
std::string_view Predicate::name() const { return symbol_name(id); }

std::string Atom::to_string() const {
    std::string s(pred.name());
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += args[i].to_string();
    }
    s += ')';
    return s;
}

Atom make_atom(std::string_view pred, std::initializer_list<std::string_view> constants) {
    Atom a{Predicate::named(pred), {}};
    for (auto c : constants) a.args.push_back(Term::constant(c));
    return a;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }
std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << a.to_string(); }

}  // namespace rchase
