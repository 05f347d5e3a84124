#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rchase {

enum class TermKind : std::uint8_t { Constant, Null, Variable };

// A constant, labelled null or variable. Constants and variables are interned
// names; nulls are interned trigger keys (see make_null).
class Term {
public:
    constexpr Term() = default;

    static Term constant(std::string_view name);
    static Term variable(std::string_view name);

    TermKind kind() const { return kind_; }
    std::uint32_t id() const { return id_; }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_null() const { return kind_ == TermKind::Null; }
    bool is_variable() const { return kind_ == TermKind::Variable; }

    // Constants and variables print as their name, nulls as ?<id>.
    std::string to_string() const;
    std::string_view name() const;

    auto operator<=>(const Term&) const = default;

private:
    friend Term make_null(std::uint32_t, std::uint32_t, std::span<const Term>);
    constexpr Term(TermKind k, std::uint32_t id) : kind_(k), id_(id) {}

    TermKind kind_ = TermKind::Constant;
    std::uint32_t id_ = 0;
};

// The null c(rule, values, var): one per trigger and existential variable.
// `values` is the trigger's assignment over all body variables in the rule's
// fixed variable order. Interned process-wide; thread-safe.
Term make_null(std::uint32_t rule_symbol, std::uint32_t var_symbol, std::span<const Term> values);

struct NullKey {
    std::uint32_t rule_symbol;
    std::uint32_t var_symbol;
    std::vector<Term> values;
};
const NullKey& null_key(Term null);

// Nesting depth: 1 + the maximal depth of nulls in the null's trigger.
std::size_t null_depth(Term null);

struct Predicate {
    std::uint32_t id = 0;

    static Predicate named(std::string_view name);
    std::string_view name() const;
    auto operator<=>(const Predicate&) const = default;
};

struct Atom {
    Predicate pred;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    std::string to_string() const;
    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

Atom make_atom(std::string_view pred, std::initializer_list<std::string_view> constants);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Atom& a);

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct TermHash {
    std::size_t operator()(const Term& t) const {
        return (static_cast<std::size_t>(t.id()) << 2) | static_cast<std::size_t>(t.kind());
    }
};

struct TermsHash {
    std::size_t operator()(std::span<const Term> ts) const {
        std::size_t h = ts.size();
        for (const Term& t : ts) h = hash_combine(h, TermHash{}(t));
        return h;
    }
    std::size_t operator()(const std::vector<Term>& ts) const { return (*this)(std::span<const Term>(ts)); }
};

struct AtomHash {
    std::size_t operator()(const Atom& a) const {
        return hash_combine(a.pred.id, TermsHash{}(a.args));
    }
};

}  // namespace rchase

template <>
struct std::hash<rchase::Term> : rchase::TermHash {};
template <>
struct std::hash<rchase::Atom> : rchase::AtomHash {};
