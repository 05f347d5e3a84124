#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rchase/term.hpp"

namespace rchase {

// A finite set of atoms that remembers insertion order.
class Instance {
public:
    Instance() = default;
    Instance(std::initializer_list<Atom> atoms);
    explicit Instance(std::span<const Atom> atoms);

    // Returns false if the atom was already present.
    bool insert(const Atom& atom);
    bool contains(const Atom& atom) const { return index_.count(atom) != 0; }
    std::optional<std::size_t> index_of(const Atom& atom) const;

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    auto begin() const { return atoms_.begin(); }
    auto end() const { return atoms_.end(); }

    // Indices of atoms with the given predicate, in insertion order.
    std::span<const std::size_t> with_predicate(Predicate p) const;

    // Terms in order of first occurrence.
    std::vector<Term> active_domain() const;

    std::string to_string() const;

    // Set equality; insertion order is ignored.
    bool operator==(const Instance& other) const;

private:
    std::vector<Atom> atoms_;
    std::unordered_map<Atom, std::size_t, AtomHash> index_;
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_pred_;
};

// A finite map from variables to terms, kept in binding order.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<Term, Term>> pairs);

    std::optional<Term> get(Term var) const;
    // Binds var to value. Returns false if var is already bound to another term.
    bool bind(Term var, Term value);

    Term apply(Term t) const;
    Atom apply(const Atom& a) const;

    std::size_t size() const { return pairs_.size(); }
    const std::vector<std::pair<Term, Term>>& pairs() const { return pairs_; }

    // Renders as {x=a,y=b}.
    std::string to_string() const;

    // Equality as maps.
    bool operator==(const Substitution& other) const;

private:
    std::vector<std::pair<Term, Term>> pairs_;
};

}  // namespace rchase
