#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rchase/term.hpp"

namespace rchase {

// The equality pattern of an atom: a predicate plus a partition of its
// positions, stored as a restricted growth string (block ids in order of first
// appearance, starting at 0).
struct EqualityType {
    Predicate pred;
    std::vector<std::uint8_t> blocks;

    std::size_t arity() const { return blocks.size(); }
    std::size_t block_count() const;
    std::vector<std::size_t> block_positions(std::size_t block) const;
    // Renders as R{{1,2},{3}} with 1-based positions.
    std::string to_string() const;

    auto operator<=>(const EqualityType&) const = default;
};

EqualityType equality_type(const Atom& atom);

// R(*1,*1,*2): one placeholder constant per block.
Atom canonical_atom(const EqualityType& e);

// An equality type whose blocks may carry labels: labels[b] is an index into a
// caller-chosen list of designated terms, or -1. Labels are injective.
struct TEqualityType {
    EqualityType base;
    std::vector<int> labels;

    std::string to_string() const;
    auto operator<=>(const TEqualityType&) const = default;
};

// Labels each block whose term is designated[k] with k.
TEqualityType t_equality_type(const Atom& atom, std::span<const Term> designated);

// Labeled blocks use slots[label]; unlabeled blocks use placeholders.
Atom canonical_atom(const TEqualityType& e, std::span<const Term> slots);

std::uint64_t bell_number(std::size_t n);

// Lazily enumerates all equality types of a predicate in lexicographic order
// of their restricted growth strings. Stop by returning false.
void for_each_equality_type(Predicate pred, std::size_t arity, const std::function<bool(const EqualityType&)>& visit);

// Materialized enumeration; refuses arities above 8.
std::vector<EqualityType> all_equality_types(Predicate pred, std::size_t arity);

}  // namespace rchase
