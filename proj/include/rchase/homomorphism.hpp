#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rchase/instance.hpp"
#include "rchase/tgd.hpp"

namespace rchase {

// Called once per homomorphism; return false to stop the enumeration.
using HomomorphismVisitor = std::function<bool(const Substitution&)>;

// Enumerates every homomorphism h from the pattern into target that extends
// `fixed`, each exactly once. Variables of the pattern are mapped; all other
// terms must match themselves. Order: backtracking over pattern atoms in order,
// trying target atoms in insertion order.
void for_each_homomorphism(std::span<const Atom> pattern, const Instance& target, const HomomorphismVisitor& visit,
                           const Substitution& fixed = {});

std::vector<Substitution> find_homomorphisms(std::span<const Atom> pattern, const Instance& target,
                                             const Substitution& fixed = {});

bool has_homomorphism(std::span<const Atom> pattern, const Instance& target, const Substitution& fixed = {});

// Called with the slot assignment of a body match, aligned with Tgd::body_vars().
using BodyMatchVisitor = std::function<bool(const std::vector<Term>&)>;

struct BodyPin {
    std::size_t body_atom;      // index into rule.body()
    std::size_t target_atom;    // index into the target instance
};

// Enumerates matches of rule.body() into target. With a pin, the given body
// atom is forced onto the given target atom. `prebound` (if non-empty) fixes
// some slots in advance.
void match_body(const Tgd& rule, const Instance& target, const BodyMatchVisitor& visit,
                std::optional<BodyPin> pin = std::nullopt,
                const std::vector<std::optional<Term>>& prebound = {});

}  // namespace rchase
