#pragma once

#include <string>
#include <string_view>

#include "rchase/chase.hpp"
#include "rchase/error.hpp"
#include "rchase/tgd.hpp"

namespace rchase {

// Ruleset text: one rule per line, `name : A(x,y), B(y) -> H(y,z)`. The name is
// optional; unnamed rules are called r<k>, k the 1-based rule index. Identifiers match
// [A-Za-z_][A-Za-z0-9_]*, every argument is a variable, variables of the head
// that do not occur in the body are existential. `#` starts a comment.
// Throws ParseError.
Ruleset parse_ruleset(std::string_view text, const std::string& file = "");
std::string serialize_ruleset(const Ruleset& rules);

// Database text: one fact `R(a,b)` per line; arguments are constants matching
// [A-Za-z0-9_][A-Za-z0-9_@.]*. Throws ParseError.
Instance parse_database(std::string_view text, const std::string& file = "");
std::string serialize_database(const Instance& database);

// Parses a single fact, e.g. for command-line arguments.
Atom parse_fact(std::string_view text);

struct TraceHeader {
    std::string database_file;
    std::string ruleset_file;
    std::string strategy;
};

// Derivation trace text:
//   database: <file>
//   ruleset: <file>
//   strategy: <name>            (optional)
//   step <i>: rule=<name> h={x=a,...} new=<atom>
//   status: saturated|budget-exhausted
// Nulls are written ?0, ?1, ... in order of first appearance.
std::string serialize_derivation(const Derivation& d, const Ruleset& rules, const TraceHeader& header = {});

struct ParsedDerivation {
    Derivation derivation;
    TraceHeader header;
};

// Inverse of serialize_derivation. Each step is re-applied to recover the
// nulls; a `new=` atom that disagrees with the trigger's result is an error.
// The status trailer may be omitted when `require_status` is false.
ParsedDerivation parse_derivation(std::string_view text, const Ruleset& rules, const Instance& database,
                                  const std::string& file = "", bool require_status = true);

// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace rchase
