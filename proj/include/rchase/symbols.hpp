#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rchase {

// Process-wide string interner for predicate, constant, variable and rule names.
// Interned strings live for the lifetime of the process. Thread-safe.
std::uint32_t intern(std::string_view name);
std::string_view symbol_name(std::uint32_t id);

}  // namespace rchase
