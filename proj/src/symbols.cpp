#include "rchase/symbols.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace rchase {

namespace {

struct SymbolTable {
    std::shared_mutex mutex;
    std::deque<std::string> names;
    std::unordered_map<std::string_view, std::uint32_t> ids;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

std::uint32_t intern(std::string_view name) {
    SymbolTable& t = table();
    {
        std::shared_lock lock(t.mutex);
        auto it = t.ids.find(name);
        if (it != t.ids.end()) return it->second;
    }
    std::unique_lock lock(t.mutex);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.emplace_back(name);
    t.ids.emplace(t.names.back(), id);
    return id;
}

std::string_view symbol_name(std::uint32_t id) {
    SymbolTable& t = table();
    std::shared_lock lock(t.mutex);
    return t.names.at(id);
}

}  // namespace rchase
