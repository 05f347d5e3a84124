#include "rchase/equality_type.hpp"

#include <algorithm>

#include "rchase/error.hpp"

namespace rchase {

std::size_t EqualityType::block_count() const {
    std::size_t n = 0;
    for (auto b : blocks) n = std::max<std::size_t>(n, b + 1u);
    return n;
}

std::vector<std::size_t> EqualityType::block_positions(std::size_t block) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i] == block) out.push_back(i);
    return out;
}

std::string EqualityType::to_string() const {
    std::string s(pred.name());
    s += '{';
    for (std::size_t b = 0; b < block_count(); ++b) {
        if (b) s += ',';
        s += '{';
        auto ps = block_positions(b);
        for (std::size_t k = 0; k < ps.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(ps[k] + 1);
        }
        s += '}';
    }
    return s + '}';
}

EqualityType equality_type(const Atom& atom) {
    EqualityType e{atom.pred, {}};
    std::vector<Term> seen;
    for (const Term& t : atom.args) {
        if (t.is_variable()) throw Error("equality type of " + atom.to_string() + ": variables are not allowed");
        auto it = std::find(seen.begin(), seen.end(), t);
        if (it == seen.end()) {
            e.blocks.push_back(static_cast<std::uint8_t>(seen.size()));
            seen.push_back(t);
        } else {
            e.blocks.push_back(static_cast<std::uint8_t>(it - seen.begin()));
        }
    }
    return e;
}

Atom canonical_atom(const EqualityType& e) {
    Atom a{e.pred, {}};
    for (auto b : e.blocks) a.args.push_back(Term::constant("*" + std::to_string(b + 1)));
    return a;
}

std::string TEqualityType::to_string() const {
    std::string s = base.to_string();
    s += '[';
    bool first = true;
    for (std::size_t b = 0; b < labels.size(); ++b) {
        if (labels[b] < 0) continue;
        if (!first) s += ',';
        first = false;
        s += std::to_string(b + 1) + "->" + std::to_string(labels[b]);
    }
    return s + ']';
}

TEqualityType t_equality_type(const Atom& atom, std::span<const Term> designated) {
    TEqualityType t{equality_type(atom), {}};
    t.labels.assign(t.base.block_count(), -1);
    for (std::size_t i = 0; i < atom.arity(); ++i) {
        auto it = std::find(designated.begin(), designated.end(), atom.args[i]);
        if (it != designated.end()) t.labels[t.base.blocks[i]] = static_cast<int>(it - designated.begin());
    }
    return t;
}

Atom canonical_atom(const TEqualityType& e, std::span<const Term> slots) {
    Atom a{e.base.pred, {}};
    for (auto b : e.base.blocks) {
        int l = b < e.labels.size() ? e.labels[b] : -1;
        a.args.push_back(l >= 0 ? slots[static_cast<std::size_t>(l)] : Term::constant("*" + std::to_string(b + 1)));
    }
    return a;
}

std::uint64_t bell_number(std::size_t n) {
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

void for_each_equality_type(Predicate pred, std::size_t arity, const std::function<bool(const EqualityType&)>& visit) {
    EqualityType e{pred, std::vector<std::uint8_t>(arity, 0)};
    if (arity == 0) {
        visit(e);
        return;
    }
    // Iterate restricted growth strings: blocks[i] <= 1 + max(blocks[0..i-1]).
    while (true) {
        if (!visit(e)) return;
        std::size_t i = arity;
        while (i-- > 1) {
            std::uint8_t prefix_max = *std::max_element(e.blocks.begin(), e.blocks.begin() + static_cast<long>(i));
            if (e.blocks[i] <= prefix_max) {
                ++e.blocks[i];
                std::fill(e.blocks.begin() + static_cast<long>(i) + 1, e.blocks.end(), 0);
                break;
            }
        }
        if (i == 0) return;
    }
}

std::vector<EqualityType> all_equality_types(Predicate pred, std::size_t arity) {
    if (arity > 8) throw UnsupportedError("refusing to materialize equality types for arity " + std::to_string(arity));
    std::vector<EqualityType> out;
    for_each_equality_type(pred, arity, [&](const EqualityType& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

}  // namespace rchase
