#include <algorithm>
#include <bit>

#include "rchase/sticky.hpp"
#include "sticky_internal.hpp"

namespace rchase {

std::string positions_to_string(PositionSet s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < 32; ++i) {
        if (!(s >> i & 1u)) continue;
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

std::string CatLetter::to_string(const Ruleset& rules) const {
    return "(" + rules[rule].name() + "," + std::to_string(body_atom) + "," + positions_to_string(pass_on) + ")";
}

std::vector<CatLetter> caterpillar_alphabet(const Ruleset& rules) {
    if (!check_sticky(rules).sticky) throw UnsupportedError("caterpillar alphabet needs a sticky ruleset");
    std::vector<CatLetter> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const Tgd& rule = rules[r];
        if (rule.head().arity() > 32) throw UnsupportedError("arity above 32 in rule " + rule.name());
        std::vector<PositionSet> ex_sets(rule.existentials().size(), 0);
        const auto& hs = rule.head_slots();
        for (std::size_t k = 0; k < hs.size(); ++k)
            if (hs[k] < 0) ex_sets[static_cast<std::size_t>(-hs[k] - 1)] |= PositionSet{1} << k;
        for (std::size_t b = 0; b < rule.body().size(); ++b) {
            out.push_back(CatLetter{r, b, 0});
            for (PositionSet p : ex_sets) out.push_back(CatLetter{r, b, p});
        }
    }
    return out;
}

namespace sticky_detail {

std::optional<AbstractStep> abstract_step(const Ruleset& rules, const EqualityType& e, const CatLetter& w) {
    const Tgd& rule = rules[w.rule];
    const Atom& gamma = rule.body()[w.body_atom];
    if (gamma.pred != e.pred || gamma.arity() != e.arity()) return std::nullopt;
    const auto& slots = rule.body_slots()[w.body_atom];
    std::vector<int> var_block(rule.body_vars().size(), -1);
    for (std::size_t p = 0; p < gamma.arity(); ++p) {
        int& vb = var_block[static_cast<std::size_t>(slots[p])];
        if (vb >= 0 && vb != e.blocks[p]) return std::nullopt;
        vb = e.blocks[p];
    }
    const auto& hs = rule.head_slots();
    AbstractStep s;
    s.head_source.resize(hs.size(), -1);
    s.frontier.resize(hs.size(), false);
    std::vector<int> symbol(hs.size());
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (hs[k] >= 0) {
            s.frontier[k] = true;
            int b = var_block[static_cast<std::size_t>(hs[k])];
            s.head_source[k] = b;
            symbol[k] = b >= 0 ? b : 1000 + hs[k];
        } else {
            symbol[k] = 2000 - hs[k];
        }
    }
    s.next.pred = rule.head().pred;
    std::vector<int> seen;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        auto it = std::find(seen.begin(), seen.end(), symbol[k]);
        if (it == seen.end()) {
            s.next.blocks.push_back(static_cast<std::uint8_t>(seen.size()));
            s.block_source.push_back(symbol[k] < 1000 ? symbol[k] : -1);
            seen.push_back(symbol[k]);
        } else {
            s.next.blocks.push_back(static_cast<std::uint8_t>(it - seen.begin()));
        }
    }
    return s;
}

PositionSet delta_pos(const Ruleset& rules, PositionSet pi, const CatLetter& w) {
    const Tgd& rule = rules[w.rule];
    const auto& slots = rule.body_slots()[w.body_atom];
    const auto& hs = rule.head_slots();
    PositionSet out = 0;
    for (std::size_t p = 0; p < slots.size(); ++p) {
        if (!(pi >> p & 1u)) continue;
        for (std::size_t k = 0; k < hs.size(); ++k)
            if (hs[k] == slots[p]) out |= PositionSet{1} << k;
    }
    return out;
}

TEqualityType fully_labelled(const EqualityType& e) {
    TEqualityType t{e, {}};
    for (std::size_t b = 0; b < e.block_count(); ++b) t.labels.push_back(static_cast<int>(b));
    return t;
}

bool abstract_stops(const TEqualityType& cand, const AbstractStep& s, const Ruleset& rules, const CatLetter& w) {
    if (cand.base.pred != s.next.pred || cand.base.arity() != s.next.arity()) return false;
    const auto& hs = rules[w.rule].head_slots();
    std::vector<int> image(rules[w.rule].existentials().size(), -1);
    for (std::size_t k = 0; k < hs.size(); ++k) {
        int cb = cand.base.blocks[k];
        if (hs[k] >= 0) {
            // A fresh leg term never occurs in an earlier body atom.
            if (s.head_source[k] < 0 || cand.labels[static_cast<std::size_t>(cb)] != s.head_source[k]) return false;
        } else {
            int& im = image[static_cast<std::size_t>(-hs[k] - 1)];
            if (im >= 0 && im != cb) return false;
            im = cb;
        }
    }
    return true;
}

TEqualityType relabel(const TEqualityType& t, const AbstractStep& s) {
    TEqualityType out = t;
    for (int& l : out.labels) {
        if (l < 0) continue;
        auto it = std::find(s.block_source.begin(), s.block_source.end(), l);
        l = it == s.block_source.end() ? -1 : static_cast<int>(it - s.block_source.begin());
    }
    return out;
}

std::optional<std::vector<TEqualityType>> qc_step(const Ruleset& rules, const EqualityType& e,
                                                  const std::vector<TEqualityType>& theta, const AbstractStep& s,
                                                  const CatLetter& w) {
    TEqualityType current = fully_labelled(e);
    if (abstract_stops(current, s, rules, w)) return std::nullopt;
    for (const TEqualityType& t : theta)
        if (abstract_stops(t, s, rules, w)) return std::nullopt;
    std::vector<TEqualityType> out;
    out.reserve(theta.size() + 1);
    out.push_back(relabel(current, s));
    for (const TEqualityType& t : theta) out.push_back(relabel(t, s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<CcState> cc_step(const Ruleset& rules, const std::vector<std::vector<bool>>& immortal, const CcState& q,
                               const CatLetter& w) {
    PositionSet d1 = delta_pos(rules, q.pi1, w);
    if (d1 == 0) return std::nullopt;
    PositionSet d2 = delta_pos(rules, q.pi2, w);
    PositionSet both = d1 | d2;
    for (std::size_t k = 0; k < immortal[w.rule].size(); ++k)
        if ((both >> k & 1u) && immortal[w.rule][k]) return std::nullopt;
    if (w.pass_on == 0) return CcState{d1, d2, false};
    return CcState{w.pass_on, both, true};
}

std::vector<std::vector<bool>> immortal_positions(const Ruleset& rules) {
    StickyReport sr = check_sticky(rules);
    std::vector<std::vector<bool>> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        std::vector<bool> row(rules[r].head().arity(), false);
        for (std::size_t k : immortal_head_positions(rules, r, sr.marked)) row[k] = true;
        out.push_back(std::move(row));
    }
    return out;
}

std::size_t hash_type(const EqualityType& e) {
    std::size_t h = e.pred.id;
    for (std::uint8_t b : e.blocks) h = hash_combine(h, b);
    return h;
}

std::size_t hash_theta(const std::vector<TEqualityType>& theta) {
    std::size_t h = theta.size();
    for (const TEqualityType& t : theta) {
        h = hash_combine(h, hash_type(t.base));
        for (int l : t.labels) h = hash_combine(h, static_cast<std::size_t>(l + 1));
    }
    return h;
}

}  // namespace sticky_detail

using namespace sticky_detail;

std::optional<EqualityType> delta_et(const Ruleset& rules, const EqualityType& e, const CatLetter& w) {
    auto s = abstract_step(rules, e, w);
    if (!s) return std::nullopt;
    return s->next;
}

std::vector<StartPair> start_pairs(const Ruleset& rules) {
    std::vector<StartPair> out;
    for (const SchemaEntry& se : rules.schema()) {
        if (se.arity > 32) throw UnsupportedError("arity above 32 for predicate " + std::string(se.pred.name()));
        for_each_equality_type(se.pred, se.arity, [&](const EqualityType& e) {
            for (std::size_t b = 0; b < e.block_count(); ++b) {
                PositionSet pi = 0;
                for (std::size_t p : e.block_positions(b)) pi |= PositionSet{1} << p;
                out.push_back(StartPair{e, pi});
            }
            return true;
        });
    }
    return out;
}

namespace {

struct TypeHash {
    std::size_t operator()(const EqualityType& e) const { return hash_type(e); }
};

struct QcState {
    EqualityType e;
    std::vector<TEqualityType> theta;
    bool operator==(const QcState&) const = default;
};

struct QcHash {
    std::size_t operator()(const QcState& s) const { return hash_combine(hash_type(s.e), hash_theta(s.theta)); }
};

struct CcHash {
    std::size_t operator()(const CcState& s) const {
        return hash_combine(hash_combine(s.pi1, s.pi2), s.top ? 1 : 0);
    }
};

struct ProductState {
    EqualityType e;
    std::vector<TEqualityType> theta;
    CcState cc;
    bool operator==(const ProductState&) const = default;
};

struct ProductHash {
    std::size_t operator()(const ProductState& s) const {
        return hash_combine(QcHash{}(QcState{s.e, s.theta}), CcHash{}(s.cc));
    }
};

}  // namespace

BuchiAutomaton build_apc(const Ruleset& rules, const EqualityType& e0, std::vector<EqualityType>* states) {
    auto alphabet = caterpillar_alphabet(rules);
    return explore_automaton<EqualityType, TypeHash>(
        e0, alphabet.size(),
        [&](const EqualityType& e, std::size_t l) { return delta_et(rules, e, alphabet[l]); },
        [](const EqualityType&) { return true; }, states);
}

BuchiAutomaton build_aqc(const Ruleset& rules, const EqualityType& e0) {
    auto alphabet = caterpillar_alphabet(rules);
    return explore_automaton<QcState, QcHash>(
        QcState{e0, {}}, alphabet.size(),
        [&](const QcState& q, std::size_t l) -> std::optional<QcState> {
            auto s = abstract_step(rules, q.e, alphabet[l]);
            if (!s) return std::nullopt;
            auto theta = qc_step(rules, q.e, q.theta, *s, alphabet[l]);
            if (!theta) return std::nullopt;
            return QcState{s->next, std::move(*theta)};
        },
        [](const QcState&) { return true; });
}

BuchiAutomaton build_acc(const Ruleset& rules, PositionSet pi0) {
    auto alphabet = caterpillar_alphabet(rules);
    auto immortal = immortal_positions(rules);
    return explore_automaton<CcState, CcHash>(
        CcState{pi0, 0, false}, alphabet.size(),
        [&](const CcState& q, std::size_t l) { return cc_step(rules, immortal, q, alphabet[l]); },
        [](const CcState& q) { return q.top; });
}

BuchiAutomaton build_caterpillar_automaton(const Ruleset& rules, const StartPair& start) {
    auto alphabet = caterpillar_alphabet(rules);
    auto immortal = immortal_positions(rules);
    return explore_automaton<ProductState, ProductHash>(
        ProductState{start.e0, {}, CcState{start.pi0, 0, false}}, alphabet.size(),
        [&](const ProductState& q, std::size_t l) -> std::optional<ProductState> {
            const CatLetter& w = alphabet[l];
            auto cc = cc_step(rules, immortal, q.cc, w);
            if (!cc) return std::nullopt;
            auto s = abstract_step(rules, q.e, w);
            if (!s) return std::nullopt;
            auto theta = qc_step(rules, q.e, q.theta, *s, w);
            if (!theta) return std::nullopt;
            return ProductState{s->next, std::move(*theta), *cc};
        },
        [](const ProductState& q) { return q.cc.top; });
}

CatLetter LassoWord::letter(std::size_t i) const {
    if (i < stem.size()) return stem[i];
    return cycle[(i - stem.size()) % cycle.size()];
}

std::string LassoWord::to_string(const Ruleset& rules) const {
    auto list = [&](const std::vector<CatLetter>& ls) {
        std::string s = "[";
        for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? " " : "") + ls[i].to_string(rules);
        return s + "]";
    };
    return "start: " + start.e0.to_string() + " " + positions_to_string(start.pi0) + " stem: " + list(stem) +
           " cycle: " + list(cycle);
}

}  // namespace rchase
