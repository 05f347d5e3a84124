#include "rchase/homomorphism.hpp"

#include <algorithm>

namespace rchase {

namespace {

// Pattern arguments are slots (>= 0) or fixed terms (-(k+1) into `fixed`).
struct Compiled {
    std::vector<Predicate> preds;
    std::vector<std::vector<int>> args;
    std::vector<Term> fixed;
    std::size_t slots = 0;
};

class Matcher {
public:
    Matcher(const Compiled& c, const Instance& target, std::optional<BodyPin> pin, const BodyMatchVisitor& visit)
        : c_(c), target_(target), pin_(pin), visit_(visit), values_(c.slots), bound_(c.slots, 0) {}

    void prebind(std::size_t slot, Term t) {
        values_[slot] = t;
        bound_[slot] = 1;
    }

    void run() { step(0); }

private:
    bool try_atom(std::size_t k, const Atom& cand) {
        const auto& args = c_.args[k];
        if (cand.pred != c_.preds[k] || cand.arity() != args.size()) return true;
        std::vector<std::size_t> newly;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
            int a = args[i];
            if (a < 0) {
                ok = c_.fixed[static_cast<std::size_t>(-a - 1)] == cand.args[i];
            } else if (bound_[a]) {
                ok = values_[a] == cand.args[i];
            } else {
                values_[a] = cand.args[i];
                bound_[a] = 1;
                newly.push_back(static_cast<std::size_t>(a));
            }
        }
        bool cont = true;
        if (ok) cont = step(k + 1);
        for (std::size_t s : newly) bound_[s] = 0;
        return cont;
    }

    bool step(std::size_t k) {
        if (k == c_.preds.size()) return visit_(values_);
        if (pin_ && pin_->body_atom == k) return try_atom(k, target_[pin_->target_atom]);
        for (std::size_t idx : target_.with_predicate(c_.preds[k]))
            if (!try_atom(k, target_[idx])) return false;
        return true;
    }

    const Compiled& c_;
    const Instance& target_;
    std::optional<BodyPin> pin_;
    const BodyMatchVisitor& visit_;
    std::vector<Term> values_;
    std::vector<char> bound_;
};

}  // namespace

void for_each_homomorphism(std::span<const Atom> pattern, const Instance& target, const HomomorphismVisitor& visit,
                           const Substitution& fixed) {
    Compiled c;
    std::vector<Term> vars;
    for (const Atom& a : pattern) {
        c.preds.push_back(a.pred);
        std::vector<int> args;
        for (const Term& t : a.args) {
            if (!t.is_variable()) {
                c.fixed.push_back(t);
                args.push_back(-static_cast<int>(c.fixed.size()));
                continue;
            }
            auto it = std::find(vars.begin(), vars.end(), t);
            if (it == vars.end()) {
                vars.push_back(t);
                it = vars.end() - 1;
            }
            args.push_back(static_cast<int>(it - vars.begin()));
        }
        c.args.push_back(std::move(args));
    }
    c.slots = vars.size();
    BodyMatchVisitor inner = [&](const std::vector<Term>& values) {
        Substitution h = fixed;
        for (std::size_t i = 0; i < vars.size(); ++i) h.bind(vars[i], values[i]);
        return visit(h);
    };
    Matcher m(c, target, std::nullopt, inner);
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (auto v = fixed.get(vars[i])) m.prebind(i, *v);
    m.run();
}

std::vector<Substitution> find_homomorphisms(std::span<const Atom> pattern, const Instance& target,
                                             const Substitution& fixed) {
    std::vector<Substitution> out;
    for_each_homomorphism(pattern, target, [&](const Substitution& h) {
        out.push_back(h);
        return true;
    }, fixed);
    return out;
}

bool has_homomorphism(std::span<const Atom> pattern, const Instance& target, const Substitution& fixed) {
    bool found = false;
    for_each_homomorphism(pattern, target, [&](const Substitution&) {
        found = true;
        return false;
    }, fixed);
    return found;
}

void match_body(const Tgd& rule, const Instance& target, const BodyMatchVisitor& visit, std::optional<BodyPin> pin,
                const std::vector<std::optional<Term>>& prebound) {
    Compiled c;
    for (const Atom& a : rule.body()) c.preds.push_back(a.pred);
    c.args = rule.body_slots();
    c.slots = rule.body_vars().size();
    Matcher m(c, target, pin, visit);
    for (std::size_t i = 0; i < prebound.size() && i < c.slots; ++i)
        if (prebound[i]) m.prebind(i, *prebound[i]);
    m.run();
}

}  // namespace rchase
