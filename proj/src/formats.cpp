#include "rchase/formats.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rchase {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool constant_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool constant_char(char c) { return ident_char(c) || c == '@' || c == '.'; }

// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

// Character cursor over one line, with comment stripping.
class Cursor {
public:
    Cursor(std::string_view line, std::string file, std::size_t line_no)
        : line_(line.substr(0, line.find('#'))), file_(std::move(file)), line_no_(line_no) {}

    void skip_ws() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= line_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < line_.size() ? line_[pos_] : '\0';
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (line_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok, const char* what) {
        if (!accept(tok)) fail(std::string("expected ") + what);
    }
    std::string_view take_while(bool (*first)(char), bool (*rest)(char)) {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < line_.size() && first(line_[pos_])) {
            ++pos_;
            while (pos_ < line_.size() && rest(line_[pos_])) ++pos_;
        }
        return line_.substr(start, pos_ - start);
    }
    std::string_view take_ident() { return take_while(ident_start, ident_char); }
    // A maximal run of non-delimiter characters, for error reporting.
    std::string_view take_token() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
               std::string_view(",()").find(line_[pos_]) == std::string_view::npos)
            ++pos_;
        return line_.substr(start, pos_ - start);
    }
    std::string_view rest() {
        skip_ws();
        return line_.substr(pos_);
    }
    void advance(std::size_t n) { pos_ += n; }
    std::size_t column() {
        skip_ws();
        return pos_ + 1;
    }
    SourceSpan span_at(std::size_t column) const { return SourceSpan{file_, line_no_, column}; }
    [[noreturn]] void fail(const std::string& msg) { fail_at(column(), msg); }
    [[noreturn]] void fail_at(std::size_t column, const std::string& msg) { throw ParseError(span_at(column), msg); }

private:
    std::string_view line_;
    std::string file_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

struct ParsedAtom {
    Atom atom;
    std::size_t column;
};

enum class ArgMode { Variables, Constants, TraceTerms };

// Parses `P(t1,...,tn)`. Trace terms may be ?<k>, returned as variables named ?<k>.
ParsedAtom parse_atom(Cursor& c, ArgMode mode) {
    std::size_t col = c.column();
    std::string_view pred = c.take_ident();
    if (pred.empty()) c.fail("expected predicate name");
    c.expect("(", "'('");
    Atom a{Predicate::named(pred), {}};
    if (c.peek() == ')') c.fail("atom " + std::string(pred) + " has no arguments");
    while (true) {
        std::size_t acol = c.column();
        if (mode == ArgMode::Variables) {
            std::string_view v = c.take_ident();
            if (v.empty()) {
                std::string_view tok = c.take_token();
                if (tok.empty()) c.fail_at(acol, "expected variable");
                c.fail_at(acol, "constant " + std::string(tok) + " in rule; rule arguments must be variables");
            }
            a.args.push_back(Term::variable(v));
        } else {
            if (mode == ArgMode::TraceTerms && c.accept("?")) {
                std::string_view digits = c.take_while(
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; },
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
                if (digits.empty()) c.fail_at(acol, "expected null number after '?'");
                a.args.push_back(Term::variable("?" + std::string(digits)));
            } else {
                std::string_view k = c.take_while(constant_start, constant_char);
                if (k.empty()) c.fail_at(acol, "expected constant");
                a.args.push_back(Term::constant(k));
            }
        }
        if (c.accept(")")) break;
        c.expect(",", "',' or ')'");
    }
    return {std::move(a), col};
}

struct SchemaCheck {
    std::unordered_map<std::uint32_t, std::size_t> arity;

    void check(Cursor& c, const ParsedAtom& pa) {
        auto [it, fresh] = arity.emplace(pa.atom.pred.id, pa.atom.arity());
        if (!fresh && it->second != pa.atom.arity())
            c.fail_at(pa.column, "predicate " + std::string(pa.atom.pred.name()) + " used with arity " +
                                     std::to_string(pa.atom.arity()) + ", earlier with arity " +
                                     std::to_string(it->second));
    }
};

}  // namespace

Ruleset parse_ruleset(std::string_view text, const std::string& file) {
    struct Pending {
        std::string name;
        std::vector<Atom> body;
        Atom head;
    };
    std::vector<Pending> parsed;
    std::set<std::string> names;
    SchemaCheck schema;
    auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor c(lines[ln], file, ln + 1);
        if (c.at_end()) continue;
        Pending rule;
        // A leading `name :` is a rule name; otherwise the line starts with an atom.
        {
            Cursor probe = c;
            std::string_view id = probe.take_ident();
            if (!id.empty() && probe.accept(":")) {
                std::size_t col = c.column();
                c = probe;
                rule.name = std::string(id);
                if (!names.insert(rule.name).second) c.fail_at(col, "duplicate rule name " + rule.name);
            }
        }
        while (true) {
            ParsedAtom pa = parse_atom(c, ArgMode::Variables);
            schema.check(c, pa);
            rule.body.push_back(std::move(pa.atom));
            if (c.accept("->")) break;
            if (c.at_end()) c.fail("expected '->'");
            c.expect(",", "',' or '->'");
        }
        ParsedAtom head = parse_atom(c, ArgMode::Variables);
        schema.check(c, head);
        rule.head = std::move(head.atom);
        if (c.peek() == ',') c.fail("multi-head rule; only a single head atom is supported");
        if (!c.at_end()) c.fail("unexpected trailing input '" + std::string(c.rest()) + "'");
        parsed.push_back(std::move(rule));
    }
    std::vector<Tgd> rules;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        Pending& p = parsed[i];
        if (p.name.empty()) {
            std::string candidate = "r" + std::to_string(i + 1);
            while (names.count(candidate)) candidate += "_";
            names.insert(candidate);
            p.name = candidate;
        }
        rules.emplace_back(p.name, std::move(p.body), std::move(p.head));
    }
    return Ruleset(std::move(rules));
}

std::string serialize_ruleset(const Ruleset& rules) { return rules.to_string(); }

Instance parse_database(std::string_view text, const std::string& file) {
    Instance out;
    SchemaCheck schema;
    auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor c(lines[ln], file, ln + 1);
        if (c.at_end()) continue;
        ParsedAtom pa = parse_atom(c, ArgMode::Constants);
        schema.check(c, pa);
        if (!c.at_end()) c.fail("expected one fact per line");
        out.insert(pa.atom);
    }
    return out;
}

std::string serialize_database(const Instance& database) {
    std::string s;
    for (const Atom& a : database) s += a.to_string() + "\n";
    return s;
}

Atom parse_fact(std::string_view text) {
    Cursor c(text, "<argument>", 1);
    ParsedAtom pa = parse_atom(c, ArgMode::Constants);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return pa.atom;
}

namespace {

// Renames nulls to ?0, ?1, ... in order of first appearance.
class NullNames {
public:
    std::string term(const Term& t) {
        if (!t.is_null()) return t.to_string();
        auto [it, fresh] = names_.emplace(t.id(), names_.size());
        return "?" + std::to_string(it->second);
    }
    std::string atom(const Atom& a) {
        std::string s(a.pred.name());
        s += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) s += ',';
            s += term(a.args[i]);
        }
        return s + ')';
    }

private:
    std::unordered_map<std::uint32_t, std::size_t> names_;
};

}  // namespace

std::string serialize_derivation(const Derivation& d, const Ruleset& rules, const TraceHeader& header) {
    std::ostringstream os;
    os << "# restricted chase derivation\n";
    os << "database: " << header.database_file << "\n";
    os << "ruleset: " << header.ruleset_file << "\n";
    if (!header.strategy.empty()) os << "strategy: " << header.strategy << "\n";
    NullNames names;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& s = d.steps[i];
        const Tgd& r = rules[s.trigger.rule];
        os << "step " << i << ": rule=" << r.name() << " h={";
        for (std::size_t k = 0; k < r.body_vars().size(); ++k) {
            if (k) os << ',';
            os << r.body_vars()[k].to_string() << '=' << names.term(s.trigger.values[k]);
        }
        os << "} new=" << names.atom(s.produced) << "\n";
    }
    os << "status: " << status_name(d.status) << "\n";
    return os.str();
}

ParsedDerivation parse_derivation(std::string_view text, const Ruleset& rules, const Instance& database,
                                  const std::string& file, bool require_status) {
    ParsedDerivation out;
    out.derivation.database = database;
    Instance current = database;
    std::unordered_map<std::string, Term> nulls;
    bool have_status = false;
    auto lines = split_lines(text);

    auto resolve = [&](Cursor& c, std::size_t col, const Term& t) -> Term {
        if (!t.is_variable()) return t;
        auto it = nulls.find(std::string(t.name()));
        if (it == nulls.end()) c.fail_at(col, "null " + std::string(t.name()) + " used before it was created");
        return it->second;
    };

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor c(lines[ln], file, ln + 1);
        if (c.at_end()) continue;
        if (have_status) c.fail("content after status trailer");
        if (c.accept("database:")) {
            out.header.database_file = std::string(c.rest());
            continue;
        }
        if (c.accept("ruleset:")) {
            out.header.ruleset_file = std::string(c.rest());
            continue;
        }
        if (c.accept("strategy:")) {
            out.header.strategy = std::string(c.rest());
            continue;
        }
        if (c.accept("status:")) {
            std::string_view st = c.rest();
            if (st == "saturated") out.derivation.status = ChaseStatus::Saturated;
            else if (st == "budget-exhausted") out.derivation.status = ChaseStatus::BudgetExhausted;
            else c.fail("unknown status '" + std::string(st) + "'");
            have_status = true;
            continue;
        }
        if (!c.accept("step")) c.fail("expected a header line, a step line or a status trailer");
        std::size_t idx_col = c.column();
        std::string_view idx = c.take_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; },
                                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
        std::size_t step_no = out.derivation.steps.size();
        if (idx.empty() || std::stoull(std::string(idx)) != step_no)
            c.fail_at(idx_col, "expected step number " + std::to_string(step_no));
        c.expect(":", "':'");
        c.expect("rule=", "'rule='");
        std::size_t rule_col = c.column();
        std::string_view rname = c.take_ident();
        auto ri = rules.index_of(rname);
        if (!ri) c.fail_at(rule_col, "unknown rule '" + std::string(rname) + "'");
        const Tgd& rule = rules[*ri];

        c.expect("h={", "'h={'");
        Substitution h;
        if (!c.accept("}")) {
            while (true) {
                std::size_t vcol = c.column();
                std::string_view var = c.take_ident();
                if (var.empty()) c.fail("expected variable name");
                c.expect("=", "'='");
                std::size_t tcol = c.column();
                Term value;
                if (c.accept("?")) {
                    std::string_view digits = c.take_while(
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; },
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
                    value = resolve(c, tcol, Term::variable("?" + std::string(digits)));
                } else {
                    std::string_view k = c.take_while(constant_start, constant_char);
                    if (k.empty()) c.fail_at(tcol, "expected term");
                    value = Term::constant(k);
                }
                Term v = Term::variable(var);
                if (rule.slot_of(v) < 0)
                    c.fail_at(vcol, "'" + std::string(var) + "' is not a body variable of rule " + rule.name());
                if (!h.bind(v, value)) c.fail_at(vcol, "variable '" + std::string(var) + "' bound twice");
                if (c.accept("}")) break;
                c.expect(",", "',' or '}'");
            }
        }
        if (h.size() != rule.body_vars().size()) c.fail("h does not bind every body variable of rule " + rule.name());
        Trigger t = make_trigger(rules, *ri, h);

        c.expect("new=", "'new='");
        std::size_t new_col = c.column();
        ParsedAtom written = parse_atom(c, ArgMode::TraceTerms);
        if (!c.at_end()) c.fail("unexpected trailing input");
        Atom produced = result_atom(rules, t);
        bool ok = written.atom.pred == produced.pred && written.atom.arity() == produced.arity();
        for (std::size_t i = 0; ok && i < produced.arity(); ++i) {
            const Term& w = written.atom.args[i];
            if (!w.is_variable()) {
                ok = w == produced.args[i];
                continue;
            }
            auto [it, fresh] = nulls.emplace(std::string(w.name()), produced.args[i]);
            ok = produced.args[i].is_null() && it->second == produced.args[i];
        }
        if (!ok) c.fail_at(new_col, "new atom does not match the result of the trigger, expected " + produced.to_string());
        current.insert(produced);
        out.derivation.steps.push_back({std::move(t), std::move(produced)});
    }
    if (require_status && !have_status)
        throw ParseError(SourceSpan{file, lines.size(), 1}, "missing status trailer");
    if (!have_status) out.derivation.status = ChaseStatus::BudgetExhausted;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace rchase
