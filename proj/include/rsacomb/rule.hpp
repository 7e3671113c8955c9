#pragma once

// Rules over interned predicates.  Atom arguments are either ground term ids
// or rule-local variables; non-ground function terms in heads are expressed
// through a body builtin that binds the constructed term to a variable, so a
// stored rule never contains a structured non-ground term.

#include <cassert>
#include <cctype>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsacomb/terms.hpp"

namespace rsacomb {

struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& m) : std::runtime_error(m) {}
};
struct StratifyError : EngineError {
    std::vector<std::string> witness;  // predicate cycle through a negation
    StratifyError(const std::string& m, std::vector<std::string> w)
        : EngineError(m), witness(std::move(w)) {}
};
struct DepthError : EngineError {
    explicit DepthError(const std::string& m) : EngineError(m) {}
};

// Argument encoding: non-negative values are TermIds, negative values are
// variables (var k encodes as -(k+1)).
using Arg = int32_t;

inline Arg var_arg(int k) { return -(k + 1); }
inline Arg term_arg(TermId t) { return static_cast<Arg>(t); }
inline bool is_var(Arg a) { return a < 0; }
inline int var_of(Arg a) { return -a - 1; }
inline TermId term_of(Arg a) { return static_cast<TermId>(a); }

struct Atom {
    PredId pred = 0;
    std::vector<Arg> args;

    bool operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
};

// SKOLEM packs its inputs into a tuple key (and unpacks when the output is
// already bound); FN applies a function symbol to bound inputs.
struct Builtin {
    enum class Kind : uint8_t { Skolem, Fn };
    Kind kind = Kind::Skolem;
    SymId sym = 0;             // FN only
    std::vector<Arg> args;     // last argument is the output

    bool operator==(const Builtin& o) const {
        return kind == o.kind && sym == o.sym && args == o.args;
    }
};

struct Rule {
    std::vector<Atom> heads;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    std::vector<Builtin> builtins;
    int nvars = 0;

    bool is_fact() const {
        return pos.empty() && neg.empty() && builtins.empty();
    }
    bool operator==(const Rule& o) const {
        return heads == o.heads && pos == o.pos && neg == o.neg &&
               builtins == o.builtins && nvars == o.nvars;
    }
};

// Renumbers variables densely in order of first appearance (body first) and
// checks range restriction: after propagating boundness through builtins in
// both supported directions, every head and negated-atom variable is bound.
inline void finalize_rule(Rule& r, const PredPool& preds) {
    std::vector<int> remap;
    auto touch = [&](Arg& a) {
        if (!is_var(a)) return;
        int v = var_of(a);
        if (v >= static_cast<int>(remap.size())) remap.resize(v + 1, -1);
        if (remap[v] < 0) {
            remap[v] = 0;  // placeholder, numbered below
        }
    };
    // First appearance order: positive atoms, builtins, negated atoms, heads.
    int next = 0;
    auto number = [&](Arg& a) {
        if (!is_var(a)) return;
        int v = var_of(a);
        if (v >= static_cast<int>(remap.size())) remap.resize(v + 1, -1);
        if (remap[v] < 0) remap[v] = next++;
        a = var_arg(remap[v]);
    };
    (void)touch;
    for (auto& at : r.pos)
        for (auto& a : at.args) number(a);
    for (auto& b : r.builtins)
        for (auto& a : b.args) number(a);
    for (auto& at : r.neg)
        for (auto& a : at.args) number(a);
    for (auto& at : r.heads)
        for (auto& a : at.args) number(a);
    r.nvars = next;

    std::vector<bool> bound(r.nvars, false);
    for (const auto& at : r.pos)
        for (Arg a : at.args)
            if (is_var(a)) bound[var_of(a)] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& b : r.builtins) {
            if (b.args.empty()) continue;
            size_t n = b.args.size();
            bool ins_bound = true;
            for (size_t i = 0; i + 1 < n; ++i)
                if (is_var(b.args[i]) && !bound[var_of(b.args[i])]) ins_bound = false;
            bool out_bound = !is_var(b.args[n - 1]) || bound[var_of(b.args[n - 1])];
            if (ins_bound && !out_bound) {
                bound[var_of(b.args[n - 1])] = true;
                changed = true;
            }
            if (b.kind == Builtin::Kind::Skolem && out_bound) {
                for (size_t i = 0; i + 1 < n; ++i)
                    if (is_var(b.args[i]) && !bound[var_of(b.args[i])]) {
                        bound[var_of(b.args[i])] = true;
                        changed = true;
                    }
            }
        }
    }
    auto require_bound = [&](const Atom& at, const char* where) {
        for (Arg a : at.args)
            if (is_var(a) && !bound[var_of(a)])
                throw EngineError(std::string("unsafe rule: unbound variable in ") +
                                  where + " atom of predicate " + preds.text(at.pred));
    };
    for (const auto& at : r.neg) require_bound(at, "negated");
    for (const auto& at : r.heads) require_bound(at, "head");
    if (r.heads.empty()) throw EngineError("rule without head");
}

// ---------------------------------------------------------------------------
// Debug rule format: `h1(?x), h2(?x) :- p(?x, a), NOT q(?x), SKOLEM(?x, ?k) .`
// Facts omit `:-`.  Terms: ?var, bare constant, <iri>, integer (index term),
// name(args) function application.  Used by engine test fixtures; printing
// and parsing round-trip.
// ---------------------------------------------------------------------------

inline std::string debug_term(const TermPool& tp, TermId t) {
    if (tp.kind(t) == TermKind::Const) {
        const std::string& s = tp.const_text(t);
        for (char c : s)
            if (!(isalnum(static_cast<unsigned char>(c)) || c == '_'))
                return "<" + s + ">";
        return s;
    }
    return tp.text(t);
}

inline std::string debug_arg(const TermPool& tp, Arg a,
                             const std::vector<std::string>& var_names) {
    if (is_var(a)) return "?" + var_names[var_of(a)];
    return debug_term(tp, term_of(a));
}

inline std::string print_rule(const TermPool& tp, const PredPool& pp, const Rule& r) {
    std::vector<std::string> names(r.nvars);
    for (int i = 0; i < r.nvars; ++i) names[i] = "v" + std::to_string(i);
    auto atom = [&](const Atom& at) {
        std::string s = pp.text(at.pred);
        if (at.args.empty()) return s + "()";
        s += "(";
        for (size_t i = 0; i < at.args.size(); ++i) {
            if (i) s += ", ";
            s += debug_arg(tp, at.args[i], names);
        }
        return s + ")";
    };
    std::string out;
    for (size_t i = 0; i < r.heads.size(); ++i) {
        if (i) out += ", ";
        out += atom(r.heads[i]);
    }
    bool first = true;
    auto sep = [&]() -> std::string {
        if (first) {
            first = false;
            return " :- ";
        }
        return ", ";
    };
    for (const auto& at : r.pos) out += sep() + atom(at);
    for (const auto& b : r.builtins) {
        std::string s = b.kind == Builtin::Kind::Skolem
                            ? "SKOLEM("
                            : "FN(" + tp.sym_name(b.sym) + (b.args.empty() ? "" : ", ");
        for (size_t i = 0; i < b.args.size(); ++i) {
            if (i) s += ", ";
            s += debug_arg(tp, b.args[i], names);
        }
        out += sep() + s + ")";
    }
    for (const auto& at : r.neg) out += sep() + "NOT " + atom(at);
    return out + " .";
}

namespace detail {

struct RuleLexer {
    std::string s;
    size_t i = 0;

    void skip() {
        while (i < s.size()) {
            if (isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
            if (s[i] == '#') {
                while (i < s.size() && s[i] != '\n') ++i;
                continue;
            }
            break;
        }
    }
    bool eof() { skip(); return i >= s.size(); }
    char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
    bool eat(const std::string& tok) {
        skip();
        if (s.compare(i, tok.size(), tok) == 0) { i += tok.size(); return true; }
        return false;
    }
    std::string ident() {
        skip();
        size_t b = i;
        while (i < s.size() &&
               (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (b == i) throw EngineError("rule parse error near offset " + std::to_string(i));
        return s.substr(b, i - b);
    }
    std::string iri() {
        // positioned at '<'
        size_t e = s.find('>', i);
        if (e == std::string::npos) throw EngineError("unterminated <iri> in rule text");
        std::string out = s.substr(i + 1, e - i - 1);
        i = e + 1;
        return out;
    }
};

}  // namespace detail

// Parses the debug rule format; each statement becomes one Rule (facts have
// empty bodies).
inline std::vector<Rule> parse_rules(TermPool& tp, PredPool& pp, const std::string& text) {
    detail::RuleLexer lx{text, 0};
    std::vector<Rule> out;
    while (!lx.eof()) {
        Rule r;
        std::vector<std::string> vars;
        auto var_id = [&](const std::string& n) {
            for (size_t k = 0; k < vars.size(); ++k)
                if (vars[k] == n) return var_arg(static_cast<int>(k));
            vars.push_back(n);
            return var_arg(static_cast<int>(vars.size() - 1));
        };
        std::function<Arg()> term = [&]() -> Arg {
            if (lx.peek() == '?') {
                lx.eat("?");
                return var_id(lx.ident());
            }
            if (lx.peek() == '<') return term_arg(tp.const_term(lx.iri()));
            if (isdigit(static_cast<unsigned char>(lx.peek())) || lx.peek() == '-') {
                std::string d;
                if (lx.eat("-")) d = "-";
                d += lx.ident();
                return term_arg(tp.index_term(std::stoi(d)));
            }
            std::string name = lx.ident();
            if (lx.peek() == '(') {
                lx.eat("(");
                std::vector<TermId> args;
                if (lx.peek() != ')') {
                    while (true) {
                        Arg a = term();
                        if (is_var(a))
                            throw EngineError("variables inside function terms are only "
                                              "allowed via FN builtins");
                        args.push_back(term_of(a));
                        if (!lx.eat(",")) break;
                    }
                }
                if (!lx.eat(")")) throw EngineError("expected ) in function term");
                return term_arg(tp.fnapp(tp.sym_named(name), args));
            }
            return term_arg(tp.const_term(name));
        };
        auto parse_atom_into = [&](std::vector<Atom>& dst, const std::string& name) {
            Atom at;
            at.pred = pp.plain(name);
            if (lx.eat("(")) {
                if (lx.peek() != ')') {
                    while (true) {
                        at.args.push_back(term());
                        if (!lx.eat(",")) break;
                    }
                }
                if (!lx.eat(")")) throw EngineError("expected ) in atom");
            }
            dst.push_back(std::move(at));
        };
        auto parse_literal = [&](bool body) {
            if (body && lx.eat("NOT ")) {
                parse_atom_into(r.neg, lx.ident());
                return;
            }
            std::string name = lx.ident();
            if (body && (name == "SKOLEM" || name == "FN")) {
                Builtin b;
                if (name == "FN") {
                    b.kind = Builtin::Kind::Fn;
                    if (!lx.eat("(")) throw EngineError("expected ( after FN");
                    b.sym = tp.sym_named(lx.ident());
                    if (!lx.eat(",")) throw EngineError("FN needs a symbol and arguments");
                } else {
                    b.kind = Builtin::Kind::Skolem;
                    if (!lx.eat("(")) throw EngineError("expected ( after SKOLEM");
                }
                if (lx.peek() != ')') {
                    while (true) {
                        b.args.push_back(term());
                        if (!lx.eat(",")) break;
                    }
                }
                if (!lx.eat(")")) throw EngineError("expected ) in builtin");
                r.builtins.push_back(std::move(b));
                return;
            }
            parse_atom_into(body ? r.pos : r.heads, name);
        };
        parse_literal(false);
        while (lx.eat(",")) parse_literal(false);
        if (lx.eat(":-")) {
            parse_literal(true);
            while (lx.eat(",")) parse_literal(true);
        }
        if (!lx.eat(".")) throw EngineError("expected . at end of rule");
        r.nvars = static_cast<int>(vars.size());
        finalize_rule(r, pp);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace rsacomb
