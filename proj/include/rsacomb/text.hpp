#pragma once

// Text formats: the line-oriented ontology format (.nha), the SPARQL-like
// query format (.cq) and answer emission.  Parsers are total: they collect
// positioned errors and keep going, never throwing on malformed input.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsacomb/axioms.hpp"

namespace rsacomb {

struct SourceSpan {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
    std::string file;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected;  // token classes, when the error is an expectation

    std::string render() const {
        std::string where = span.file.empty() ? "" : span.file + ":";
        return where + std::to_string(span.line) + ":" + std::to_string(span.col) +
               ": " + message;
    }
};

namespace detail {
// Expectation messages follow one shape so the expected-token list can be
// recovered from them.
inline ParseError mk_error(SourceSpan span, const std::string& message) {
    ParseError e;
    e.span = std::move(span);
    e.message = message;
    if (message.rfind("expected ", 0) == 0) {
        std::string rest = message.substr(9);
        size_t cut = rest.find(" at ");
        if (cut == std::string::npos) cut = rest.find(" in ");
        if (cut == std::string::npos) cut = rest.find(", got");
        if (cut != std::string::npos) rest = rest.substr(0, cut);
        size_t start = 0;
        while (start <= rest.size()) {
            size_t sep = rest.find(" or ", start);
            std::string part =
                sep == std::string::npos ? rest.substr(start) : rest.substr(start, sep - start);
            if (!part.empty()) e.expected.push_back(part);
            if (sep == std::string::npos) break;
            start = sep + 4;
        }
    }
    return e;
}
inline ParseError mk_error(int line, int col, const std::string& message) {
    SourceSpan sp;
    sp.line = line;
    sp.col = col;
    return mk_error(sp, message);
}
}  // namespace detail

struct OntologyParse {
    Ontology ontology;
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

struct QueryParse {
    ConjunctiveQuery query;
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

namespace detail {

struct Tok {
    std::string s;
    int col = 0;  // 1-based
};

inline bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           c == '%' || c == '~' || c == '\'';
}

// Shared tokenizer for both formats.  Words may contain ':' (CURIEs) and an
// interior '.' or '-' when followed by another word character; a trailing '-'
// marks an inverse role; '<...>' is one token (plus a trailing '-' when
// present); '.' elsewhere is a separator token.
inline bool tokenize_line(const std::string& line, int lineno,
                          std::vector<Tok>& out, std::vector<ParseError>& errors) {
    size_t i = 0;
    const size_t n = line.size();
    while (i < n) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '#') break;  // comment to end of line
        int col = static_cast<int>(i) + 1;
        if (c == '<') {
            size_t e = line.find('>', i);
            if (e == std::string::npos) {
                errors.push_back(detail::mk_error(lineno, col, "unterminated <IRI>"));
                return false;
            }
            std::string t = line.substr(i, e - i + 1);
            i = e + 1;
            if (i < n && line[i] == '-' && (i + 1 >= n || line[i + 1] != '>')) {
                t += '-';
                ++i;
            }
            out.push_back({t, col});
            continue;
        }
        if (c == '(' || c == ')' || c == ',' || c == '&' || c == '|' || c == '{' ||
            c == '}') {
            out.push_back({std::string(1, c), col});
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < n && line[i + 1] == '>') {
            out.push_back({"->", col});
            i += 2;
            continue;
        }
        if (c == '?') {
            size_t b = ++i;
            while (i < n && word_char(line[i])) ++i;
            out.push_back({"?" + line.substr(b, i - b), col});
            continue;
        }
        if (word_char(c) || c == '-' || c == '@') {
            size_t b = i;
            while (i < n) {
                char d = line[i];
                if (word_char(d) || d == '@') { ++i; continue; }
                if ((d == '.' || d == '-') && i + 1 < n &&
                    (word_char(line[i + 1]) ||
                     (d == '-' && !(line[i + 1] == '>')))) {
                    // interior '.' / '-'; a '-' also sticks as a suffix unless
                    // it starts an arrow
                    ++i;
                    continue;
                }
                if (d == '-' && (i + 1 >= n || line[i + 1] != '>')) { ++i; continue; }
                break;
            }
            out.push_back({line.substr(b, i - b), col});
            continue;
        }
        if (c == '.') {
            out.push_back({".", col});
            ++i;
            continue;
        }
        errors.push_back(detail::mk_error(lineno, col, std::string("unexpected character '") + c + "'"));
        return false;
    }
    return true;
}

struct PrefixMap {
    std::map<std::string, std::string> map;

    bool declare(const std::string& name, const std::string& iri) {
        return map.emplace(name, iri).second;
    }
    // Expands a CURIE/IRI/keyword token to an absolute name; empty return
    // means failure (message in *err).
    std::string resolve(const Tok& t, bool allow_reserved, std::string* err) const {
        const std::string& s = t.s;
        if (s.size() >= 2 && s.front() == '<' && s.back() == '>')
            return s.substr(1, s.size() - 2);
        if (s == kTop || s == kBottom) {
            if (allow_reserved) return s;
            *err = "reserved name " + s + " is not allowed here";
            return "";
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) {
            *err = "expected a CURIE or <IRI>, got '" + s + "'";
            return "";
        }
        std::string prefix = s.substr(0, colon);
        auto it = map.find(prefix);
        if (it == map.end()) {
            *err = "unknown prefix '" + prefix + ":'";
            return "";
        }
        return it->second + s.substr(colon + 1);
    }
};

}  // namespace detail

inline OntologyParse parse_ontology_impl(const std::string& text) {
    OntologyParse out;
    detail::PrefixMap prefixes;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                     : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        std::vector<detail::Tok> toks;
        if (!detail::tokenize_line(line, lineno, toks, out.errors)) continue;
        if (toks.empty()) continue;

        size_t ti = 0;
        auto err = [&](const std::string& m) {
            int col = ti < toks.size() ? toks[ti].col : static_cast<int>(line.size()) + 1;
            out.errors.push_back(detail::mk_error(lineno, col, m));
        };
        auto have = [&]() { return ti < toks.size(); };
        auto peek = [&]() -> const std::string& {
            static const std::string empty;
            return have() ? toks[ti].s : empty;
        };
        auto eat = [&](const std::string& s) {
            if (have() && toks[ti].s == s) {
                ++ti;
                return true;
            }
            return false;
        };
        auto next = [&]() -> detail::Tok {
            return toks[ti++];
        };
        auto finish = [&](const Axiom& x) {
            if (!eat(".")) {
                err("expected '.' at end of statement");
                return;
            }
            if (have()) {
                err("unexpected tokens after '.'");
                return;
            }
            out.ontology.add(x);
        };
        auto concept_name = [&](bool* ok) -> std::string {
            if (!have()) {
                err("expected a concept");
                *ok = false;
                return "";
            }
            std::string msg;
            detail::Tok t = next();
            std::string c = prefixes.resolve(t, true, &msg);
            if (c.empty()) {
                --ti;
                err(msg);
                *ok = false;
                return "";
            }
            *ok = true;
            return c;
        };
        auto individual = [&](bool* ok) -> std::string {
            if (!have()) {
                err("expected an individual");
                *ok = false;
                return "";
            }
            std::string msg;
            detail::Tok t = next();
            std::string c = prefixes.resolve(t, false, &msg);
            if (c.empty()) {
                --ti;
                err(msg);
                *ok = false;
                return "";
            }
            *ok = true;
            return c;
        };
        auto role = [&](bool* ok) -> RoleExpr {
            if (!have()) {
                err("expected a role");
                *ok = false;
                return {};
            }
            detail::Tok t = next();
            bool inv = false;
            if (t.s.size() > 1 && t.s.back() == '-') {
                inv = true;
                t.s.pop_back();
            }
            std::string msg;
            std::string name = prefixes.resolve(t, false, &msg);
            if (name.empty()) {
                --ti;
                err(msg);
                *ok = false;
                return {};
            }
            *ok = true;
            return RoleExpr{name, inv};
        };

        const std::string kw = next().s;
        bool ok = true;
        if (kw == "@prefix") {
            if (!have()) { err("expected prefix name"); continue; }
            detail::Tok nameTok = next();
            if (nameTok.s.empty() || nameTok.s.back() != ':') {
                --ti;
                err("prefix name must end with ':'");
                continue;
            }
            std::string name = nameTok.s.substr(0, nameTok.s.size() - 1);
            if (!have() || peek().front() != '<') { err("expected <IRI>"); continue; }
            std::string iri = next().s;
            iri = iri.substr(1, iri.size() - 2);
            if (!eat(".")) { err("expected '.' at end of statement"); continue; }
            if (have()) { err("unexpected tokens after '.'"); continue; }
            if (!prefixes.declare(name, iri))
                out.errors.push_back(detail::mk_error(
                    lineno, nameTok.col, "duplicate prefix declaration '" + name + ":'"));
        } else if (kw == "sub-role") {
            RoleExpr r1 = role(&ok);
            if (!ok) continue;
            RoleExpr r2 = role(&ok);
            if (!ok) continue;
            finish(Axiom::sub_role(r1, r2));
        } else if (kw == "sub-class") {
            std::vector<std::string> lhs;
            lhs.push_back(concept_name(&ok));
            if (!ok) continue;
            while (eat("&")) {
                lhs.push_back(concept_name(&ok));
                if (!ok) break;
            }
            if (!ok) continue;
            if (!eat("->")) { err("expected '->'"); continue; }
            std::string first = concept_name(&ok);
            if (!ok) continue;
            if (peek() == "|") {
                if (lhs.size() != 1) {
                    err("a union right-hand side requires a single left-hand concept");
                    continue;
                }
                std::vector<std::string> disjuncts{first};
                while (eat("|")) {
                    disjuncts.push_back(concept_name(&ok));
                    if (!ok) break;
                }
                if (!ok) continue;
                finish(Axiom::union_of(lhs[0], std::move(disjuncts)));
            } else {
                finish(Axiom::sub_class(std::move(lhs), first));
            }
        } else if (kw == "nominal") {
            std::string c = concept_name(&ok);
            if (!ok) continue;
            if (!eat("->")) { err("expected '->'"); continue; }
            std::string ind = individual(&ok);
            if (!ok) continue;
            finish(Axiom::nominal(c, ind));
        } else if (kw == "some") {
            RoleExpr r = role(&ok);
            if (!ok) continue;
            std::string filler = concept_name(&ok);
            if (!ok) continue;
            if (!eat("->")) { err("expected '->'"); continue; }
            std::string rhs = concept_name(&ok);
            if (!ok) continue;
            finish(Axiom::some_values(r, filler, rhs));
        } else if (kw == "max1") {
            std::string a = concept_name(&ok);
            if (!ok) continue;
            RoleExpr r = role(&ok);
            if (!ok) continue;
            std::string b = concept_name(&ok);
            if (!ok) continue;
            finish(Axiom::max_one(a, r, b));
        } else if (kw == "exists") {
            std::string a = concept_name(&ok);
            if (!ok) continue;
            if (!eat("->")) { err("expected '->'"); continue; }
            RoleExpr r = role(&ok);
            if (!ok) continue;
            std::string b = concept_name(&ok);
            if (!ok) continue;
            finish(Axiom::exists(a, r, b));
        } else if (kw == "fact") {
            if (!have()) { err("expected a predicate"); continue; }
            detail::Tok nameTok = next();
            bool inv = false;
            std::string raw = nameTok.s;
            if (raw.size() > 1 && raw.back() == '-') {
                inv = true;
                raw.pop_back();
            }
            if (!eat("(")) { err("expected '('"); continue; }
            std::string i1 = individual(&ok);
            if (!ok) continue;
            if (eat(",")) {
                std::string i2 = individual(&ok);
                if (!ok) continue;
                if (!eat(")")) { err("expected ')'"); continue; }
                std::string msg;
                detail::Tok t{raw, nameTok.col};
                std::string name = prefixes.resolve(t, false, &msg);
                if (name.empty()) {
                    out.errors.push_back(detail::mk_error(lineno, nameTok.col, msg));
                    continue;
                }
                // Inverse-role assertions normalize to the name form.
                finish(inv ? Axiom::role_fact(name, i2, i1) : Axiom::role_fact(name, i1, i2));
            } else {
                if (!eat(")")) { err("expected ')'"); continue; }
                if (inv) {
                    out.errors.push_back(detail::mk_error(
                        lineno, nameTok.col, "inverse marker on a concept assertion"));
                    continue;
                }
                std::string msg;
                detail::Tok t{raw, nameTok.col};
                std::string c = prefixes.resolve(t, true, &msg);
                if (c.empty()) {
                    out.errors.push_back(detail::mk_error(lineno, nameTok.col, msg));
                    continue;
                }
                finish(Axiom::concept_fact(c, i1));
            }
        } else {
            --ti;
            err("unknown statement keyword '" + kw + "'");
        }
    }
    return out;
}

// Statements in insertion order with all names as full <IRI> tokens; output
// re-parses to an equal ontology and is byte-stable.
inline std::string serialize_ontology(const Ontology& o) {
    std::string out;
    for (const auto& x : o.axioms()) out += axiom_text(x) + "\n";
    return out;
}

inline const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

inline QueryParse parse_query_impl(const std::string& text) {
    QueryParse out;
    detail::PrefixMap prefixes;
    std::vector<detail::Tok> toks;
    std::vector<int> tok_lines;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                     : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        std::vector<detail::Tok> lt;
        if (!detail::tokenize_line(line, lineno, lt, out.errors)) return out;
        for (auto& t : lt) {
            toks.push_back(t);
            tok_lines.push_back(lineno);
        }
    }
    size_t ti = 0;
    auto have = [&]() { return ti < toks.size(); };
    auto span = [&]() -> SourceSpan {
        SourceSpan sp;
        sp.line = ti < toks.size() ? tok_lines[ti] : lineno;
        sp.col = ti < toks.size() ? toks[ti].col : 1;
        return sp;
    };
    auto err = [&](const std::string& m) { out.errors.push_back(detail::mk_error(span(), m)); };
    auto upper = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return s;
    };
    auto keyword = [&](const std::string& k) {
        if (have() && upper(toks[ti].s) == k) {
            ++ti;
            return true;
        }
        return false;
    };

    while (keyword("PREFIX")) {
        if (!have() || toks[ti].s.empty() || toks[ti].s.back() != ':') {
            err("expected prefix name");
            return out;
        }
        std::string name = toks[ti].s.substr(0, toks[ti].s.size() - 1);
        int col = toks[ti].col;
        int ln = tok_lines[ti];
        ++ti;
        if (!have() || toks[ti].s.front() != '<') {
            err("expected <IRI>");
            return out;
        }
        std::string iri = toks[ti].s;
        ++ti;
        if (!prefixes.declare(name, iri.substr(1, iri.size() - 2)))
            out.errors.push_back(detail::mk_error(ln, col, "duplicate prefix declaration '" + name + ":'"));
    }

    bool is_ask = false;
    if (keyword("ASK")) {
        is_ask = true;
    } else if (keyword("SELECT")) {
        std::set<std::string> seen;
        while (have() && toks[ti].s.front() == '?') {
            std::string v = toks[ti].s.substr(1);
            if (v.empty()) {
                err("empty variable name");
                return out;
            }
            if (!seen.insert(v).second) {
                err("duplicate answer variable ?" + v);
                return out;
            }
            out.query.answer_vars.push_back(v);
            ++ti;
        }
    } else {
        err("expected SELECT or ASK");
        return out;
    }

    if (!keyword("WHERE")) {
        err("expected WHERE");
        return out;
    }
    if (!have() || toks[ti].s != "{") {
        err("expected '{'");
        return out;
    }
    ++ti;

    auto term = [&](bool* ok) -> QueryTerm {
        if (!have()) {
            err("expected a term");
            *ok = false;
            return {};
        }
        if (toks[ti].s.front() == '?') {
            QueryTerm t = qvar(toks[ti].s.substr(1));
            ++ti;
            *ok = true;
            return t;
        }
        std::string msg;
        std::string iri = prefixes.resolve(toks[ti], false, &msg);
        if (iri.empty()) {
            err(msg);
            *ok = false;
            return {};
        }
        ++ti;
        *ok = true;
        return qiri(iri);
    };

    while (have() && toks[ti].s != "}") {
        bool ok = true;
        QueryTerm s = term(&ok);
        if (!ok) return out;
        if (!have()) {
            err("expected a predicate");
            return out;
        }
        QueryAtom atom;
        if (toks[ti].s == "a") {
            ++ti;
            if (!have() || toks[ti].s.front() == '?') {
                err("the object of a type atom must be a concept name");
                return out;
            }
            std::string msg;
            std::string c = prefixes.resolve(toks[ti], false, &msg);
            if (c.empty()) {
                err(msg);
                return out;
            }
            ++ti;
            atom.binary = false;
            atom.pred = c;
            atom.s = s;
        } else if (toks[ti].s.front() == '?') {
            err("variable in predicate position");
            return out;
        } else {
            std::string msg;
            std::string p = prefixes.resolve(toks[ti], false, &msg);
            if (p.empty()) {
                err(msg);
                return out;
            }
            ++ti;
            if (p == kRdfType) {
                if (!have() || toks[ti].s.front() == '?') {
                    err("the object of a type atom must be a concept name");
                    return out;
                }
                std::string c = prefixes.resolve(toks[ti], false, &msg);
                if (c.empty()) {
                    err(msg);
                    return out;
                }
                ++ti;
                atom.binary = false;
                atom.pred = c;
                atom.s = s;
            } else {
                bool ok2 = true;
                QueryTerm t = term(&ok2);
                if (!ok2) return out;
                atom.binary = true;
                atom.pred = p;
                atom.s = s;
                atom.t = t;
            }
        }
        out.query.atoms.push_back(std::move(atom));
        if (have() && toks[ti].s == ".") ++ti;
    }
    if (!have()) {
        err("expected '}'");
        return out;
    }
    ++ti;
    if (have()) {
        err("unexpected tokens after '}'");
        return out;
    }
    if (out.query.atoms.empty()) {
        out.errors.push_back(detail::mk_error(1, 1, "empty WHERE clause"));
        return out;
    }
    std::set<std::string> body_vars;
    for (const auto& a : out.query.atoms) {
        if (a.s.is_var) body_vars.insert(a.s.name);
        if (a.binary && a.t.is_var) body_vars.insert(a.t.name);
    }
    for (const auto& v : out.query.answer_vars)
        if (!body_vars.count(v))
            out.errors.push_back(detail::mk_error(1, 1, "answer variable ?" + v + " does not occur in WHERE"));
    (void)is_ask;
    return out;
}

inline OntologyParse parse_ontology(const std::string& text,
                                    const std::string& file = "") {
    OntologyParse out = parse_ontology_impl(text);
    for (auto& e : out.errors) e.span.file = file;
    return out;
}

inline QueryParse parse_query(const std::string& text, const std::string& file = "") {
    QueryParse out = parse_query_impl(text);
    for (auto& e : out.errors) e.span.file = file;
    return out;
}

// --- answers ----------------------------------------------------------------

struct AnswerSet {
    std::vector<std::string> vars;
    std::vector<std::vector<std::string>> rows;  // IRI strings
    bool exact = true;
    nlohmann::json stats;  // run counters; not part of the emitted schema
};

inline void sort_rows(AnswerSet& as) { std::sort(as.rows.begin(), as.rows.end()); }

inline std::string emit_answers_tsv(AnswerSet as) {
    sort_rows(as);
    std::string out;
    for (size_t i = 0; i < as.vars.size(); ++i) out += (i ? "\t" : "") + as.vars[i];
    out += "\n";
    for (const auto& row : as.rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "\t<" : "<") + row[i] + ">";
        out += "\n";
    }
    return out;
}

inline std::string emit_answers_json(AnswerSet as) {
    sort_rows(as);
    nlohmann::json j;
    j["schema"] = 1;
    j["vars"] = as.vars;
    j["rows"] = as.rows;
    j["exact"] = as.exact;
    j["count"] = as.rows.size();
    return j.dump(2) + "\n";
}

inline std::string emit_answers(const AnswerSet& as, const std::string& format) {
    if (format == "json") return emit_answers_json(as);
    return emit_answers_tsv(as);
}

}  // namespace rsacomb
