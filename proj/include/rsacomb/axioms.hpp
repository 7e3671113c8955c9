#pragma once

// Normal-form ontology model: subrole axioms, five TBox shapes over named
// concepts (plus a right-hand-side union shape that approximation removes),
// and ground facts.  Concepts and individuals are absolute IRI strings; the
// reserved names TOP and BOTTOM are usable wherever a concept is allowed.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rsacomb {

inline const std::string kTop = "TOP";
inline const std::string kBottom = "BOTTOM";
inline bool is_top(const std::string& c) { return c == kTop; }
inline bool is_bottom(const std::string& c) { return c == kBottom; }

struct RoleExpr {
    std::string name;
    bool inv = false;

    RoleExpr inverse() const { return RoleExpr{name, !inv}; }
    std::string text() const { return inv ? name + "-" : name; }
    bool operator==(const RoleExpr& o) const { return name == o.name && inv == o.inv; }
    bool operator<(const RoleExpr& o) const {
        return name != o.name ? name < o.name : inv < o.inv;
    }
};

enum class AxiomKind : uint8_t {
    SubRole,      // r1 subRoleOf r2
    SubClass,     // A1 and ... and An subClassOf B
    Union,        // A subClassOf B1 or ... or Bn  (requires shifting)
    Nominal,      // A subClassOf {a}
    SomeValues,   // exists R.A subClassOf B
    MaxOne,       // A subClassOf atMostOne R.B
    Exists,       // A subClassOf exists R.B
    ConceptFact,  // C(a)
    RoleFact      // r(a, b)
};

struct Axiom {
    AxiomKind kind;
    RoleExpr r1, r2;                 // SubRole; r1 doubles as the role of
                                     // SomeValues / MaxOne / Exists
    std::vector<std::string> lhs;    // SubClass conjuncts
    std::string a, b;                // concept slots (meaning depends on kind)
    std::vector<std::string> rhs;    // Union disjuncts
    std::string ind, ind2;           // individuals

    static Axiom sub_role(RoleExpr r, RoleExpr s) {
        Axiom x{AxiomKind::SubRole, std::move(r), std::move(s), {}, "", "", {}, "", ""};
        return x;
    }
    static Axiom sub_class(std::vector<std::string> lhs, std::string rhs) {
        Axiom x{AxiomKind::SubClass, {}, {}, std::move(lhs), "", std::move(rhs), {}, "", ""};
        return x;
    }
    static Axiom union_of(std::string lhs, std::vector<std::string> disjuncts) {
        Axiom x{AxiomKind::Union, {}, {}, {}, std::move(lhs), "", std::move(disjuncts), "", ""};
        return x;
    }
    static Axiom nominal(std::string c, std::string ind) {
        Axiom x{AxiomKind::Nominal, {}, {}, {}, std::move(c), "", {}, std::move(ind), ""};
        return x;
    }
    static Axiom some_values(RoleExpr r, std::string filler, std::string rhs) {
        Axiom x{AxiomKind::SomeValues, std::move(r), {}, {}, std::move(filler),
                std::move(rhs), {}, "", ""};
        return x;
    }
    static Axiom max_one(std::string a, RoleExpr r, std::string b) {
        Axiom x{AxiomKind::MaxOne, std::move(r), {}, {}, std::move(a), std::move(b), {}, "", ""};
        return x;
    }
    static Axiom exists(std::string a, RoleExpr r, std::string b) {
        Axiom x{AxiomKind::Exists, std::move(r), {}, {}, std::move(a), std::move(b), {}, "", ""};
        return x;
    }
    static Axiom concept_fact(std::string c, std::string ind) {
        Axiom x{AxiomKind::ConceptFact, {}, {}, {}, std::move(c), "", {}, std::move(ind), ""};
        return x;
    }
    static Axiom role_fact(std::string role, std::string s, std::string o) {
        Axiom x{AxiomKind::RoleFact, RoleExpr{std::move(role), false}, {}, {}, "", "", {},
                std::move(s), std::move(o)};
        return x;
    }

    bool operator==(const Axiom& o) const {
        return kind == o.kind && r1 == o.r1 && r2 == o.r2 && lhs == o.lhs && a == o.a &&
               b == o.b && rhs == o.rhs && ind == o.ind && ind2 == o.ind2;
    }
};

// Statement form of an axiom; also the serialization used by the ontology
// writer and for deterministic tie-breaking.  Names are written as full
// <IRI> tokens except the reserved TOP/BOTTOM keywords.
inline std::string name_token(const std::string& s) {
    if (is_top(s) || is_bottom(s)) return s;
    return "<" + s + ">";
}
inline std::string role_token(const RoleExpr& r) {
    return "<" + r.name + ">" + (r.inv ? "-" : "");
}

inline std::string axiom_text(const Axiom& x) {
    switch (x.kind) {
        case AxiomKind::SubRole:
            return "sub-role " + role_token(x.r1) + " " + role_token(x.r2) + " .";
        case AxiomKind::SubClass: {
            std::string s = "sub-class ";
            for (size_t i = 0; i < x.lhs.size(); ++i)
                s += (i ? " & " : "") + name_token(x.lhs[i]);
            return s + " -> " + name_token(x.b) + " .";
        }
        case AxiomKind::Union: {
            std::string s = "sub-class " + name_token(x.a) + " -> ";
            for (size_t i = 0; i < x.rhs.size(); ++i)
                s += (i ? " | " : "") + name_token(x.rhs[i]);
            return s + " .";
        }
        case AxiomKind::Nominal:
            return "nominal " + name_token(x.a) + " -> " + name_token(x.ind) + " .";
        case AxiomKind::SomeValues:
            return "some " + role_token(x.r1) + " " + name_token(x.a) + " -> " +
                   name_token(x.b) + " .";
        case AxiomKind::MaxOne:
            return "max1 " + name_token(x.a) + " " + role_token(x.r1) + " " +
                   name_token(x.b) + " .";
        case AxiomKind::Exists:
            return "exists " + name_token(x.a) + " -> " + role_token(x.r1) + " " +
                   name_token(x.b) + " .";
        case AxiomKind::ConceptFact:
            return "fact " + name_token(x.a) + "(" + name_token(x.ind) + ") .";
        case AxiomKind::RoleFact:
            return "fact " + role_token(x.r1) + "(" + name_token(x.ind) + ", " +
                   name_token(x.ind2) + ") .";
    }
    return "";
}

class Ontology {
public:
    // Insertion order is preserved; duplicates are ignored.
    bool add(const Axiom& x) {
        std::string key = axiom_text(x);
        if (!keys_.insert(key).second) return false;
        axioms_.push_back(x);
        return true;
    }

    const std::vector<Axiom>& axioms() const { return axioms_; }
    bool contains(const Axiom& x) const { return keys_.count(axiom_text(x)) != 0; }

    bool operator==(const Ontology& o) const { return axioms_ == o.axioms_; }

    bool has_union() const {
        for (const auto& x : axioms_)
            if (x.kind == AxiomKind::Union) return true;
        return false;
    }

    // --- signature -------------------------------------------------------

    std::vector<std::string> concepts() const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        auto push = [&](const std::string& c) {
            if (c.empty() || is_top(c) || is_bottom(c)) return;
            if (seen.insert(c).second) out.push_back(c);
        };
        for (const auto& x : axioms_) {
            for (const auto& c : x.lhs) push(c);
            for (const auto& c : x.rhs) push(c);
            push(x.a);
            push(x.b);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::string> role_names() const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& x : axioms_) {
            if (has_role_(x) && seen.insert(x.r1.name).second) out.push_back(x.r1.name);
            if (x.kind == AxiomKind::SubRole && seen.insert(x.r2.name).second)
                out.push_back(x.r2.name);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Role expressions written in axioms (not closed under inverse).
    std::vector<RoleExpr> occurring_roles() const {
        std::vector<RoleExpr> out;
        std::set<std::string> seen;
        auto push = [&](const RoleExpr& r) {
            if (r.name.empty()) return;
            if (seen.insert(r.text()).second) out.push_back(r);
        };
        for (const auto& x : axioms_) {
            if (has_role_(x)) push(x.r1);
            if (x.kind == AxiomKind::SubRole) push(x.r2);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::string> individuals() const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        auto push = [&](const std::string& c) {
            if (!c.empty() && seen.insert(c).second) out.push_back(c);
        };
        for (const auto& x : axioms_) {
            push(x.ind);
            push(x.ind2);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<const Axiom*> of_kind(AxiomKind k) const {
        std::vector<const Axiom*> out;
        for (const auto& x : axioms_)
            if (x.kind == k) out.push_back(&x);
        return out;
    }

private:
    static bool has_role_(const Axiom& x) {
        switch (x.kind) {
            case AxiomKind::SubRole:
            case AxiomKind::SomeValues:
            case AxiomKind::MaxOne:
            case AxiomKind::Exists:
            case AxiomKind::RoleFact:
                return true;
            default:
                return false;
        }
    }

    std::vector<Axiom> axioms_;
    std::unordered_set<std::string> keys_;
};

// Reflexive-transitive subrole reachability; every subrole axiom also acts on
// the inverses of its sides.  Paths map each step back to the originating
// axiom (inverse-mirrored steps map to the same axiom).
class RoleClosure {
public:
    explicit RoleClosure(const Ontology& o) {
        for (const auto& x : o.axioms()) {
            if (x.kind != AxiomKind::SubRole) continue;
            adj_[x.r1.text()].push_back({x.r2, &x});
            adj_[x.r1.inverse().text()].push_back({x.r2.inverse(), &x});
        }
    }

    bool reaches(const RoleExpr& from, const RoleExpr& to) const {
        return path(from, to).has_value();
    }

    // Shortest axiom chain from `from` to `to`; empty chain when equal.
    std::optional<std::vector<const Axiom*>> path(const RoleExpr& from,
                                                  const RoleExpr& to) const {
        if (from == to) return std::vector<const Axiom*>{};
        std::map<std::string, std::pair<std::string, const Axiom*>> prev;
        std::vector<RoleExpr> queue{from};
        prev[from.text()] = {"", nullptr};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            RoleExpr cur = queue[qi];
            auto it = adj_.find(cur.text());
            if (it == adj_.end()) continue;
            for (const auto& [next, ax] : it->second) {
                if (prev.count(next.text())) continue;
                prev[next.text()] = {cur.text(), ax};
                if (next == to) {
                    std::vector<const Axiom*> chain;
                    std::string at = next.text();
                    while (prev[at].second != nullptr) {
                        chain.push_back(prev[at].second);
                        at = prev[at].first;
                    }
                    std::reverse(chain.begin(), chain.end());
                    return chain;
                }
                queue.push_back(next);
            }
        }
        return std::nullopt;
    }

private:
    std::map<std::string, std::vector<std::pair<RoleExpr, const Axiom*>>> adj_;
};

inline bool subrole_star(const Ontology& o, const RoleExpr& r, const RoleExpr& s) {
    return RoleClosure(o).reaches(r, s);
}

struct ValidationIssue {
    std::string message;
    std::string axiom;
};
struct ValidationReport {
    std::vector<ValidationIssue> violations;
    std::vector<ValidationIssue> notes;
    bool ok() const { return violations.empty(); }
    bool empty() const { return violations.empty() && notes.empty(); }
};

inline ValidationReport validate(const Ontology& o) {
    ValidationReport rep;
    for (const auto& x : o.axioms()) {
        std::string text = axiom_text(x);
        auto bad = [&](const std::string& m) { rep.violations.push_back({m, text}); };
        switch (x.kind) {
            case AxiomKind::SubClass:
                if (x.lhs.empty()) bad("subclass axiom with empty left-hand side");
                if (x.b.empty()) bad("subclass axiom with empty right-hand side");
                break;
            case AxiomKind::Union:
                if (x.rhs.size() < 2) bad("union axiom needs at least two disjuncts");
                rep.notes.push_back({"union axiom requires shifting", text});
                break;
            case AxiomKind::Nominal:
                if (is_top(x.a) || is_bottom(x.a) || x.a.empty() || x.ind.empty())
                    bad("malformed nominal axiom");
                break;
            case AxiomKind::SomeValues:
            case AxiomKind::MaxOne:
            case AxiomKind::Exists:
                if (x.r1.name.empty()) bad("axiom with empty role");
                if (x.a.empty() || x.b.empty()) bad("axiom with empty concept");
                break;
            case AxiomKind::SubRole:
                if (x.r1.name.empty() || x.r2.name.empty()) bad("subrole axiom with empty role");
                break;
            case AxiomKind::ConceptFact:
                if (x.a.empty() || x.ind.empty() || is_top(x.ind) || is_bottom(x.ind))
                    bad("malformed concept assertion");
                break;
            case AxiomKind::RoleFact:
                if (x.r1.inv) bad("role assertions must use role names");
                if (x.ind.empty() || x.ind2.empty()) bad("malformed role assertion");
                break;
        }
    }
    return rep;
}

// --- conjunctive queries ---------------------------------------------------

struct QueryTerm {
    bool is_var = false;
    std::string name;  // variable name or IRI

    bool operator==(const QueryTerm& o) const {
        return is_var == o.is_var && name == o.name;
    }
};
inline QueryTerm qvar(std::string n) { return QueryTerm{true, std::move(n)}; }
inline QueryTerm qiri(std::string n) { return QueryTerm{false, std::move(n)}; }

struct QueryAtom {
    bool binary = false;
    std::string pred;  // concept IRI (unary) or role name (binary)
    QueryTerm s, t;    // unary atoms use s only

    bool operator==(const QueryAtom& o) const {
        return binary == o.binary && pred == o.pred && s == o.s && t == o.t;
    }
};

struct ConjunctiveQuery {
    std::vector<std::string> answer_vars;
    std::vector<QueryAtom> atoms;

    bool operator==(const ConjunctiveQuery& o) const {
        return answer_vars == o.answer_vars && atoms == o.atoms;
    }

    // Non-answer variables in order of first occurrence; their 1-based
    // positions are the indices the filtering rules use.
    std::vector<std::string> bound_vars() const {
        std::vector<std::string> out;
        std::set<std::string> ans(answer_vars.begin(), answer_vars.end());
        std::set<std::string> seen;
        auto visit = [&](const QueryTerm& t) {
            if (!t.is_var || ans.count(t.name) || !seen.insert(t.name).second) return;
            out.push_back(t.name);
        };
        for (const auto& a : atoms) {
            visit(a.s);
            if (a.binary) visit(a.t);
        }
        return out;
    }

    std::vector<std::string> all_vars() const {
        std::vector<std::string> out = answer_vars;
        for (const auto& v : bound_vars()) out.push_back(v);
        return out;
    }
};

}  // namespace rsacomb
