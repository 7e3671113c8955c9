#pragma once

// Brute-force ground truth at desk scale, deliberately independent of the
// datalog engine: a bounded skolem chase with real function terms for Horn
// ontologies, homomorphism-based query answering over the chased facts, and
// propositional model enumeration for ground programs with disjunctive heads.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsacomb/axioms.hpp"
#include "rsacomb/text.hpp"

namespace rsacomb::oracle {

// Interned chase terms: named constants (child = -1) and unary function
// applications labeled by their existential axiom's (A,R,B) triple.
class ChaseTerms {
public:
    int constant(const std::string& name) { return intern_(name, -1, 0); }
    int apply(const std::string& label, int child) {
        return intern_(label, child, depth(child) + 1);
    }
    int depth(int t) const { return nodes_[t].depth; }
    bool is_constant(int t) const { return nodes_[t].child < 0; }
    std::string text(int t) const {
        const Node& n = nodes_[t];
        if (n.child < 0) return n.label;
        return "f[" + n.label + "](" + text(n.child) + ")";
    }
    size_t size() const { return nodes_.size(); }

private:
    struct Node {
        std::string label;
        int child;
        int depth;
    };
    int intern_(const std::string& label, int child, int d) {
        auto key = std::make_pair(label, child);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back({label, child, d});
        ids_.emplace(key, id);
        return id;
    }
    std::vector<Node> nodes_;
    std::map<std::pair<std::string, int>, int> ids_;
};

// Relation names: concepts and roles live in separate namespaces; top, bottom
// and equality are the same three internal predicates the main pipeline uses.
inline const std::string kChaseTop = "^top";
inline const std::string kChaseBot = "^bot";
inline const std::string kChaseEq = "^eq";
inline std::string chase_concept(const std::string& c) {
    if (is_top(c)) return kChaseTop;
    if (is_bottom(c)) return kChaseBot;
    return "c:" + c;
}
inline std::string chase_role(const std::string& name) { return "r:" + name; }

struct ChaseResult {
    ChaseTerms terms;
    std::map<std::string, std::set<std::vector<int>>> facts;
    bool terminated = true;
    int depth_used = 0;

    bool has(const std::string& rel, const std::vector<int>& tup) const {
        auto it = facts.find(rel);
        return it != facts.end() && it->second.count(tup) != 0;
    }
    const std::set<std::vector<int>>& rel(const std::string& name) const {
        static const std::set<std::vector<int>> empty;
        auto it = facts.find(name);
        return it == facts.end() ? empty : it->second;
    }
    bool satisfiable() const { return rel(kChaseBot).empty(); }

    // Rendered "pred(a,b)" lines, sorted; concept/role prefixes kept so the
    // two namespaces stay distinguishable in test expectations.
    std::vector<std::string> fact_texts() const {
        std::vector<std::string> out;
        for (const auto& [p, tuples] : facts)
            for (const auto& tup : tuples) {
                std::string s = p + "(";
                for (size_t i = 0; i < tup.size(); ++i)
                    s += (i ? ", " : "") + terms.text(tup[i]);
                out.push_back(s + ")");
            }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Breadth-first saturation of the ontology's direct rule reading plus the
// same top/equality axiomatization the engine pipeline uses.  Existential
// heads build real function terms; an instance whose term would exceed
// depth_bound is skipped entirely and the result is marked non-terminated,
// which keeps the fact set a sound, depth-monotone subset.
inline ChaseResult chase(const Ontology& o, int depth_bound = 8) {
    for (const auto& x : o.axioms())
        if (x.kind == AxiomKind::Union)
            throw std::invalid_argument("chase requires a union-free ontology");

    ChaseResult r;
    bool changed = true;
    auto add = [&](const std::string& rel, std::vector<int> tup) {
        if (r.facts[rel].insert(std::move(tup)).second) changed = true;
    };
    // Role atoms through an expression: inverse flips argument order.
    auto rel_pairs = [&](const RoleExpr& e) {
        std::vector<std::pair<int, int>> out;
        for (const auto& t : r.rel(chase_role(e.name)))
            out.push_back(e.inv ? std::make_pair(t[1], t[0]) : std::make_pair(t[0], t[1]));
        return out;
    };
    auto add_role = [&](const RoleExpr& e, int s, int t) {
        if (e.inv)
            add(chase_role(e.name), {t, s});
        else
            add(chase_role(e.name), {s, t});
    };
    auto members = [&](const std::string& c) {
        std::vector<int> out;
        for (const auto& t : r.rel(chase_concept(c))) out.push_back(t[0]);
        return out;
    };

    for (const auto& x : o.axioms()) {
        if (x.kind == AxiomKind::ConceptFact)
            add(chase_concept(x.a), {r.terms.constant(x.ind)});
        else if (x.kind == AxiomKind::RoleFact)
            add_role(x.r1, r.terms.constant(x.ind), r.terms.constant(x.ind2));
    }

    const auto concepts = o.concepts();
    const auto roles = o.role_names();
    while (changed) {
        changed = false;
        for (const auto& x : o.axioms()) {
            switch (x.kind) {
                case AxiomKind::SubRole:
                    for (auto [s, t] : rel_pairs(x.r1)) add_role(x.r2, s, t);
                    break;
                case AxiomKind::SubClass:
                    for (int t : members(x.lhs[0])) {
                        bool all = true;
                        for (size_t i = 1; i < x.lhs.size() && all; ++i)
                            all = r.has(chase_concept(x.lhs[i]), {t});
                        if (all) add(chase_concept(x.b), {t});
                    }
                    break;
                case AxiomKind::Nominal:
                    for (int t : members(x.a))
                        add(kChaseEq, {t, r.terms.constant(x.ind)});
                    break;
                case AxiomKind::SomeValues:
                    for (auto [s, t] : rel_pairs(x.r1))
                        if (r.has(chase_concept(x.a), {t})) add(chase_concept(x.b), {s});
                    break;
                case AxiomKind::MaxOne: {
                    auto pairs = rel_pairs(x.r1);
                    for (int t : members(x.a))
                        for (auto [s1, y1] : pairs)
                            for (auto [s2, y2] : pairs) {
                                if (s1 != t || s2 != t || y1 == y2) continue;
                                if (!r.has(chase_concept(x.b), {y1})) continue;
                                if (!r.has(chase_concept(x.b), {y2})) continue;
                                add(kChaseEq, {y1, y2});
                            }
                    break;
                }
                case AxiomKind::Exists:
                    for (int t : members(x.a)) {
                        if (r.terms.depth(t) + 1 > depth_bound) {
                            r.terminated = false;
                            continue;
                        }
                        int f = r.terms.apply(x.a + "," + x.r1.text() + "," + x.b, t);
                        if (r.terms.depth(f) > r.depth_used) r.depth_used = r.terms.depth(f);
                        add_role(x.r1, t, f);
                        add(chase_concept(x.b), {f});
                    }
                    break;
                default:
                    break;
            }
        }
        // Top membership from every concept and role occurrence.
        for (const auto& c : concepts)
            for (int t : members(c)) add(kChaseTop, {t});
        for (const auto& rn : roles)
            for (const auto& t : r.rel(chase_role(rn))) {
                add(kChaseTop, {t[0]});
                add(kChaseTop, {t[1]});
            }
        // Equality: reflexivity over top, symmetry, transitivity, congruence.
        for (const auto& t : r.rel(kChaseTop)) add(kChaseEq, {t[0], t[0]});
        for (const auto& t : r.rel(kChaseEq)) add(kChaseEq, {t[1], t[0]});
        {
            std::map<int, std::vector<int>> succ;
            for (const auto& t : r.rel(kChaseEq)) succ[t[0]].push_back(t[1]);
            for (const auto& t : r.rel(kChaseEq))
                for (int z : succ[t[1]]) add(kChaseEq, {t[0], z});
            for (const auto& c : concepts)
                for (int t : members(c))
                    for (int z : succ[t]) add(chase_concept(c), {z});
            for (const auto& rn : roles) {
                auto snapshot = r.rel(chase_role(rn));
                for (const auto& t : snapshot) {
                    for (int z : succ[t[0]]) add(chase_role(rn), {z, t[1]});
                    for (int z : succ[t[1]]) add(chase_role(rn), {t[0], z});
                }
            }
        }
    }
    return r;
}

// Homomorphism-based certain answers over the chased facts.  Answer variables
// range over named constants only; existential variables may bind function
// terms.  The answer set's exact flag records whether the chase terminated.
inline AnswerSet certain_answers_chase(const Ontology& o, const ConjunctiveQuery& q,
                                       int depth_bound = 8) {
    ChaseResult ch = chase(o, depth_bound);
    AnswerSet as;
    as.vars = q.answer_vars;
    as.exact = ch.terminated;

    std::map<std::string, int> binding;
    std::set<std::vector<std::string>> rows;
    std::set<std::string> answer(q.answer_vars.begin(), q.answer_vars.end());

    // Returns false when the constant never occurs in the chase.
    auto resolve = [&](const QueryTerm& t, int& out) {
        if (t.is_var) {
            auto it = binding.find(t.name);
            if (it == binding.end()) return false;
            out = it->second;
            return true;
        }
        for (size_t i = 0; i < ch.terms.size(); ++i)
            if (ch.terms.is_constant(static_cast<int>(i)) &&
                ch.terms.text(static_cast<int>(i)) == t.name) {
                out = static_cast<int>(i);
                return true;
            }
        return false;
    };

    std::function<void(size_t)> go = [&](size_t i) {
        if (i == q.atoms.size()) {
            std::vector<std::string> row;
            for (const auto& v : q.answer_vars) row.push_back(ch.terms.text(binding[v]));
            rows.insert(std::move(row));
            return;
        }
        const QueryAtom& a = q.atoms[i];
        const auto& tuples =
            ch.rel(a.binary ? chase_role(a.pred) : chase_concept(a.pred));
        for (const auto& tup : tuples) {
            std::vector<std::pair<std::string, int>> bound;
            auto match = [&](const QueryTerm& qt, int val) {
                if (!qt.is_var) {
                    int c;
                    return resolve(qt, c) && c == val;
                }
                auto it = binding.find(qt.name);
                if (it != binding.end()) return it->second == val;
                if (answer.count(qt.name) && !ch.terms.is_constant(val)) return false;
                binding[qt.name] = val;
                bound.push_back({qt.name, val});
                return true;
            };
            bool ok = match(a.s, tup[0]) && (!a.binary || match(a.t, tup[1]));
            if (ok) go(i + 1);
            for (const auto& b : bound) binding.erase(b.first);
        }
    };
    go(0);

    as.rows.assign(rows.begin(), rows.end());
    return as;
}

// --- propositional model enumeration -----------------------------------------

// Ground rule over propositional atoms; empty head is a constraint, two or
// more head atoms a disjunction.
struct GroundRule {
    std::vector<std::string> body;
    std::vector<std::string> head;
};

inline GroundRule ground_fact(std::string atom) { return {{}, {std::move(atom)}}; }

// Atoms true in every model of the program (cautious consequences), projected
// to the candidate atoms.  An unsatisfiable program has no models, so every
// candidate is vacuously cautious.
inline std::vector<std::string> disjunctive_certain(const std::vector<GroundRule>& rules,
                                                    const std::vector<std::string>& candidates,
                                                    size_t atom_limit = 16) {
    std::vector<std::string> atoms;
    std::map<std::string, size_t> index;
    auto touch = [&](const std::string& a) {
        if (index.emplace(a, atoms.size()).second) atoms.push_back(a);
    };
    for (const auto& r : rules) {
        for (const auto& a : r.body) touch(a);
        for (const auto& a : r.head) touch(a);
    }
    for (const auto& a : candidates) touch(a);
    if (atoms.size() > atom_limit)
        throw std::invalid_argument("ground program exceeds the atom limit (" +
                                    std::to_string(atoms.size()) + " > " +
                                    std::to_string(atom_limit) + ")");

    std::vector<char> cautious(atoms.size(), 1);
    const uint64_t total = uint64_t{1} << atoms.size();
    for (uint64_t m = 0; m < total; ++m) {
        auto holds = [&](const std::string& a) { return (m >> index[a]) & 1; };
        bool model = true;
        for (const auto& r : rules) {
            bool body = true;
            for (const auto& a : r.body) body = body && holds(a);
            if (!body) continue;
            bool head = false;
            for (const auto& a : r.head) head = head || holds(a);
            if (!head) {
                model = false;
                break;
            }
        }
        if (!model) continue;
        for (size_t i = 0; i < atoms.size(); ++i)
            if (!((m >> i) & 1)) cautious[i] = 0;
    }
    std::vector<std::string> out;
    for (const auto& a : candidates)
        if (cautious[index[a]]) out.push_back(a);
    return out;
}

// Grounds an ontology without existential or equality reasoning over its
// named individuals, for feeding disjunctive_certain.  Atom syntax: "C(a)"
// and "r(a,b)".  TOP atoms are dropped from bodies and satisfy heads
// trivially; BOTTOM atoms never hold, so they kill bodies and empty heads.
inline std::vector<GroundRule> ground_rules(const Ontology& o) {
    auto catom = [](const std::string& c, const std::string& i) {
        return c + "(" + i + ")";
    };
    auto ratom = [](const RoleExpr& e, const std::string& s, const std::string& t) {
        return e.inv ? e.name + "(" + t + "," + s + ")" : e.name + "(" + s + "," + t + ")";
    };
    const auto inds = o.individuals();
    std::vector<GroundRule> out;
    for (const auto& x : o.axioms()) {
        switch (x.kind) {
            case AxiomKind::ConceptFact:
                if (is_top(x.a)) break;
                if (is_bottom(x.a)) {
                    out.push_back({{}, {}});
                    break;
                }
                out.push_back(ground_fact(catom(x.a, x.ind)));
                break;
            case AxiomKind::RoleFact:
                out.push_back(ground_fact(ratom(x.r1, x.ind, x.ind2)));
                break;
            case AxiomKind::SubClass: {
                if (is_top(x.b)) break;
                bool dead = false;
                for (const auto& c : x.lhs) dead = dead || is_bottom(c);
                if (dead) break;
                for (const auto& i : inds) {
                    GroundRule r;
                    for (const auto& c : x.lhs)
                        if (!is_top(c)) r.body.push_back(catom(c, i));
                    if (!is_bottom(x.b)) r.head.push_back(catom(x.b, i));
                    out.push_back(std::move(r));
                }
                break;
            }
            case AxiomKind::Union: {
                bool trivial = is_bottom(x.a);
                for (const auto& d : x.rhs) trivial = trivial || is_top(d);
                if (trivial) break;
                for (const auto& i : inds) {
                    GroundRule r;
                    if (!is_top(x.a)) r.body.push_back(catom(x.a, i));
                    for (const auto& d : x.rhs)
                        if (!is_bottom(d)) r.head.push_back(catom(d, i));
                    out.push_back(std::move(r));
                }
                break;
            }
            case AxiomKind::SubRole:
                for (const auto& s : inds)
                    for (const auto& t : inds)
                        out.push_back({{ratom(x.r1, s, t)}, {ratom(x.r2, s, t)}});
                break;
            case AxiomKind::SomeValues:
                if (is_top(x.b) || is_bottom(x.a)) break;
                for (const auto& s : inds)
                    for (const auto& t : inds) {
                        GroundRule r;
                        r.body.push_back(ratom(x.r1, s, t));
                        if (!is_top(x.a)) r.body.push_back(catom(x.a, t));
                        if (!is_bottom(x.b)) r.head.push_back(catom(x.b, s));
                        out.push_back(std::move(r));
                    }
                break;
            default:
                throw std::invalid_argument(
                    "ground_rules cannot express axiom: " + axiom_text(x));
        }
    }
    return out;
}

}  // namespace rsacomb::oracle
