#pragma once

// Role-safety classification, the role-dependency graph, equality safety and
// the combined membership test that decides whether the tractable pipeline
// applies to an ontology as-is.

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsacomb/axioms.hpp"
#include "rsacomb/engine.hpp"
#include "rsacomb/translate.hpp"

namespace rsacomb {

// --- role safety ------------------------------------------------------------

struct RoleWitness {
    int condition = 0;  // 1: inverse feeds a qualified existential; 2: role hierarchy meets a max-1
    Axiom axiom;
};

struct RoleSafety {
    std::vector<RoleExpr> unsafe;  // sorted; subset of existential-axiom roles
    std::vector<RoleExpr> safe;    // sorted; every other occurring role
    std::map<std::string, RoleWitness> witnesses;  // keyed by RoleExpr::text()

    bool is_unsafe(const RoleExpr& r) const {
        return std::binary_search(unsafe.begin(), unsafe.end(), r);
    }
};

inline std::vector<Axiom> axioms_of(const Ontology& o, AxiomKind k) {
    std::vector<Axiom> v;
    for (const Axiom* p : o.of_kind(k)) v.push_back(*p);
    return v;
}

// A role R of an existential axiom is unsafe iff some role S reachable as
// R subrole-of* Inv(S) has a non-TOP qualified existential on its left, or the
// hierarchy connects R (directly or inverted) to a max-1 restriction's role.
inline RoleSafety classify_roles(const Ontology& o) {
    RoleSafety out;
    RoleClosure closure(o);
    std::set<RoleExpr> t5_roles;
    for (const auto& x : axioms_of(o, AxiomKind::Exists)) t5_roles.insert(x.r1);

    std::set<RoleExpr> unsafe;
    for (const auto& r : t5_roles) {
        bool done = false;
        for (const auto& x : axioms_of(o, AxiomKind::SomeValues)) {
            if (is_top(x.a)) continue;
            if (closure.reaches(r, x.r1.inverse())) {
                unsafe.insert(r);
                out.witnesses[r.text()] = {1, x};
                done = true;
                break;
            }
        }
        if (done) continue;
        for (const auto& x : axioms_of(o, AxiomKind::MaxOne)) {
            if (closure.reaches(r, x.r1) || closure.reaches(r, x.r1.inverse())) {
                unsafe.insert(r);
                out.witnesses[r.text()] = {2, x};
                break;
            }
        }
    }
    out.unsafe.assign(unsafe.begin(), unsafe.end());
    for (const auto& r : o.occurring_roles())
        if (!unsafe.count(r)) out.safe.push_back(r);
    return out;
}

// --- dependency graph -------------------------------------------------------

struct DependencyGraph {
    std::vector<TripleLabel> nodes;           // sorted by label text; one per unsafe existential axiom
    std::vector<std::pair<int, int>> edges;   // directed, deduplicated, sorted

    std::string node_text(size_t i) const { return "u(" + nodes[i].text() + ")"; }

    std::optional<int> index_of(const TripleLabel& t) const {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].text() == t.text()) return static_cast<int>(i);
        return std::nullopt;
    }
};

inline std::string emit_graph_dot(const DependencyGraph& g) {
    std::string out = "digraph G {\n";
    for (size_t i = 0; i < g.nodes.size(); ++i)
        out += "  \"" + g.node_text(i) + "\";\n";
    std::vector<std::string> lines;
    for (const auto& [a, b] : g.edges)
        lines.push_back("  \"" + g.node_text(a) + "\" -> \"" + g.node_text(b) + "\";\n");
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out += l;
    out += "}\n";
    return out;
}

// --- oriented-forest check ---------------------------------------------------

struct ForestCheck {
    bool ok = true;
    std::vector<std::string> cycle;  // node texts of a minimal undirected cycle
};

// True iff the underlying undirected multigraph is acyclic: a self-loop, an
// antiparallel edge pair, or any undirected cycle all disqualify.
inline ForestCheck is_oriented_forest(const DependencyGraph& g) {
    ForestCheck out;
    const int n = static_cast<int>(g.nodes.size());
    std::set<std::pair<int, int>> undirected;
    for (const auto& [a, b] : g.edges) {
        if (a == b) {
            out.ok = false;
            out.cycle = {g.node_text(a)};
            return out;
        }
        auto key = std::minmax(a, b);
        if (!undirected.insert({key.first, key.second}).second) {
            out.ok = false;
            out.cycle = {g.node_text(key.first), g.node_text(key.second)};
            return out;
        }
    }
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : undirected) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // Girth by BFS from every node; graphs here have one node per unsafe
    // existential axiom, so quadratic is fine.
    std::vector<int> best;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1), par(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (int y : adj[x]) {
                if (dist[y] == -1) {
                    dist[y] = dist[x] + 1;
                    par[y] = x;
                    queue.push_back(y);
                    continue;
                }
                if (y == par[x]) continue;
                // Found a cycle through edge x-y; reconstruct via the two
                // ancestor chains.
                std::vector<int> ax, ay;
                for (int c = x; c != -1; c = par[c]) ax.push_back(c);
                for (int c = y; c != -1; c = par[c]) ay.push_back(c);
                std::set<int> in_ay(ay.begin(), ay.end());
                size_t cut = 0;
                while (cut < ax.size() && !in_ay.count(ax[cut])) ++cut;
                std::vector<int> cyc(ax.begin(), ax.begin() + cut + 1);
                for (auto it = ay.begin(); it != ay.end() && *it != ax[cut]; ++it)
                    cyc.push_back(*it);
                // reorder so it reads x .. common .. y
                std::vector<int> ordered(cyc.begin(), cyc.begin() + cut + 1);
                for (size_t k = cyc.size(); k > cut + 1; --k) ordered.push_back(cyc[k - 1]);
                if (best.empty() || ordered.size() < best.size()) best = ordered;
            }
        }
    }
    if (!best.empty()) {
        out.ok = false;
        for (int i : best) out.cycle.push_back(g.node_text(i));
    }
    return out;
}

// --- equality safety ----------------------------------------------------------

struct EqualityViolation {
    int kind = 0;               // 1 or 2
    TripleLabel triple;         // the node's existential axiom
    RoleExpr role_r;            // R of the offending atom pair
    RoleExpr role_s;            // kind 1: the max-1 role; kind 2: the reply role
    std::string witness_w;      // kind 1: the merged partner w
    std::string witness_t;      // kind 1: t of R(t,u); kind 2: the individual a
    RoleExpr role_t;            // kind 2: the role T that closes the pair
    Axiom t4;                   // kind 1: the max-1 axiom
    std::vector<Axiom> chain_r; // kind 2: subrole axioms deriving R under T
    std::vector<Axiom> chain_s; // kind 2: subrole axioms deriving S under Inv(T)

    std::string describe() const {
        if (kind == 1)
            return "merged term " + witness_w + " ~ " + witness_t + " with " +
                   role_r.text() + "(" + witness_t + ", u(" + triple.text() +
                   ")) meets max-1 axiom: " + axiom_text(t4);
        return role_r.text() + "(" + witness_t + ", u(" + triple.text() + ")) and " +
               role_s.text() + "(u(" + triple.text() + "), " + witness_t +
               ") close under role " + role_t.text();
    }
};

// --- combined analysis --------------------------------------------------------

struct RsaAnalysis {
    RoleSafety safety;
    DependencyGraph graph;
    ForestCheck forest;
    std::vector<EqualityViolation> equality_violations;
    // Distinct merged node pairs (ordered, symmetric) among existential-axiom
    // constants, needed by the canonical model's unfolding sets.
    std::vector<std::pair<TripleLabel, TripleLabel>> congruent_unodes;
};

inline std::vector<Rule> build_rsa_check_program(TermPool& tp, PredPool& pp,
                                                 const Ontology& o,
                                                 const RoleSafety& safety) {
    std::vector<Rule> rules;
    for (const auto& x : o.axioms()) {
        auto rs = translate_axiom_check(tp, pp, x);
        rules.insert(rules.end(), rs.begin(), rs.end());
    }
    PredId up = pp.internal(Tag::U);
    PredId pe = pp.internal(Tag::PE);
    PredId ep = pp.internal(Tag::E);
    Rule er;
    er.pos = {mk_atom(up, {var_arg(0)}), mk_atom(pe, {var_arg(0), var_arg(1)}),
              mk_atom(up, {var_arg(1)})};
    er.heads = {mk_atom(ep, {var_arg(0), var_arg(1)})};
    finalize_rule(er, pp);
    rules.push_back(er);
    for (const auto& x : axioms_of(o, AxiomKind::Exists)) {
        if (!safety.is_unsafe(x.r1)) continue;
        TripleId t = tp.triple(triple_of(x));
        Rule f;
        f.heads = {mk_atom(up, {term_arg(tp.unode(t))})};
        finalize_rule(f, pp);
        rules.push_back(f);
    }
    auto eq = axiomatize_top_equality(tp, pp, o);
    rules.insert(rules.end(), eq.begin(), eq.end());
    return rules;
}

inline RsaAnalysis analyze_rsa(Store& store, const Ontology& o) {
    if (o.has_union())
        throw EngineError("ontology contains union axioms; approximate first");
    RsaAnalysis out;
    out.safety = classify_roles(o);

    static std::atomic<uint64_t> scratch_counter{0};
    std::string part = "rsa-check-" + std::to_string(scratch_counter.fetch_add(1));
    store.create_partition(part, {});
    TermPool& tp = store.terms();
    PredPool& pp = store.preds();
    store.assert_rules(part, build_rsa_check_program(tp, pp, o, out.safety));
    store.materialize(part);

    // nodes: one per unsafe existential axiom
    std::vector<TripleLabel> nodes;
    std::set<std::string> node_seen;
    for (const auto& x : axioms_of(o, AxiomKind::Exists)) {
        if (!out.safety.is_unsafe(x.r1)) continue;
        TripleLabel t = triple_of(x);
        if (node_seen.insert(t.text()).second) nodes.push_back(t);
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const TripleLabel& a, const TripleLabel& b) { return a.text() < b.text(); });
    out.graph.nodes = nodes;
    std::map<std::string, int> node_index;
    for (size_t i = 0; i < nodes.size(); ++i)
        node_index[nodes[i].text()] = static_cast<int>(i);

    auto unode_index = [&](TermId t) -> std::optional<int> {
        if (tp.kind(t) != TermKind::UNode) return std::nullopt;
        auto it = node_index.find(tp.triple_label(tp.term_triple(t)).text());
        if (it == node_index.end()) return std::nullopt;
        return it->second;
    };

    PredId ep = pp.internal(Tag::E);
    std::set<std::pair<int, int>> edges;
    for (const auto& row : store.query_atoms(part, mk_atom(ep, {var_arg(0), var_arg(1)}))) {
        auto a = unode_index(row[0]);
        auto b = unode_index(row[1]);
        if (a && b) edges.insert({*a, *b});
    }
    out.graph.edges.assign(edges.begin(), edges.end());
    out.forest = is_oriented_forest(out.graph);

    // merged terms: congruent pairs, nonreflexive
    PredId cg = pp.internal(Tag::Congruent);
    std::set<TermId> merged_terms;  // terms with a distinct congruent partner
    std::map<TermId, TermId> least_partner;
    std::set<std::pair<std::string, std::string>> unode_pairs;
    for (const auto& row : store.query_atoms(part, mk_atom(cg, {var_arg(0), var_arg(1)}))) {
        if (row[0] == row[1]) continue;
        merged_terms.insert(row[1]);
        auto it = least_partner.find(row[1]);
        if (it == least_partner.end() || tp.text(row[0]) < tp.text(it->second))
            least_partner[row[1]] = row[0];
        if (tp.kind(row[0]) == TermKind::UNode && tp.kind(row[1]) == TermKind::UNode) {
            TripleLabel la = tp.triple_label(tp.term_triple(row[0]));
            TripleLabel lb = tp.triple_label(tp.term_triple(row[1]));
            if (unode_pairs.insert({la.text(), lb.text()}).second)
                out.congruent_unodes.push_back({la, lb});
        }
    }

    RoleClosure closure(o);

    // kind 1: a merged term flows into a node over R while the hierarchy
    // connects Inv(R) down to a max-1 role
    std::vector<Axiom> t5 = axioms_of(o, AxiomKind::Exists);
    std::sort(t5.begin(), t5.end(), [](const Axiom& a, const Axiom& b) {
        return axiom_text(a) < axiom_text(b);
    });
    std::vector<Axiom> t4 = axioms_of(o, AxiomKind::MaxOne);
    std::sort(t4.begin(), t4.end(), [](const Axiom& a, const Axiom& b) {
        return axiom_text(a) < axiom_text(b);
    });
    for (const auto& x : t5) {
        RoleExpr r = x.r1;
        std::vector<std::pair<RoleExpr, Axiom>> s_candidates;
        for (const auto& m : t4)
            if (closure.reaches(r, m.r1.inverse())) s_candidates.push_back({m.r1, m});
        if (s_candidates.empty()) continue;
        TermId u = tp.unode(tp.triple(triple_of(x)));
        PredId rp = role_pred_of(pp, r);
        std::optional<TermId> subj;
        for (const auto& row : store.query_atoms(part, mk_atom(rp, {var_arg(0), term_arg(u)}))) {
            if (!merged_terms.count(row[0])) continue;
            if (!subj || tp.text(row[0]) < tp.text(*subj)) subj = row[0];
        }
        if (!subj) continue;
        for (const auto& [s, ax] : s_candidates) {
            EqualityViolation v;
            v.kind = 1;
            v.triple = triple_of(x);
            v.role_r = r;
            v.role_s = s;
            v.witness_w = tp.text(least_partner[*subj]);
            v.witness_t = tp.text(*subj);
            v.t4 = ax;
            out.equality_violations.push_back(std::move(v));
        }
    }

    // kind 2: a named individual and a node joined in both directions by
    // roles that meet under a common role T
    std::vector<RoleExpr> t_candidates;
    for (const auto& n : o.role_names()) {
        t_candidates.push_back({n, false});
        t_candidates.push_back({n, true});
    }
    std::sort(t_candidates.begin(), t_candidates.end());
    std::vector<PredId> s_preds;
    for (PredId p : store.visible_preds(part))
        if (pp.kind(p) == PredKind::Role && !pp.inverted(p)) s_preds.push_back(p);
    std::sort(s_preds.begin(), s_preds.end(),
              [&](PredId a, PredId b) { return pp.name(a) < pp.name(b); });
    for (const auto& x : t5) {
        RoleExpr r = x.r1;
        TermId u = tp.unode(tp.triple(triple_of(x)));
        PredId rp = role_pred_of(pp, r);
        for (PredId sp : s_preds) {
            RoleExpr s{pp.name(sp), false};
            if (s == r.inverse()) continue;  // mirror of the same edge
            std::optional<RoleExpr> t_found;
            for (const auto& t : t_candidates) {
                if (closure.reaches(r, t) && closure.reaches(s, t.inverse())) {
                    t_found = t;
                    break;
                }
            }
            if (!t_found) continue;
            std::vector<std::string> individuals;
            for (const auto& row : store.query_atoms(part, mk_atom(sp, {term_arg(u), var_arg(0)}))) {
                if (tp.kind(row[1]) != TermKind::Const) continue;
                if (!store.has_fact(part, rp, {row[1], u})) continue;
                individuals.push_back(tp.text(row[1]));
            }
            std::sort(individuals.begin(), individuals.end());
            for (const auto& a : individuals) {
                EqualityViolation v;
                v.kind = 2;
                v.triple = triple_of(x);
                v.role_r = r;
                v.role_s = s;
                v.witness_t = a;
                v.role_t = *t_found;
                if (auto c = closure.path(r, *t_found))
                    for (const Axiom* ax : *c) v.chain_r.push_back(*ax);
                if (auto c = closure.path(s, t_found->inverse()))
                    for (const Axiom* ax : *c) v.chain_s.push_back(*ax);
                out.equality_violations.push_back(std::move(v));
            }
        }
    }

    store.retract_partition(part);
    return out;
}

inline RsaAnalysis analyze_rsa(const Ontology& o) {
    Store store;
    return analyze_rsa(store, o);
}

inline DependencyGraph build_dependency_graph(Store& store, const Ontology& o) {
    return analyze_rsa(store, o).graph;
}

inline std::vector<EqualityViolation> check_equality_safety(const Ontology& o) {
    return analyze_rsa(o).equality_violations;
}

// --- report -------------------------------------------------------------------

struct RsaReport {
    bool is_rsa = false;
    RoleSafety safety;
    DependencyGraph graph;
    bool forest_ok = true;
    std::vector<std::string> forest_violation;  // empty when forest_ok
    std::vector<EqualityViolation> equality_violations;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = 1;
        j["is_rsa"] = is_rsa;
        j["unsafe_roles"] = nlohmann::json::array();
        for (const auto& r : safety.unsafe) j["unsafe_roles"].push_back(r.text());
        j["forest_violation"] = forest_violation;
        j["equality_violations"] = nlohmann::json::array();
        for (const auto& v : equality_violations) {
            nlohmann::json e;
            e["kind"] = v.kind;
            e["node"] = "u(" + v.triple.text() + ")";
            e["description"] = v.describe();
            j["equality_violations"].push_back(e);
        }
        return j;
    }
};

inline RsaReport is_rsa(Store& store, const Ontology& o) {
    RsaAnalysis a = analyze_rsa(store, o);
    RsaReport r;
    r.safety = a.safety;
    r.graph = a.graph;
    r.forest_ok = a.forest.ok;
    r.forest_violation = a.forest.cycle;
    r.equality_violations = a.equality_violations;
    r.is_rsa = a.forest.ok && a.equality_violations.empty();
    return r;
}

inline RsaReport is_rsa(const Ontology& o) {
    Store store;
    return is_rsa(store, o);
}

}  // namespace rsacomb
