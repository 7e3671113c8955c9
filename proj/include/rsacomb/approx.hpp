#pragma once

// Sound approximation into the RSA fragment: disjunction shifting, dependency
// cycle breaking, and equality-safety repairs.  Every step either removes an
// axiom or replaces a union by weaker Horn axioms, so certain answers over the
// result are a subset of those over the input.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsacomb/axioms.hpp"
#include "rsacomb/profile.hpp"

namespace rsacomb {

// Complement concept introduced by shifting; the urn scheme keeps generated
// names disjoint from ontology IRIs.
inline std::string complement_name(const std::string& c) {
    if (is_top(c)) return "urn:x-shift:neg?urn:x-top";
    if (is_bottom(c)) return "urn:x-shift:neg?urn:x-bottom";
    return "urn:x-shift:neg?" + c;
}

struct ApproximationProvenance {
    std::vector<Axiom> dropped_out_of_language;
    // Serialized source axiom -> axioms generated for it by shifting.
    std::map<std::string, std::vector<Axiom>> shifted;
    std::vector<Axiom> removed_t5;
    std::vector<Axiom> removed_t4;
    std::vector<Axiom> removed_r2;
    int iterations = 0;

    bool touched() const {
        return !dropped_out_of_language.empty() || !shifted.empty() ||
               !removed_t5.empty() || !removed_t4.empty() || !removed_r2.empty();
    }

    nlohmann::json to_json() const {
        auto texts = [](const std::vector<Axiom>& xs) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& x : xs) a.push_back(axiom_text(x));
            return a;
        };
        nlohmann::json j;
        j["schema"] = 1;
        j["iterations"] = iterations;
        j["dropped_out_of_language"] = texts(dropped_out_of_language);
        nlohmann::json sh = nlohmann::json::object();
        for (const auto& [src, gen] : shifted) sh[src] = texts(gen);
        j["shifted"] = sh;
        j["removed_t5"] = texts(removed_t5);
        j["removed_t4"] = texts(removed_t4);
        j["removed_r2"] = texts(removed_r2);
        return j;
    }
};

// The surface grammar only produces in-language axioms, so nothing is ever
// dropped; the hook exists for future ingestion paths.
inline std::pair<Ontology, std::vector<Axiom>> restrict_to_alchoiq(const Ontology& o) {
    return {o, {}};
}

struct ShiftResult {
    Ontology onto;
    std::map<std::string, std::vector<Axiom>> generated;
};

// Replaces each union axiom A -> B1|...|Bn by the Horn axioms
//   (i)  A & nB_j (j != i)        -> B_i      for each i
//   (ii) A & nB_1 & ... & nB_n    -> BOTTOM
// and derives the complement concepts nC from every BOTTOM-headed subclass or
// some-values axiom of the input: dropping one body atom at a time yields
//   A_1 & .. (minus A_i) ..       -> nA_i     (empty remainder uses TOP)
//   some r- TOP                   -> nA       (from `some r A -> BOTTOM`)
// The role atom of a some-values body has no safe complement rule and is
// skipped.  Without unions the ontology is returned unchanged.
inline ShiftResult shift_disjunctions(const Ontology& o) {
    ShiftResult out;
    if (!o.has_union()) {
        out.onto = o;
        return out;
    }
    auto emit = [&](const std::string& src, Axiom gen) {
        if (out.onto.add(gen)) out.generated[src].push_back(std::move(gen));
    };
    for (const auto& x : o.axioms()) {
        if (x.kind != AxiomKind::Union) {
            out.onto.add(x);
            continue;
        }
        std::string src = axiom_text(x);
        std::vector<std::string> negs;
        for (const auto& d : x.rhs) negs.push_back(complement_name(d));
        for (size_t i = 0; i < x.rhs.size(); ++i) {
            std::vector<std::string> lhs{x.a};
            for (size_t j = 0; j < x.rhs.size(); ++j)
                if (j != i) lhs.push_back(negs[j]);
            emit(src, Axiom::sub_class(lhs, x.rhs[i]));
        }
        std::vector<std::string> all{x.a};
        all.insert(all.end(), negs.begin(), negs.end());
        emit(src, Axiom::sub_class(all, kBottom));
    }
    for (const auto& x : o.axioms()) {
        if (x.kind == AxiomKind::SubClass && is_bottom(x.b)) {
            std::string src = axiom_text(x);
            for (size_t i = 0; i < x.lhs.size(); ++i) {
                std::vector<std::string> rest;
                for (size_t j = 0; j < x.lhs.size(); ++j)
                    if (j != i) rest.push_back(x.lhs[j]);
                if (rest.empty()) rest.push_back(kTop);
                emit(src, Axiom::sub_class(rest, complement_name(x.lhs[i])));
            }
        } else if (x.kind == AxiomKind::SomeValues && is_bottom(x.b)) {
            emit(axiom_text(x),
                 Axiom::some_values(x.r1.inverse(), kTop, complement_name(x.a)));
        }
    }
    return out;
}

// Cycle-breaking traversal over the dependency graph.  Nodes are taken in
// label order; a popped, newly discovered node with an already-discovered
// out-neighbor joins the cut set, otherwise its out-neighbors are pushed (in
// label order, so the greatest is explored first).  Returns cut node indices
// in discovery order.
inline std::vector<size_t> cycle_cut_nodes(const DependencyGraph& g) {
    size_t n = g.nodes.size();
    std::vector<std::vector<int>> out(n);
    for (const auto& e : g.edges) out[e.first].push_back(e.second);
    std::vector<char> discovered(n, 0);
    std::vector<size_t> cut;
    for (size_t root = 0; root < n; ++root) {
        if (discovered[root]) continue;
        std::vector<int> stack{static_cast<int>(root)};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (discovered[v]) continue;
            discovered[v] = 1;
            bool hits = false;
            for (int w : out[v])
                if (discovered[w]) {
                    hits = true;
                    break;
                }
            if (hits)
                cut.push_back(v);
            else
                for (int w : out[v]) stack.push_back(w);
        }
    }
    return cut;
}

namespace detail {

inline const Axiom* existential_of(const Ontology& o, const TripleLabel& t) {
    for (const Axiom* x : o.of_kind(AxiomKind::Exists))
        if (triple_of(*x).text() == t.text()) return x;
    return nullptr;
}

}  // namespace detail

// Maps each cut node back to its existential axiom and returns those axioms.
inline std::vector<Axiom> break_cycles(const DependencyGraph& g, const Ontology& o) {
    std::vector<Axiom> removed;
    for (size_t i : cycle_cut_nodes(g))
        if (const Axiom* x = detail::existential_of(o, g.nodes[i])) removed.push_back(*x);
    return removed;
}

struct RepairResult {
    std::vector<Axiom> t4;
    std::vector<Axiom> r2;
};

// Kind-1 violations drop the implicated max-1 axiom.  Kind-2 violations drop
// one subrole axiom from the shorter of the two derivation chains (an empty
// chain is a reflexive step and cannot be broken, so the other one is used;
// equal lengths compare chains, then pick the least axiom of the chosen chain).
inline RepairResult repair_equality_safety(const Ontology&,
                                           const std::vector<EqualityViolation>& vs) {
    RepairResult out;
    std::set<std::string> seen;
    auto add = [&](std::vector<Axiom>& dst, const Axiom& x) {
        if (seen.insert(axiom_text(x)).second) dst.push_back(x);
    };
    auto least = [](const std::vector<Axiom>& chain) {
        size_t best = 0;
        for (size_t i = 1; i < chain.size(); ++i)
            if (axiom_text(chain[i]) < axiom_text(chain[best])) best = i;
        return chain[best];
    };
    for (const auto& v : vs) {
        if (v.kind == 1) {
            add(out.t4, v.t4);
            continue;
        }
        const std::vector<Axiom>* chain = nullptr;
        if (v.chain_r.empty() && v.chain_s.empty()) continue;
        if (v.chain_r.empty())
            chain = &v.chain_s;
        else if (v.chain_s.empty())
            chain = &v.chain_r;
        else if (v.chain_r.size() != v.chain_s.size())
            chain = v.chain_r.size() < v.chain_s.size() ? &v.chain_r : &v.chain_s;
        else {
            std::vector<std::string> tr, ts;
            for (const auto& x : v.chain_r) tr.push_back(axiom_text(x));
            for (const auto& x : v.chain_s) ts.push_back(axiom_text(x));
            chain = tr <= ts ? &v.chain_r : &v.chain_s;
        }
        add(out.r2, least(*chain));
    }
    return out;
}

// Full pipeline: language restriction, shifting, then repeated membership
// analysis where each failing pass removes at least one axiom (cycle cuts,
// equality repairs, or — when the traversal cuts nothing on a still-cyclic
// graph — the least existential axiom on the witness cycle).
inline std::pair<Ontology, ApproximationProvenance> approximate_to_rsa(const Ontology& o) {
    ApproximationProvenance prov;
    auto [in_language, dropped] = restrict_to_alchoiq(o);
    prov.dropped_out_of_language = std::move(dropped);
    ShiftResult sh = shift_disjunctions(in_language);
    prov.shifted = std::move(sh.generated);
    Ontology cur = std::move(sh.onto);

    for (;;) {
        ++prov.iterations;
        RsaAnalysis a = analyze_rsa(cur);
        if (a.forest.ok && a.equality_violations.empty()) break;

        std::set<std::string> drop;
        auto mark = [&](std::vector<Axiom>& dst, const Axiom& x) {
            if (drop.insert(axiom_text(x)).second) dst.push_back(x);
        };
        if (!a.forest.ok)
            for (const auto& x : break_cycles(a.graph, cur)) mark(prov.removed_t5, x);
        if (!a.equality_violations.empty()) {
            RepairResult rep = repair_equality_safety(cur, a.equality_violations);
            for (const auto& x : rep.t4) mark(prov.removed_t4, x);
            for (const auto& x : rep.r2) mark(prov.removed_r2, x);
        }
        if (drop.empty()) {
            // Still cyclic but the traversal cut nothing (possible on acyclic
            // orientations of cyclic graphs); break the witness cycle directly.
            std::vector<const Axiom*> witnesses;
            for (const auto& label : a.forest.cycle)
                for (const Axiom* x : cur.of_kind(AxiomKind::Exists))
                    if ("u(" + triple_of(*x).text() + ")" == label) witnesses.push_back(x);
            const Axiom* pick = nullptr;
            for (const Axiom* x : witnesses)
                if (!pick || axiom_text(*x) < axiom_text(*pick)) pick = x;
            if (!pick) throw EngineError("approximation cannot make progress");
            mark(prov.removed_t5, *pick);
        }
        Ontology next;
        for (const auto& x : cur.axioms())
            if (!drop.count(axiom_text(x))) next.add(x);
        cur = std::move(next);
    }
    return {std::move(cur), std::move(prov)};
}

}  // namespace rsacomb
