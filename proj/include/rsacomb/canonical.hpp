#pragma once

// Canonical-model construction: translates the ontology into a program whose
// least fixpoint is a finite over-approximating model.  Role facts live on
// three levels — plain, forward, backward — so that edges introduced by
// existentials keep their orientation; unsafe existentials build skolem
// successors while safe ones reuse per-triple constants guarded by unfolding
// sets that keep conflicting roles from collapsing the orientation.

#include <algorithm>
#include <chrono>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsacomb/axioms.hpp"
#include "rsacomb/engine.hpp"
#include "rsacomb/profile.hpp"
#include "rsacomb/rule.hpp"
#include "rsacomb/terms.hpp"
#include "rsacomb/translate.hpp"

namespace rsacomb {

// Roles S that can meet R under a common superrole with opposite orientation:
// R reaches some T and S reaches Inv(T), with T ranging over the occurring
// role expressions and their inverses.
inline std::vector<RoleExpr> confl(const RoleExpr& r, const Ontology& o) {
    RoleClosure closure(o);
    std::vector<RoleExpr> ts;
    {
        std::set<std::string> seen;
        for (const auto& s : o.occurring_roles()) {
            if (seen.insert(s.text()).second) ts.push_back(s);
            RoleExpr si = s.inverse();
            if (seen.insert(si.text()).second) ts.push_back(si);
        }
    }
    std::vector<RoleExpr> out;
    for (const auto& s : o.occurring_roles())
        for (const auto& t : ts)
            if (closure.reaches(r, t) && closure.reaches(s, t.inverse())) {
                out.push_back(s);
                break;
            }
    std::sort(out.begin(), out.end());
    return out;
}

struct T5Triple {
    std::string a;
    RoleExpr r;
    std::string b;
    bool safe = false;

    TripleLabel label() const { return TripleLabel{a, r.name, r.inv, b}; }
    std::string text() const { return label().text(); }
};

// Distinct existential triples, ordered lexicographically by label text; this
// ordering is also the strict total order used by the unfolding sets.
inline std::vector<T5Triple> t5_triples(const Ontology& o, const RoleSafety& safety) {
    std::vector<T5Triple> out;
    std::set<std::string> seen;
    for (const Axiom* x : o.of_kind(AxiomKind::Exists)) {
        T5Triple t{x->a, x->r1, x->b, !safety.is_unsafe(x->r1)};
        if (seen.insert(t.text()).second) out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(),
              [](const T5Triple& l, const T5Triple& r2) { return l.text() < r2.text(); });
    return out;
}

struct UnfoldEntry {
    TripleLabel triple;
    std::vector<TermId> self_set;    // v0 and v1 of this triple, or empty
    std::vector<TermId> cycle_set;   // terms whose successor must skip to v1
    std::vector<TermId> unfold_set;  // self ∪ cycle; excluded from the base rule
};

struct UnfoldSets {
    std::vector<UnfoldEntry> entries;  // safe triples only, in triple order

    const UnfoldEntry* find(const std::string& triple_text) const {
        for (const auto& e : entries)
            if (e.triple.text() == triple_text) return &e;
        return nullptr;
    }
};

inline std::vector<std::string> term_texts(const TermPool& tp,
                                           const std::vector<TermId>& terms) {
    std::vector<std::string> out;
    out.reserve(terms.size());
    for (TermId t : terms) out.push_back(tp.text(t));
    return out;
}

// Unfolding sets for one safe triple: the v0/v1 pair when the role conflicts
// with itself; v-constants of other conflicting safe triples, split between
// v0 and v1 by the triple order; and for conflicting unsafe roles the skolem
// successors of this triple's v0 (including skolems whose shared constants
// the structural check merged).
inline UnfoldEntry unfold(TermPool& tp, const T5Triple& t, const Ontology& o,
                          const RsaAnalysis& m) {
    UnfoldEntry e;
    e.triple = t.label();
    TripleId tid = tp.triple(e.triple);
    TermId v0 = tp.vnode(tid, 0);

    std::vector<RoleExpr> cf = confl(t.r, o);
    bool self_confl = std::any_of(cf.begin(), cf.end(), [&](const RoleExpr& s) {
        return s.text() == t.r.text();
    });
    if (self_confl) e.self_set = {v0, tp.vnode(tid, 1)};

    std::vector<T5Triple> all = t5_triples(o, m.safety);
    std::set<TermId> cyc;
    for (const auto& s : cf) {
        for (const auto& d : all) {
            if (d.r.text() != s.text()) continue;
            if (d.safe) {
                TripleId did = tp.triple(d.label());
                if (t.text() < d.text()) cyc.insert(tp.vnode(did, 0));
                if (d.text() < t.text()) cyc.insert(tp.vnode(did, 1));
            } else {
                cyc.insert(tp.fnapp(tp.sym_skolem(tp.triple(d.label())), {v0}));
                for (const auto& [la, lb] : m.congruent_unodes) {
                    if (la.text() != d.text()) continue;
                    for (const auto& f : all)
                        if (f.text() == lb.text() && !f.safe)
                            cyc.insert(tp.fnapp(tp.sym_skolem(tp.triple(f.label())), {v0}));
                }
            }
        }
    }
    auto by_text = [&](TermId a, TermId b) { return tp.text(a) < tp.text(b); };
    e.cycle_set.assign(cyc.begin(), cyc.end());
    std::sort(e.cycle_set.begin(), e.cycle_set.end(), by_text);
    std::set<TermId> un(cyc);
    un.insert(e.self_set.begin(), e.self_set.end());
    e.unfold_set.assign(un.begin(), un.end());
    std::sort(e.unfold_set.begin(), e.unfold_set.end(), by_text);
    return e;
}

inline UnfoldSets compute_unfold_sets(TermPool& tp, const Ontology& o,
                                      const RsaAnalysis& m) {
    UnfoldSets u;
    for (const auto& t : t5_triples(o, m.safety))
        if (t.safe) u.entries.push_back(unfold(tp, t, o, m));
    return u;
}

struct CanonicalProgram {
    std::vector<Rule> rules;          // deduplicated, deterministic order
    std::vector<T5Triple> triples;
    UnfoldSets unfold_sets;
};

// Full program: the direct rule reading of every non-existential axiom,
// directional copies of the role hierarchy bridged back to the plain level,
// existential successor rules, membership facts for the unfolding sets,
// named/NI bookkeeping, and the Top/congruence axioms.
inline CanonicalProgram build_canonical_program(TermPool& tp, PredPool& pp,
                                                const Ontology& o,
                                                const RsaAnalysis& m) {
    CanonicalProgram prog;
    prog.triples = t5_triples(o, m.safety);
    prog.unfold_sets = compute_unfold_sets(tp, o, m);

    std::vector<Rule> raw;
    const Arg X = var_arg(0), Y = var_arg(1);

    for (const auto& x : o.axioms()) {
        if (x.kind == AxiomKind::Exists) continue;
        for (auto& r : translate_axiom(tp, pp, x)) raw.push_back(std::move(r));
    }

    for (const Axiom* x : o.of_kind(AxiomKind::SubRole)) {
        for (bool fwd : {true, false}) {
            Rule r;
            r.pos = {mk_atom(pp.dir_pred(x->r1.name, x->r1.inv, fwd), {X, Y})};
            r.heads = {mk_atom(pp.dir_pred(x->r2.name, x->r2.inv, fwd), {X, Y})};
            raw.push_back(std::move(r));
        }
    }

    for (const auto& rn : o.role_names()) {
        for (auto& r : bridge_rules(pp, rn)) raw.push_back(std::move(r));
        for (bool inv : {false, true}) {
            for (bool fwd : {true, false}) {
                Rule down;
                down.pos = {mk_atom(pp.dir_pred(rn, inv, fwd), {X, Y})};
                down.heads = {mk_atom(pp.role_pred(rn, inv), {X, Y})};
                raw.push_back(std::move(down));
                Rule flip;  // forward of a role is backward of its inverse
                flip.pos = {mk_atom(pp.dir_pred(rn, inv, fwd), {X, Y})};
                flip.heads = {mk_atom(pp.dir_pred(rn, !inv, !fwd), {Y, X})};
                raw.push_back(std::move(flip));
            }
        }
    }

    for (const auto& t : prog.triples) {
        TripleId tid = tp.triple(t.label());
        PredId ap = concept_pred_of(pp, t.a);
        PredId bp = concept_pred_of(pp, t.b);
        PredId rf = pp.dir_pred(t.r.name, t.r.inv, true);
        if (!t.safe) {
            Rule r;
            r.pos = {mk_atom(ap, {X})};
            Builtin fn;
            fn.kind = Builtin::Kind::Fn;
            fn.sym = tp.sym_skolem(tid);
            fn.args = {X, Y};
            r.builtins.push_back(std::move(fn));
            r.heads = {mk_atom(rf, {X, Y}), mk_atom(bp, {Y})};
            raw.push_back(std::move(r));
            continue;
        }
        const UnfoldEntry* ue = prog.unfold_sets.find(t.text());
        Arg v0 = term_arg(tp.vnode(tid, 0));
        Arg v1 = term_arg(tp.vnode(tid, 1));
        Rule base;
        base.pos = {mk_atom(ap, {X})};
        if (ue && !ue->unfold_set.empty())
            base.neg = {mk_atom(pp.internal(Tag::In), {X, term_arg(tp.setid(tid))})};
        base.heads = {mk_atom(rf, {X, v0}), mk_atom(bp, {v0})};
        raw.push_back(std::move(base));
        if (!ue) continue;
        if (!ue->self_set.empty()) {  // the role conflicts with itself
            for (int i = 0; i <= 1; ++i) {
                Arg vi = term_arg(tp.vnode(tid, i));
                Arg vn = term_arg(tp.vnode(tid, i + 1));
                Rule chain;
                chain.pos = {mk_atom(ap, {vi})};
                chain.heads = {mk_atom(rf, {vi, vn}), mk_atom(bp, {vn})};
                raw.push_back(std::move(chain));
            }
        }
        for (TermId c : ue->cycle_set) {
            Rule cyc;
            cyc.pos = {mk_atom(ap, {term_arg(c)})};
            cyc.heads = {mk_atom(rf, {term_arg(c), v1}), mk_atom(bp, {v1})};
            raw.push_back(std::move(cyc));
        }
        for (TermId member : ue->unfold_set) {
            Rule inf;
            inf.heads = {mk_atom(pp.internal(Tag::In),
                                 {term_arg(member), term_arg(tp.setid(tid))})};
            raw.push_back(std::move(inf));
        }
    }

    PredId named = pp.internal(Tag::Named);
    for (const auto& a : o.individuals()) {
        Rule f;
        f.heads = {mk_atom(named, {term_arg(tp.const_term(a))})};
        raw.push_back(std::move(f));
    }
    {
        Rule top;  // constants join the congruence domain even without facts
        top.pos = {mk_atom(named, {X})};
        top.heads = {mk_atom(pp.internal(Tag::Top), {X})};
        raw.push_back(std::move(top));
        Rule ni;
        ni.pos = {mk_atom(named, {X}), mk_atom(pp.internal(Tag::Congruent), {X, Y})};
        ni.heads = {mk_atom(pp.internal(Tag::NI), {Y})};
        raw.push_back(std::move(ni));
    }
    for (auto& r : axiomatize_top_equality(tp, pp, o)) raw.push_back(std::move(r));

    std::set<std::string> seen;
    for (auto& r : raw) {
        finalize_rule(r, pp);
        if (seen.insert(print_rule(tp, pp, r)).second) prog.rules.push_back(std::move(r));
    }
    return prog;
}

struct CanonicalModel {
    std::string partition;
    std::vector<RoleExpr> unsafe_roles;
    std::vector<T5Triple> triples;
    UnfoldSets unfold_sets;
    std::vector<std::string> named_individuals;
    bool satisfiable = true;
    size_t facts = 0;
    size_t rules = 0;
    int strata = 0;
    double elapsed_ms = 0.0;

    nlohmann::json stats_json() const {
        nlohmann::json j;
        j["facts"] = facts;
        j["rules"] = rules;
        j["strata"] = strata;
        j["elapsed_ms"] = elapsed_ms;
        j["satisfiable"] = satisfiable;
        return j;
    }
};

// Builds, materializes and seals the canonical model in a fresh partition.
// The ontology must already pass the structural check; pass a precomputed
// analysis to skip re-running it.
inline CanonicalModel build_canonical_model(Store& store, const Ontology& o,
                                            const std::string& partition = "canonical",
                                            const RsaAnalysis* pre = nullptr) {
    auto t0 = std::chrono::steady_clock::now();
    RsaAnalysis local;
    const RsaAnalysis* an = pre;
    if (!an) {
        local = analyze_rsa(store, o);
        an = &local;
    }
    if (!an->forest.ok || !an->equality_violations.empty())
        throw EngineError("ontology fails the structural check; approximate it before "
                          "building the canonical model");

    TermPool& tp = store.terms();
    PredPool& pp = store.preds();
    CanonicalProgram prog = build_canonical_program(tp, pp, o, *an);

    store.create_partition(partition, {});
    store.assert_rules(partition, prog.rules);
    MatStats ms = store.materialize(partition);
    store.seal(partition);

    CanonicalModel cm;
    cm.partition = partition;
    cm.unsafe_roles = an->safety.unsafe;
    cm.triples = std::move(prog.triples);
    cm.unfold_sets = std::move(prog.unfold_sets);
    cm.named_individuals = o.individuals();
    cm.facts = store.fact_count(partition);
    cm.rules = store.rule_count(partition);
    cm.strata = ms.strata;
    cm.elapsed_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    cm.satisfiable =
        store.query_atoms(partition, mk_atom(pp.internal(Tag::Bot), {var_arg(0)})).empty();
    return cm;
}

// True iff the sealed partition holds no bottom instance.
inline bool check_satisfiability(Store& store, const CanonicalModel& cm) {
    PredId bot = store.preds().internal(Tag::Bot);
    return store.query_atoms(cm.partition, mk_atom(bot, {var_arg(0)})).empty();
}

}  // namespace rsacomb
