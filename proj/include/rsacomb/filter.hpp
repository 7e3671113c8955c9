#pragma once

// Query-specific filtering programs.  The canonical model over-approximates
// query matches (anonymous successors are shared); the filter program marks a
// match spurious when it forks at an anonymous node with non-congruent
// parents, cycles through the anonymous part in one direction, or binds an
// answer variable to an anonymous term.  Two equivalent forms are kept: an
// n-ary reference form and a packed form whose bookkeeping predicates are at
// most binary over SKOLEM tuple keys.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsacomb/axioms.hpp"
#include "rsacomb/canonical.hpp"
#include "rsacomb/engine.hpp"
#include "rsacomb/rule.hpp"
#include "rsacomb/terms.hpp"
#include "rsacomb/text.hpp"

namespace rsacomb {

struct UnsatisfiableOntology : EngineError {
    explicit UnsatisfiableOntology(const std::string& m) : EngineError(m) {}
};

enum class FilterMode { Reference, Packed };

inline const char* filter_mode_name(FilterMode m) {
    return m == FilterMode::Packed ? "packed" : "reference";
}

// The bookkeeping predicates a filter program writes; facts live in the
// per-query partition, so the interned ids can be shared across queries.
struct FilterPreds {
    PredId qm, id, fk, sp, aqf, aqb, tqf, tqb, ans;
};

struct FilterProgram {
    FilterMode mode = FilterMode::Packed;
    std::vector<Rule> rules;
    FilterPreds preds{};
    int query_arity = 0;   // |answer vars| + |bound vars|
    int answer_arity = 0;  // |answer vars|
    int bound_arity = 0;   // |bound vars|
};

namespace detail {

// One bound-variable end of a binary query atom.  An object end matches the
// forward copy R#f(s, y); a subject end matches the backward copy R#b(y, t).
// Both literals keep the atom's own argument order — only the superscript
// records which end is the anonymous successor.
struct BoundOcc {
    std::string role;
    bool fwd = true;
    Arg s = 0;      // literal subject (atom order)
    Arg t = 0;      // literal object (atom order)
    Arg other = 0;  // the non-superscripted end
    Arg bound = 0;  // the bound-variable end
    int index = 0;  // 1-based position of the bound variable
};

struct QueryShape {
    std::vector<std::string> vars;  // answer vars then bound vars
    std::map<std::string, int> var_ix;
    std::map<std::string, int> bound_ix;  // 1-based
    std::vector<BoundOcc> occs;
    // Binary atoms whose two ends are both bound variables, as (role, s, t).
    std::vector<std::tuple<std::string, Arg, Arg>> inner_atoms;
};

inline QueryShape query_shape(TermPool& tp, const ConjunctiveQuery& q) {
    QueryShape sh;
    sh.vars = q.all_vars();
    for (size_t i = 0; i < sh.vars.size(); ++i)
        sh.var_ix[sh.vars[i]] = static_cast<int>(i);
    std::vector<std::string> bound = q.bound_vars();
    for (size_t i = 0; i < bound.size(); ++i)
        sh.bound_ix[bound[i]] = static_cast<int>(i) + 1;

    auto arg_of = [&](const QueryTerm& t) -> Arg {
        if (t.is_var) return var_arg(sh.var_ix.at(t.name));
        return term_arg(tp.const_term(t.name));
    };
    for (const auto& a : q.atoms) {
        if (!a.binary) continue;
        bool s_bound = a.s.is_var && sh.bound_ix.count(a.s.name);
        bool t_bound = a.t.is_var && sh.bound_ix.count(a.t.name);
        Arg s = arg_of(a.s), t = arg_of(a.t);
        if (t_bound)
            sh.occs.push_back({a.pred, true, s, t, s, t, sh.bound_ix.at(a.t.name)});
        if (s_bound)
            sh.occs.push_back({a.pred, false, s, t, t, s, sh.bound_ix.at(a.s.name)});
        if (s_bound && t_bound) sh.inner_atoms.emplace_back(a.pred, s, t);
    }
    return sh;
}

inline std::vector<Atom> query_body(TermPool& tp, PredPool& pp,
                                    const ConjunctiveQuery& q,
                                    const QueryShape& sh) {
    std::vector<Atom> body;
    auto arg_of = [&](const QueryTerm& t) -> Arg {
        if (t.is_var) return var_arg(sh.var_ix.at(t.name));
        return term_arg(tp.const_term(t.name));
    };
    for (const auto& a : q.atoms) {
        Atom at;
        if (a.binary) {
            at.pred = pp.role_pred(a.pred, false);
            at.args = {arg_of(a.s), arg_of(a.t)};
        } else {
            at.pred = pp.concept_pred(a.pred);
            at.args = {arg_of(a.s)};
        }
        body.push_back(std::move(at));
    }
    return body;
}

inline void dedup_rules(const TermPool& tp, const PredPool& pp,
                        std::vector<Rule>& rules) {
    std::set<std::string> seen;
    std::vector<Rule> out;
    for (auto& r : rules)
        if (seen.insert(print_rule(tp, pp, r)).second) out.push_back(std::move(r));
    rules = std::move(out);
}

}  // namespace detail

// n-ary form: QM/fk/sp carry the full variable vector, id/AQ*/TQ* append two
// index-constant positions, Ans projects the answer variables.
inline FilterProgram build_filter_reference(TermPool& tp, PredPool& pp,
                                            const ConjunctiveQuery& q) {
    detail::QueryShape sh = detail::query_shape(tp, q);
    const int n = static_cast<int>(sh.vars.size());
    const int m = static_cast<int>(sh.bound_ix.size());

    FilterProgram fp;
    fp.mode = FilterMode::Reference;
    fp.query_arity = n;
    fp.answer_arity = static_cast<int>(q.answer_vars.size());
    fp.bound_arity = m;
    fp.preds = {pp.internal(Tag::QM),  pp.internal(Tag::Id),  pp.internal(Tag::Fk),
                pp.internal(Tag::Sp),  pp.internal(Tag::AQf), pp.internal(Tag::AQb),
                pp.internal(Tag::TQf), pp.internal(Tag::TQb), pp.internal(Tag::Ans)};
    PredId ni = pp.internal(Tag::NI);
    PredId congruent = pp.internal(Tag::Congruent);
    PredId named = pp.internal(Tag::Named);

    std::vector<Arg> all;
    for (int i = 0; i < n; ++i) all.push_back(var_arg(i));
    auto with = [&](std::initializer_list<Arg> extra) {
        std::vector<Arg> v = all;
        for (Arg a : extra) v.push_back(a);
        return v;
    };
    auto idx = [&](int i) { return term_arg(tp.index_term(i)); };
    auto add = [&](Rule r) {
        finalize_rule(r, pp);
        fp.rules.push_back(std::move(r));
    };

    // (1) query match
    {
        Rule r;
        r.pos = detail::query_body(tp, pp, q, sh);
        r.heads = {{fp.preds.qm, all}};
        add(std::move(r));
    }
    // (3a) anonymous bound ends start their own id class
    for (int i = 1; i <= m; ++i) {
        Rule r;
        r.pos = {{fp.preds.qm, all}};
        r.neg = {{ni, {all[fp.answer_arity + i - 1]}}};
        r.heads = {{fp.preds.id, with({idx(i), idx(i)})}};
        add(std::move(r));
    }
    // (3b)/(3c) symmetry and transitivity
    if (m > 0) {
        Arg u = var_arg(n), v = var_arg(n + 1), w = var_arg(n + 2);
        Rule rb;
        rb.pos = {{fp.preds.id, with({u, v})}};
        rb.heads = {{fp.preds.id, with({v, u})}};
        add(std::move(rb));
        Rule rc;
        rc.pos = {{fp.preds.id, with({u, v})}, {fp.preds.id, with({v, w})}};
        rc.heads = {{fp.preds.id, with({u, w})}};
        add(std::move(rc));
    }
    auto dir_atom = [&](const detail::BoundOcc& o) {
        return Atom{pp.dir_pred(o.role, false, o.fwd), {o.s, o.t}};
    };
    // (4) forks: identified anonymous ends with non-congruent parents
    bool any_fork = false;
    for (const auto& o1 : sh.occs)
        for (const auto& o2 : sh.occs) {
            if (o1.other == o2.other) continue;  // NOT congruent(s,s) is dead
            Rule r;
            r.pos = {dir_atom(o1), dir_atom(o2),
                     {fp.preds.id, with({idx(o1.index), idx(o2.index)})}};
            r.neg = {{congruent, {o1.other, o2.other}}};
            r.heads = {{fp.preds.fk, all}};
            add(std::move(r));
            any_fork = true;
        }
    // (5) cycle merge: congruent anonymous parents of identified ends
    for (const auto& o1 : sh.occs)
        for (const auto& o2 : sh.occs) {
            if (!is_var(o1.other) || !sh.bound_ix.count(sh.vars[var_of(o1.other)]))
                continue;
            if (!is_var(o2.other) || !sh.bound_ix.count(sh.vars[var_of(o2.other)]))
                continue;
            int i1 = sh.bound_ix.at(sh.vars[var_of(o1.other)]);
            int i2 = sh.bound_ix.at(sh.vars[var_of(o2.other)]);
            Rule r;
            r.pos = {dir_atom(o1), dir_atom(o2),
                     {fp.preds.id, with({idx(o1.index), idx(o2.index)})},
                     {congruent, {o1.other, o2.other}}};
            r.neg = {{ni, {o1.other}}};
            r.heads = {{fp.preds.id, with({idx(i1), idx(i2)})}};
            add(std::move(r));
        }
    // (6)/(7) anonymous edges between id classes and their transitive closure
    bool any_inner = !sh.inner_atoms.empty();
    if (any_inner) {
        Arg u = var_arg(n), v = var_arg(n + 1), w = var_arg(n + 2);
        for (const auto& [role, s, t] : sh.inner_atoms) {
            int i = sh.bound_ix.at(sh.vars[var_of(s)]);
            int j = sh.bound_ix.at(sh.vars[var_of(t)]);
            for (bool fwd : {true, false}) {
                Rule r;
                r.pos = {{pp.dir_pred(role, false, fwd), {s, t}},
                         {fp.preds.id, with({idx(i), u})},
                         {fp.preds.id, with({idx(j), v})}};
                r.heads = {{fwd ? fp.preds.aqf : fp.preds.aqb, with({u, v})}};
                add(std::move(r));
            }
        }
        for (bool fwd : {true, false}) {
            PredId aq = fwd ? fp.preds.aqf : fp.preds.aqb;
            PredId tq = fwd ? fp.preds.tqf : fp.preds.tqb;
            Rule r1;
            r1.pos = {{aq, with({u, v})}};
            r1.heads = {{tq, with({u, v})}};
            add(std::move(r1));
            Rule r2;
            r2.pos = {{aq, with({u, v})}, {tq, with({v, w})}};
            r2.heads = {{tq, with({u, w})}};
            add(std::move(r2));
        }
    }
    // (8) spurious: anonymous answer, fork, or one-directional cycle
    for (int i = 0; i < fp.answer_arity; ++i) {
        Rule r;
        r.pos = {{fp.preds.qm, all}};
        r.neg = {{named, {all[i]}}};
        r.heads = {{fp.preds.sp, all}};
        add(std::move(r));
    }
    if (any_fork) {
        Rule r;
        r.pos = {{fp.preds.fk, all}};
        r.heads = {{fp.preds.sp, all}};
        add(std::move(r));
    }
    if (any_inner) {
        Arg v = var_arg(n);
        for (bool fwd : {true, false}) {
            Rule r;
            r.pos = {{fwd ? fp.preds.tqf : fp.preds.tqb, with({v, v})}};
            r.heads = {{fp.preds.sp, all}};
            add(std::move(r));
        }
    }
    // (9) answers
    {
        Rule r;
        r.pos = {{fp.preds.qm, all}};
        r.neg = {{fp.preds.sp, all}};
        std::vector<Arg> ans(all.begin(), all.begin() + fp.answer_arity);
        r.heads = {{fp.preds.ans, ans}};
        add(std::move(r));
    }
    detail::dedup_rules(tp, pp, fp.rules);
    return fp;
}

// Packed form: the match key k = SKOLEM(x̄ȳ) and pair keys j = SKOLEM(x̄ȳ,u,v)
// turn QM/fk/sp unary and id/AQ*/TQ* binary; SKOLEM with a bound output
// unpacks, so each reference rule maps one-to-one.
inline FilterProgram build_filter_packed(TermPool& tp, PredPool& pp,
                                         const ConjunctiveQuery& q) {
    detail::QueryShape sh = detail::query_shape(tp, q);
    const int n = static_cast<int>(sh.vars.size());
    const int m = static_cast<int>(sh.bound_ix.size());

    FilterProgram fp;
    fp.mode = FilterMode::Packed;
    fp.query_arity = n;
    fp.answer_arity = static_cast<int>(q.answer_vars.size());
    fp.bound_arity = m;
    fp.preds = {pp.internal(Tag::QM),  pp.internal(Tag::Id),  pp.internal(Tag::Fk),
                pp.internal(Tag::Sp),  pp.internal(Tag::AQf), pp.internal(Tag::AQb),
                pp.internal(Tag::TQf), pp.internal(Tag::TQb), pp.internal(Tag::Ans)};
    PredId ni = pp.internal(Tag::NI);
    PredId congruent = pp.internal(Tag::Congruent);
    PredId named = pp.internal(Tag::Named);

    std::vector<Arg> all;
    for (int i = 0; i < n; ++i) all.push_back(var_arg(i));
    int next_var = n;
    auto fresh = [&]() { return var_arg(next_var++); };
    auto idx = [&](int i) { return term_arg(tp.index_term(i)); };
    // SKOLEM(x̄ȳ, extra..., out)
    auto key = [&](std::initializer_list<Arg> extra, Arg out) {
        Builtin b;
        b.kind = Builtin::Kind::Skolem;
        b.args = all;
        for (Arg a : extra) b.args.push_back(a);
        b.args.push_back(out);
        return b;
    };
    auto add = [&](Rule r) {
        finalize_rule(r, pp);
        fp.rules.push_back(std::move(r));
    };

    // (1)
    {
        Rule r;
        r.pos = detail::query_body(tp, pp, q, sh);
        Arg k = fresh();
        r.builtins = {key({}, k)};
        r.heads = {{fp.preds.qm, {k}}};
        add(std::move(r));
    }
    // (3a)
    for (int i = 1; i <= m; ++i) {
        Rule r;
        Arg k = fresh(), j = fresh();
        r.pos = {{fp.preds.qm, {k}}};
        r.builtins = {key({}, k), key({idx(i), idx(i)}, j)};
        r.neg = {{ni, {all[fp.answer_arity + i - 1]}}};
        r.heads = {{fp.preds.id, {k, j}}};
        add(std::move(r));
    }
    // (3b)/(3c)
    if (m > 0) {
        {
            Rule r;
            Arg k = fresh(), j = fresh(), j2 = fresh(), u = fresh(), v = fresh();
            r.pos = {{fp.preds.id, {k, j}}};
            r.builtins = {key({u, v}, j), key({v, u}, j2)};
            r.heads = {{fp.preds.id, {k, j2}}};
            add(std::move(r));
        }
        {
            Rule r;
            Arg k = fresh(), j = fresh(), l = fresh(), t = fresh();
            Arg u = fresh(), v = fresh(), w = fresh();
            r.pos = {{fp.preds.id, {k, j}}, {fp.preds.id, {k, l}}};
            r.builtins = {key({u, v}, j), key({v, w}, l), key({u, w}, t)};
            r.heads = {{fp.preds.id, {k, t}}};
            add(std::move(r));
        }
    }
    auto dir_atom = [&](const detail::BoundOcc& o) {
        return Atom{pp.dir_pred(o.role, false, o.fwd), {o.s, o.t}};
    };
    // (4)
    bool any_fork = false;
    for (const auto& o1 : sh.occs)
        for (const auto& o2 : sh.occs) {
            if (o1.other == o2.other) continue;
            Rule r;
            Arg k = fresh(), j = fresh();
            r.pos = {dir_atom(o1), dir_atom(o2), {fp.preds.id, {k, j}}};
            r.builtins = {key({}, k), key({idx(o1.index), idx(o2.index)}, j)};
            r.neg = {{congruent, {o1.other, o2.other}}};
            r.heads = {{fp.preds.fk, {k}}};
            add(std::move(r));
            any_fork = true;
        }
    // (5)
    for (const auto& o1 : sh.occs)
        for (const auto& o2 : sh.occs) {
            if (!is_var(o1.other) || !sh.bound_ix.count(sh.vars[var_of(o1.other)]))
                continue;
            if (!is_var(o2.other) || !sh.bound_ix.count(sh.vars[var_of(o2.other)]))
                continue;
            int i1 = sh.bound_ix.at(sh.vars[var_of(o1.other)]);
            int i2 = sh.bound_ix.at(sh.vars[var_of(o2.other)]);
            Rule r;
            Arg k = fresh(), j = fresh(), j2 = fresh();
            r.pos = {dir_atom(o1), dir_atom(o2), {fp.preds.id, {k, j}},
                     {congruent, {o1.other, o2.other}}};
            r.builtins = {key({}, k), key({idx(o1.index), idx(o2.index)}, j),
                          key({idx(i1), idx(i2)}, j2)};
            r.neg = {{ni, {o1.other}}};
            r.heads = {{fp.preds.id, {k, j2}}};
            add(std::move(r));
        }
    // (6)/(7)
    bool any_inner = !sh.inner_atoms.empty();
    if (any_inner) {
        for (const auto& [role, s, t] : sh.inner_atoms) {
            int i = sh.bound_ix.at(sh.vars[var_of(s)]);
            int j = sh.bound_ix.at(sh.vars[var_of(t)]);
            for (bool fwd : {true, false}) {
                Rule r;
                Arg k = fresh(), j1 = fresh(), j2 = fresh(), t3 = fresh();
                Arg v = fresh(), w = fresh();
                r.pos = {{pp.dir_pred(role, false, fwd), {s, t}},
                         {fp.preds.id, {k, j1}},
                         {fp.preds.id, {k, j2}}};
                r.builtins = {key({}, k), key({idx(i), v}, j1), key({idx(j), w}, j2),
                              key({v, w}, t3)};
                r.heads = {{fwd ? fp.preds.aqf : fp.preds.aqb, {k, t3}}};
                add(std::move(r));
            }
        }
        for (bool fwd : {true, false}) {
            PredId aq = fwd ? fp.preds.aqf : fp.preds.aqb;
            PredId tq = fwd ? fp.preds.tqf : fp.preds.tqb;
            {
                Rule r;
                Arg k = fresh(), t = fresh();
                r.pos = {{aq, {k, t}}};
                r.heads = {{tq, {k, t}}};
                add(std::move(r));
            }
            {
                Rule r;
                Arg k = fresh(), j1 = fresh(), j2 = fresh(), t = fresh();
                Arg u = fresh(), v = fresh(), w = fresh();
                r.pos = {{aq, {k, j1}}, {tq, {k, j2}}};
                r.builtins = {key({u, v}, j1), key({v, w}, j2), key({u, w}, t)};
                r.heads = {{tq, {k, t}}};
                add(std::move(r));
            }
        }
    }
    // (8)
    for (int i = 0; i < fp.answer_arity; ++i) {
        Rule r;
        Arg k = fresh();
        r.pos = {{fp.preds.qm, {k}}};
        r.builtins = {key({}, k)};
        r.neg = {{named, {all[i]}}};
        r.heads = {{fp.preds.sp, {k}}};
        add(std::move(r));
    }
    if (any_fork) {
        Rule r;
        Arg k = fresh();
        r.pos = {{fp.preds.fk, {k}}};
        r.heads = {{fp.preds.sp, {k}}};
        add(std::move(r));
    }
    if (any_inner) {
        for (bool fwd : {true, false}) {
            Rule r;
            Arg k = fresh(), j = fresh(), v = fresh();
            r.pos = {{fwd ? fp.preds.tqf : fp.preds.tqb, {k, j}}};
            r.builtins = {key({v, v}, j)};
            r.heads = {{fp.preds.sp, {k}}};
            add(std::move(r));
        }
    }
    // (9)
    {
        Rule r;
        Arg k = fresh();
        r.pos = {{fp.preds.qm, {k}}};
        r.builtins = {key({}, k)};
        r.neg = {{fp.preds.sp, {k}}};
        std::vector<Arg> ans(all.begin(), all.begin() + fp.answer_arity);
        r.heads = {{fp.preds.ans, ans}};
        add(std::move(r));
    }
    detail::dedup_rules(tp, pp, fp.rules);
    return fp;
}

inline FilterProgram build_filter(TermPool& tp, PredPool& pp,
                                  const ConjunctiveQuery& q, FilterMode mode) {
    return mode == FilterMode::Packed ? build_filter_packed(tp, pp, q)
                                      : build_filter_reference(tp, pp, q);
}

struct FilterStats {
    std::string partition;
    FilterMode mode = FilterMode::Packed;
    size_t rules = 0;
    size_t matches = 0;  // QM facts
    size_t answers = 0;
    size_t derived = 0;
    int strata = 0;
    int rounds = 0;
    double elapsed_ms = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["mode"] = filter_mode_name(mode);
        j["rules"] = rules;
        j["matches"] = matches;
        j["answers"] = answers;
        j["derived"] = derived;
        j["strata"] = strata;
        j["rounds"] = rounds;
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }
};

namespace detail {

inline std::string next_filter_partition() {
    static std::atomic<uint64_t> seq{0};
    return "filter:" + std::to_string(seq.fetch_add(1));
}

struct PartitionGuard {
    Store* store;
    std::string name;
    ~PartitionGuard() {
        try {
            store->retract_partition(name);
        } catch (...) {
        }
    }
};

}  // namespace detail

// Runs one filtering step in a private partition reading the sealed canonical
// model, extracts the answers and retracts the partition (store size returns
// to the sealed baseline).  The canonical partition is never rematerialized.
inline AnswerSet answer(Store& store, const CanonicalModel& cm,
                        const ConjunctiveQuery& q,
                        FilterMode mode = FilterMode::Packed,
                        FilterStats* stats = nullptr,
                        std::string partition = "") {
    if (!cm.satisfiable)
        throw UnsatisfiableOntology(
            "canonical model is unsatisfiable; every tuple is entailed");
    auto t0 = std::chrono::steady_clock::now();
    FilterProgram fp = build_filter(store.terms(), store.preds(), q, mode);
    if (partition.empty()) partition = detail::next_filter_partition();
    store.create_partition(partition, {cm.partition});
    detail::PartitionGuard guard{&store, partition};
    store.assert_rules(partition, fp.rules);
    MatStats ms = store.materialize(partition);

    const TermPool& tp = store.terms();
    PredId congruent = store.preds().internal(Tag::Congruent);
    // Defensive: Ans terms are named constants while rule (8a) holds; anything
    // else is rendered through its least congruent named individual.
    auto term_text = [&](TermId t) -> std::string {
        if (tp.kind(t) == TermKind::Const) return tp.const_text(t);
        std::string best;
        for (const auto& ind : cm.named_individuals) {
            TermId c = store.terms().const_term(ind);
            if (store.has_fact(partition, congruent, {t, c}) &&
                (best.empty() || ind < best))
                best = ind;
        }
        return best.empty() ? tp.text(t) : best;
    };

    AnswerSet as;
    as.vars = q.answer_vars;
    std::set<std::vector<std::string>> rows;
    for (const Tuple& t : store.visible_tuples(partition, fp.preds.ans)) {
        std::vector<std::string> row;
        row.reserve(t.size());
        for (TermId x : t) row.push_back(term_text(x));
        rows.insert(std::move(row));
    }
    as.rows.assign(rows.begin(), rows.end());
    as.exact = true;

    double ms_elapsed = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    FilterStats fs;
    fs.partition = partition;
    fs.mode = mode;
    fs.rules = store.rule_count(partition);
    fs.matches = store.visible_tuples(partition, fp.preds.qm).size();
    fs.answers = as.rows.size();
    fs.derived = ms.derived;
    fs.strata = ms.strata;
    fs.rounds = ms.rounds;
    fs.elapsed_ms = ms_elapsed;
    as.stats = fs.to_json();
    if (stats) *stats = fs;
    return as;
}

}  // namespace rsacomb
