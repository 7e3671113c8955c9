#pragma once

// Translation of axioms into rules: the direct rule reading of each axiom
// shape (existentials become function-term successors), the variant used by
// the structural self-check (existentials become shared fresh constants with
// edge tracking), and the Top/congruence axiomatization every program needs
// to reason modulo derived equality.

#include <string>
#include <vector>

#include "rsacomb/axioms.hpp"
#include "rsacomb/rule.hpp"
#include "rsacomb/terms.hpp"

namespace rsacomb {

inline PredId concept_pred_of(PredPool& pp, const std::string& c) {
    if (is_top(c)) return pp.internal(Tag::Top);
    if (is_bottom(c)) return pp.internal(Tag::Bot);
    return pp.concept_pred(c);
}
inline PredId role_pred_of(PredPool& pp, const RoleExpr& r) {
    return pp.role_pred(r.name, r.inv);
}

inline Atom mk_atom(PredId p, std::vector<Arg> args) {
    Atom a;
    a.pred = p;
    a.args = std::move(args);
    return a;
}

inline TripleLabel triple_of(const Axiom& x) {
    return TripleLabel{x.a, x.r1.name, x.r1.inv, x.b};
}

// The two bridging rules connecting a role name with its inverse predicate.
inline std::vector<Rule> bridge_rules(PredPool& pp, const std::string& role_name) {
    PredId r = pp.role_pred(role_name, false);
    PredId ri = pp.role_pred(role_name, true);
    Rule a;
    a.pos = {mk_atom(r, {var_arg(0), var_arg(1)})};
    a.heads = {mk_atom(ri, {var_arg(1), var_arg(0)})};
    Rule b;
    b.pos = {mk_atom(ri, {var_arg(0), var_arg(1)})};
    b.heads = {mk_atom(r, {var_arg(1), var_arg(0)})};
    return {a, b};
}

namespace detail {

inline void append_bridges_for_axiom(PredPool& pp, const Axiom& x,
                                     std::vector<Rule>& out) {
    auto add = [&](const RoleExpr& r) {
        if (!r.inv) return;
        for (auto& br : bridge_rules(pp, r.name)) out.push_back(std::move(br));
    };
    switch (x.kind) {
        case AxiomKind::SubRole:
            add(x.r1);
            add(x.r2);
            break;
        case AxiomKind::SomeValues:
        case AxiomKind::MaxOne:
        case AxiomKind::Exists:
            add(x.r1);
            break;
        default:
            break;
    }
}

}  // namespace detail

// Rule reading of one axiom.  Union axioms have no direct rule form (they are
// eliminated by shifting) and are rejected.  Existential axioms build their
// successor with a function term bound through an FN builtin.  Whenever an
// axiom mentions an inverse role, the two bridging rules for that role name
// are included as well.
inline std::vector<Rule> translate_axiom(TermPool& tp, PredPool& pp, const Axiom& x) {
    std::vector<Rule> out;
    const Arg X = var_arg(0), Y = var_arg(1), Z = var_arg(2);
    switch (x.kind) {
        case AxiomKind::SubRole: {
            Rule r;
            r.pos = {mk_atom(role_pred_of(pp, x.r1), {X, Y})};
            r.heads = {mk_atom(role_pred_of(pp, x.r2), {X, Y})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::SubClass: {
            Rule r;
            for (const auto& c : x.lhs) r.pos.push_back(mk_atom(concept_pred_of(pp, c), {X}));
            r.heads = {mk_atom(concept_pred_of(pp, x.b), {X})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::Union:
            throw EngineError("union axioms have no direct rule form; shift them first: " +
                              axiom_text(x));
        case AxiomKind::Nominal: {
            Rule r;
            r.pos = {mk_atom(concept_pred_of(pp, x.a), {X})};
            r.heads = {mk_atom(pp.internal(Tag::Congruent),
                               {X, term_arg(tp.const_term(x.ind))})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::SomeValues: {
            Rule r;
            r.pos = {mk_atom(role_pred_of(pp, x.r1), {X, Y}),
                     mk_atom(concept_pred_of(pp, x.a), {Y})};
            r.heads = {mk_atom(concept_pred_of(pp, x.b), {X})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::MaxOne: {
            Rule r;
            r.pos = {mk_atom(concept_pred_of(pp, x.a), {X}),
                     mk_atom(role_pred_of(pp, x.r1), {X, Y}),
                     mk_atom(concept_pred_of(pp, x.b), {Y}),
                     mk_atom(role_pred_of(pp, x.r1), {X, Z}),
                     mk_atom(concept_pred_of(pp, x.b), {Z})};
            r.heads = {mk_atom(pp.internal(Tag::Congruent), {Y, Z})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::Exists: {
            Rule r;
            r.pos = {mk_atom(concept_pred_of(pp, x.a), {X})};
            Builtin fn;
            fn.kind = Builtin::Kind::Fn;
            fn.sym = tp.sym_skolem(tp.triple(triple_of(x)));
            fn.args = {X, Y};
            r.builtins.push_back(std::move(fn));
            r.heads = {mk_atom(role_pred_of(pp, x.r1), {X, Y}),
                       mk_atom(concept_pred_of(pp, x.b), {Y})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::ConceptFact: {
            Rule r;
            r.heads = {mk_atom(concept_pred_of(pp, x.a),
                               {term_arg(tp.const_term(x.ind))})};
            out.push_back(std::move(r));
            break;
        }
        case AxiomKind::RoleFact: {
            Rule r;
            r.heads = {mk_atom(role_pred_of(pp, x.r1),
                               {term_arg(tp.const_term(x.ind)),
                                term_arg(tp.const_term(x.ind2))})};
            out.push_back(std::move(r));
            break;
        }
    }
    detail::append_bridges_for_axiom(pp, x, out);
    return out;
}

// Variant for the structural self-check: the existential successor is the
// axiom's shared fresh constant and the candidate edge is recorded.
inline std::vector<Rule> translate_axiom_check(TermPool& tp, PredPool& pp, const Axiom& x) {
    if (x.kind != AxiomKind::Exists) return translate_axiom(tp, pp, x);
    std::vector<Rule> out;
    const Arg X = var_arg(0);
    TermId u = tp.unode(tp.triple(triple_of(x)));
    Rule r;
    r.pos = {mk_atom(concept_pred_of(pp, x.a), {X})};
    r.heads = {mk_atom(role_pred_of(pp, x.r1), {X, term_arg(u)}),
               mk_atom(concept_pred_of(pp, x.b), {term_arg(u)}),
               mk_atom(pp.internal(Tag::PE), {X, term_arg(u)})};
    out.push_back(std::move(r));
    detail::append_bridges_for_axiom(pp, x, out);
    return out;
}

// Full rule program of an ontology (no union axioms).
inline std::vector<Rule> pi_rules(TermPool& tp, PredPool& pp, const Ontology& o) {
    std::vector<Rule> out;
    for (const auto& x : o.axioms())
        for (auto& r : translate_axiom(tp, pp, x)) out.push_back(std::move(r));
    return out;
}

// Top membership for every term in an atom, congruence axioms, and atom-wise
// substitution rules, over the given signature.
inline std::vector<Rule> axiomatize_top_equality(TermPool& tp, PredPool& pp,
                                                 const std::vector<std::string>& concepts,
                                                 const std::vector<std::string>& role_names) {
    (void)tp;
    std::vector<Rule> out;
    const Arg X = var_arg(0), Y = var_arg(1), Z = var_arg(2);
    PredId top = pp.internal(Tag::Top);
    PredId cong = pp.internal(Tag::Congruent);
    for (const auto& c : concepts) {
        if (is_top(c) || is_bottom(c)) continue;
        Rule r;
        r.pos = {mk_atom(pp.concept_pred(c), {X})};
        r.heads = {mk_atom(top, {X})};
        out.push_back(std::move(r));
    }
    for (const auto& rn : role_names) {
        Rule r;
        r.pos = {mk_atom(pp.role_pred(rn, false), {X, Y})};
        r.heads = {mk_atom(top, {X}), mk_atom(top, {Y})};
        out.push_back(std::move(r));
    }
    {
        Rule refl;
        refl.pos = {mk_atom(top, {X})};
        refl.heads = {mk_atom(cong, {X, X})};
        out.push_back(std::move(refl));
        Rule sym;
        sym.pos = {mk_atom(cong, {X, Y})};
        sym.heads = {mk_atom(cong, {Y, X})};
        out.push_back(std::move(sym));
        Rule trans;
        trans.pos = {mk_atom(cong, {X, Y}), mk_atom(cong, {Y, Z})};
        trans.heads = {mk_atom(cong, {X, Z})};
        out.push_back(std::move(trans));
    }
    for (const auto& c : concepts) {
        if (is_top(c) || is_bottom(c)) continue;
        Rule r;
        r.pos = {mk_atom(pp.concept_pred(c), {X}), mk_atom(cong, {X, Y})};
        r.heads = {mk_atom(pp.concept_pred(c), {Y})};
        out.push_back(std::move(r));
    }
    for (const auto& rn : role_names) {
        PredId rp = pp.role_pred(rn, false);
        Rule s1;
        s1.pos = {mk_atom(rp, {X, Y}), mk_atom(cong, {X, Z})};
        s1.heads = {mk_atom(rp, {Z, Y})};
        out.push_back(std::move(s1));
        Rule s2;
        s2.pos = {mk_atom(rp, {X, Y}), mk_atom(cong, {Y, Z})};
        s2.heads = {mk_atom(rp, {X, Z})};
        out.push_back(std::move(s2));
    }
    return out;
}

inline std::vector<Rule> axiomatize_top_equality(TermPool& tp, PredPool& pp,
                                                 const Ontology& o) {
    return axiomatize_top_equality(tp, pp, o.concepts(), o.role_names());
}

}  // namespace rsacomb
