#pragma once

// Shared test helpers.  NaiveProgram is a deliberately simple datalog
// evaluator — full re-derivation each round, no indexes, no deltas — used as
// an independent reference for the engine's semi-naive materialization.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rsacomb/engine.hpp"
#include "rsacomb/strata.hpp"
#include "rsacomb/text.hpp"

namespace testutil {

using namespace rsacomb;

struct NaiveProgram {
    TermPool* tp = nullptr;
    PredPool* pp = nullptr;
    std::vector<Rule> rules;  // must be finalized
    std::map<PredId, std::set<Tuple>> facts;
    int max_rounds = 10000;

    void add_fact(PredId p, Tuple t) { facts[p].insert(std::move(t)); }

    bool has(PredId p, const Tuple& t) const {
        auto it = facts.find(p);
        return it != facts.end() && it->second.count(t);
    }

    std::set<Tuple> rel(PredId p) const {
        auto it = facts.find(p);
        return it == facts.end() ? std::set<Tuple>{} : it->second;
    }

    void run() {
        Strata s = stratify(rules, *pp);
        for (const auto& group : s.groups) {
            bool changed = true;
            int rounds = 0;
            while (changed) {
                if (++rounds > max_rounds) throw std::runtime_error("naive evaluator diverged");
                changed = false;
                for (size_t ri : group) {
                    const Rule& r = rules[ri];
                    std::vector<TermId> binding(r.nvars, kNoTerm);
                    changed |= match_(r, 0, binding);
                }
            }
        }
    }

private:
    bool bind_(const Atom& a, const Tuple& t, std::vector<TermId>& b,
               std::vector<int>& trail) {
        for (size_t i = 0; i < a.args.size(); ++i) {
            Arg arg = a.args[i];
            if (is_var(arg)) {
                int v = var_of(arg);
                if (b[v] == kNoTerm) {
                    b[v] = t[i];
                    trail.push_back(v);
                } else if (b[v] != t[i]) {
                    return false;
                }
            } else if (term_of(arg) != t[i]) {
                return false;
            }
        }
        return true;
    }

    Tuple image_(const Atom& a, const std::vector<TermId>& b) {
        Tuple t;
        for (Arg arg : a.args) t.push_back(is_var(arg) ? b[var_of(arg)] : term_of(arg));
        return t;
    }

    bool match_(const Rule& r, size_t i, std::vector<TermId>& b) {
        if (i == r.pos.size()) return finish_(r, b);
        bool changed = false;
        auto snapshot = facts[r.pos[i].pred];  // copy: heads may touch the same pred
        for (const auto& t : snapshot) {
            if (t.size() != r.pos[i].args.size()) continue;
            std::vector<int> trail;
            if (bind_(r.pos[i], t, b, trail)) changed |= match_(r, i + 1, b);
            for (int v : trail) b[v] = kNoTerm;
        }
        return changed;
    }

    bool finish_(const Rule& r, std::vector<TermId>& b) {
        std::vector<int> trail;
        for (const auto& bi : r.builtins) {
            std::vector<TermId> ins;
            for (size_t k = 0; k + 1 < bi.args.size(); ++k) {
                Arg a = bi.args[k];
                TermId t = is_var(a) ? b[var_of(a)] : term_of(a);
                ins.push_back(t);
            }
            Arg out = bi.args.back();
            bool ins_bound = true;
            for (TermId t : ins)
                if (t == kNoTerm) ins_bound = false;
            TermId result = kNoTerm;
            if (bi.kind == Builtin::Kind::Fn) {
                if (!ins_bound) { unwind_(b, trail); return false; }
                result = tp->fnapp(bi.sym, ins);
            } else if (ins_bound) {
                result = tp->packed(ins);
            } else {
                // unpack: out must be bound to a packed term of matching width
                TermId o = is_var(out) ? b[var_of(out)] : term_of(out);
                if (o == kNoTerm || tp->kind(o) != TermKind::Packed) { unwind_(b, trail); return false; }
                const auto& parts = tp->args(o);
                if (parts.size() != ins.size()) { unwind_(b, trail); return false; }
                bool ok = true;
                for (size_t k = 0; k < ins.size(); ++k) {
                    Arg a = bi.args[k];
                    if (!is_var(a)) {
                        if (term_of(a) != parts[k]) ok = false;
                    } else if (b[var_of(a)] == kNoTerm) {
                        b[var_of(a)] = parts[k];
                        trail.push_back(var_of(a));
                    } else if (b[var_of(a)] != parts[k]) {
                        ok = false;
                    }
                }
                if (!ok) { unwind_(b, trail); return false; }
                result = o;
            }
            if (result != kNoTerm) {
                if (is_var(out)) {
                    int v = var_of(out);
                    if (b[v] == kNoTerm) {
                        b[v] = result;
                        trail.push_back(v);
                    } else if (b[v] != result) {
                        unwind_(b, trail);
                        return false;
                    }
                } else if (term_of(out) != result) {
                    unwind_(b, trail);
                    return false;
                }
            }
        }
        for (const auto& a : r.neg) {
            if (has(a.pred, image_(a, b))) {
                unwind_(b, trail);
                return false;
            }
        }
        bool changed = false;
        for (const auto& h : r.heads) changed |= facts[h.pred].insert(image_(h, b)).second;
        unwind_(b, trail);
        return changed;
    }

    void unwind_(std::vector<TermId>& b, const std::vector<int>& trail) {
        for (int v : trail) b[v] = kNoTerm;
    }
};

inline Ontology mkont(const std::string& text) {
    OntologyParse p = parse_ontology(text);
    if (!p.ok()) {
        std::string msg = "fixture ontology failed to parse:";
        for (const auto& e : p.errors)
            msg += "\n  line " + std::to_string(e.span.line) + ": " + e.message;
        throw std::runtime_error(msg);
    }
    return p.ontology;
}

inline ConjunctiveQuery mkquery(const std::string& text) {
    QueryParse p = parse_query(text);
    if (!p.ok()) {
        std::string msg = "fixture query failed to parse:";
        for (const auto& e : p.errors)
            msg += "\n  line " + std::to_string(e.span.line) + ": " + e.message;
        throw std::runtime_error(msg);
    }
    return p.query;
}

inline std::set<std::vector<std::string>> row_set(const std::vector<std::vector<std::string>>& rows) {
    return {rows.begin(), rows.end()};
}

}  // namespace testutil
