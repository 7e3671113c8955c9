#pragma once

// Stratified datalog engine with set semantics, negation as failure over
// lower strata, SKOLEM/FN builtins and named fact partitions.  Evaluation is
// semi-naive within each stratum.  All iteration orders are insertion orders,
// so materialization is deterministic for a fixed assert sequence.

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rsacomb/rule.hpp"
#include "rsacomb/strata.hpp"
#include "rsacomb/terms.hpp"

namespace rsacomb {

using Tuple = std::vector<TermId>;

struct TupleHash {
    size_t operator()(const Tuple& t) const {
        size_t h = 1469598103934665603ull;
        for (TermId x : t) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class Relation {
public:
    int arity = -1;

    bool insert(const Tuple& t) {
        if (!set_.insert(t).second) return false;
        tuples_.push_back(t);
        for (size_t pos = 0; pos < index_.size(); ++pos) {
            if (!index_built_.empty() && index_built_[pos])
                index_[pos][t[pos]].push_back(static_cast<uint32_t>(tuples_.size() - 1));
        }
        return true;
    }
    bool contains(const Tuple& t) const { return set_.count(t) != 0; }
    size_t size() const { return tuples_.size(); }
    const std::vector<Tuple>& tuples() const { return tuples_; }

    const std::vector<uint32_t>& bucket(size_t pos, TermId key) {
        ensure_index_(pos);
        static const std::vector<uint32_t> empty;
        auto it = index_[pos].find(key);
        return it == index_[pos].end() ? empty : it->second;
    }

private:
    void ensure_index_(size_t pos) {
        if (index_.empty()) {
            index_.resize(arity);
            index_built_.assign(arity, false);
        }
        if (index_built_[pos]) return;
        for (uint32_t i = 0; i < tuples_.size(); ++i)
            index_[pos][tuples_[i][pos]].push_back(i);
        index_built_[pos] = true;
    }

    std::vector<Tuple> tuples_;
    std::unordered_set<Tuple, TupleHash> set_;
    std::vector<std::unordered_map<TermId, std::vector<uint32_t>>> index_;
    std::vector<bool> index_built_;
};

struct MatStats {
    size_t derived = 0;
    int rounds = 0;
    int strata = 0;
};

class Store {
public:
    explicit Store(int depth_bound = 64) : depth_bound_(depth_bound) {}

    TermPool& terms() { return terms_; }
    const TermPool& terms() const { return terms_; }
    PredPool& preds() { return preds_; }
    const PredPool& preds() const { return preds_; }

    int depth_bound() const { return depth_bound_; }
    void set_depth_bound(int d) { depth_bound_ = d; }

    void create_partition(const std::string& name,
                          const std::vector<std::string>& reads = {}) {
        std::unique_lock lk(mu_);
        if (parts_.count(name)) throw EngineError("partition already exists: " + name);
        for (const auto& r : reads)
            if (!parts_.count(r))
                throw EngineError("partition reads unknown partition: " + r);
        auto p = std::make_unique<Partition>();
        p->name = name;
        p->reads = reads;
        parts_.emplace(name, std::move(p));
    }

    bool has_partition(const std::string& name) const {
        std::shared_lock lk(mu_);
        return parts_.count(name) != 0;
    }

    void assert_rule(const std::string& part, Rule r) {
        Partition& p = get_(part);
        if (p.sealed) throw EngineError("partition is sealed: " + part);
        finalize_rule(r, preds_);
        for (const auto& h : r.heads) fix_arity_(p, h);
        for (const auto& b : r.pos) fix_arity_(p, b);
        for (const auto& b : r.neg) fix_arity_(p, b);
        if (p.rule_set.insert(rule_key_(r)).second) p.rules.push_back(std::move(r));
    }

    void assert_rules(const std::string& part, const std::vector<Rule>& rules) {
        for (const auto& r : rules) {
            if (r.is_fact() && r.nvars == 0) {
                for (const auto& h : r.heads) {
                    Tuple t;
                    for (Arg a : h.args) t.push_back(term_of(a));
                    assert_fact(part, h.pred, t);
                }
            } else {
                assert_rule(part, r);
            }
        }
    }

    // Idempotent; duplicate facts (including facts visible via read
    // partitions) are ignored.
    void assert_fact(const std::string& part, PredId pred, const Tuple& t) {
        Partition& p = get_(part);
        if (p.sealed) throw EngineError("partition is sealed: " + part);
        Relation& rel = rel_(p, pred, static_cast<int>(t.size()));
        if (visible_contains_(p, pred, t)) return;
        rel.insert(t);
    }

    MatStats materialize(const std::string& part) {
        Partition& p = get_(part);
        if (p.sealed) throw EngineError("cannot materialize sealed partition: " + part);
        std::vector<Partition*> vis = visible_(p);
        for (Partition* q : vis)
            if (q != &p && !q->sealed)
                throw EngineError("read partition must be sealed before materialize: " +
                                  q->name);
        {
            std::unique_lock lk(mu_);
            ++mat_counts_[p.name];
            ++total_materializations_;
        }
        Strata st = stratify(p.rules, preds_);
        MatStats stats;
        stats.strata = st.k;
        for (int s = 0; s < st.k; ++s) {
            const auto& group = st.groups[s];
            if (group.empty()) continue;
            // Tuples inserted before this round started, per predicate.
            std::unordered_map<PredId, size_t> round_base;
            bool first_round = true;
            while (true) {
                ++stats.rounds;
                std::unordered_map<PredId, size_t> size_now;
                for (auto& [pid, rel] : p.rels) size_now[pid] = rel.size();
                size_t before = stats.derived;
                for (size_t ri : group) {
                    const Rule& r = p.rules[ri];
                    if (first_round) {
                        eval_rule_(p, vis, r, -1, 0, 0, stats);
                    } else {
                        // Delta passes: pin each positive atom whose predicate
                        // grew during the previous round.
                        for (size_t ai = 0; ai < r.pos.size(); ++ai) {
                            PredId pid = r.pos[ai].pred;
                            auto relit = p.rels.find(pid);
                            if (relit == p.rels.end()) continue;
                            size_t base = round_base.count(pid) ? round_base[pid] : 0;
                            size_t top = size_now.count(pid) ? size_now[pid]
                                                             : relit->second.size();
                            if (top > base)
                                eval_rule_(p, vis, r, static_cast<int>(ai), base, top, stats);
                        }
                    }
                }
                round_base = std::move(size_now);
                first_round = false;
                if (stats.derived == before) break;
            }
        }
        return stats;
    }

    void seal(const std::string& part) { get_(part).sealed = true; }
    bool sealed(const std::string& part) { return get_(part).sealed; }

    void retract_partition(const std::string& part) {
        std::unique_lock lk(mu_);
        auto it = parts_.find(part);
        if (it == parts_.end()) throw EngineError("unknown partition: " + part);
        for (const auto& [name, q] : parts_)
            for (const auto& rd : q->reads)
                if (rd == part && name != part)
                    throw EngineError("partition " + name + " still reads " + part);
        parts_.erase(it);
    }

    // All matches of a single atom pattern over the partition and its read
    // partitions, as full tuples, deduplicated, in insertion order.
    std::vector<Tuple> query_atoms(const std::string& part, const Atom& pattern) {
        Partition& p = get_(part);
        std::vector<Partition*> vis = visible_(p);
        std::vector<Tuple> out;
        std::unordered_set<Tuple, TupleHash> seen;
        std::vector<TermId> binding(count_vars_(pattern), kNoTerm);
        for (Partition* q : vis) {
            auto it = q->rels.find(pattern.pred);
            if (it == q->rels.end()) continue;
            for (const Tuple& t : it->second.tuples()) {
                std::fill(binding.begin(), binding.end(), kNoTerm);
                if (match_tuple_(pattern, t, binding) && seen.insert(t).second)
                    out.push_back(t);
            }
        }
        return out;
    }

    // Visible extension of one predicate (read partitions first, then own),
    // deduplicated, insertion order.
    std::vector<Tuple> visible_tuples(const std::string& part, PredId pred) {
        Atom pat;
        pat.pred = pred;
        Partition& p = get_(part);
        auto it = p.rels.find(pred);
        int ar = it != p.rels.end() ? it->second.arity : -1;
        if (ar < 0) {
            for (Partition* q : visible_(p)) {
                auto qit = q->rels.find(pred);
                if (qit != q->rels.end()) { ar = qit->second.arity; break; }
            }
        }
        if (ar < 0) return {};
        for (int i = 0; i < ar; ++i) pat.args.push_back(var_arg(i));
        return query_atoms(part, pat);
    }

    bool has_fact(const std::string& part, PredId pred, const Tuple& t) {
        Partition& p = get_(part);
        return visible_contains_(p, pred, t);
    }

    // Predicates with at least one fact visible from the partition.
    std::vector<PredId> visible_preds(const std::string& part) {
        Partition& p = get_(part);
        std::vector<PredId> out;
        std::unordered_set<PredId> seen;
        for (Partition* q : visible_(p))
            for (const auto& [pid, rel] : q->rels)
                if (rel.size() > 0 && seen.insert(pid).second) out.push_back(pid);
        std::sort(out.begin(), out.end());
        return out;
    }

    size_t fact_count(const std::string& part) {
        Partition& p = get_(part);
        size_t n = 0;
        for (const auto& [pid, rel] : p.rels) {
            (void)pid;
            n += rel.size();
        }
        return n;
    }

    size_t total_facts() const {
        std::shared_lock lk(mu_);
        size_t n = 0;
        for (const auto& [name, p] : parts_) {
            (void)name;
            for (const auto& [pid, rel] : p->rels) {
                (void)pid;
                n += rel.size();
            }
        }
        return n;
    }

    size_t rule_count(const std::string& part) { return get_(part).rules.size(); }

    int materialize_count(const std::string& part) const {
        std::shared_lock lk(mu_);
        auto it = mat_counts_.find(part);
        return it == mat_counts_.end() ? 0 : it->second;
    }
    uint64_t total_materializations() const { return total_materializations_; }

    Strata stratify_partition(const std::string& part) {
        Partition& p = get_(part);
        return stratify(p.rules, preds_);
    }

private:
    struct Partition {
        std::string name;
        bool sealed = false;
        std::vector<std::string> reads;
        // std::map keeps per-predicate iteration deterministic.
        std::map<PredId, Relation> rels;
        std::vector<Rule> rules;
        std::unordered_set<std::string> rule_set;
    };

    Partition& get_(const std::string& name) {
        std::shared_lock lk(mu_);
        auto it = parts_.find(name);
        if (it == parts_.end()) throw EngineError("unknown partition: " + name);
        return *it->second;
    }

    std::vector<Partition*> visible_(Partition& p) {
        std::vector<Partition*> out;
        {
            std::shared_lock lk(mu_);
            for (const auto& r : p.reads) {
                auto it = parts_.find(r);
                if (it == parts_.end())
                    throw EngineError("partition reads unknown partition: " + r);
                out.push_back(it->second.get());
            }
        }
        out.push_back(&p);
        return out;
    }

    Relation& rel_(Partition& p, PredId pred, int arity) {
        Relation& rel = p.rels[pred];
        if (rel.arity < 0) {
            // Arity must agree with what read partitions already use.
            for (Partition* q : visible_(p)) {
                if (q == &p) continue;
                auto it = q->rels.find(pred);
                if (it != q->rels.end() && it->second.arity >= 0 &&
                    it->second.arity != arity)
                    throw EngineError("arity mismatch for predicate " + preds_.text(pred));
            }
            rel.arity = arity;
        }
        if (rel.arity != arity)
            throw EngineError("arity mismatch for predicate " + preds_.text(pred));
        return rel;
    }

    void fix_arity_(Partition& p, const Atom& a) {
        rel_(p, a.pred, static_cast<int>(a.args.size()));
    }

    std::string rule_key_(const Rule& r) const {
        return print_rule(terms_, preds_, r);
    }

    bool visible_contains_(Partition& p, PredId pred, const Tuple& t) {
        for (Partition* q : visible_(p)) {
            auto it = q->rels.find(pred);
            if (it != q->rels.end() && it->second.contains(t)) return true;
        }
        return false;
    }

    static int count_vars_(const Atom& a) {
        int mx = 0;
        for (Arg x : a.args)
            if (is_var(x)) mx = std::max(mx, var_of(x) + 1);
        return mx;
    }

    static bool match_tuple_(const Atom& pattern, const Tuple& t,
                             std::vector<TermId>& binding) {
        if (t.size() != pattern.args.size()) return false;
        for (size_t i = 0; i < t.size(); ++i) {
            Arg a = pattern.args[i];
            if (is_var(a)) {
                TermId& slot = binding[var_of(a)];
                if (slot == kNoTerm)
                    slot = t[i];
                else if (slot != t[i])
                    return false;
            } else if (term_of(a) != t[i]) {
                return false;
            }
        }
        return true;
    }

    // --- rule evaluation -----------------------------------------------

    enum class StepKind : uint8_t { Pos, Neg, BuiltinStep };
    struct Step {
        StepKind kind;
        size_t idx;
    };

    size_t visible_size_(Partition& p, std::vector<Partition*>& vis, PredId pred) {
        (void)p;
        size_t n = 0;
        for (Partition* q : vis) {
            auto it = q->rels.find(pred);
            if (it != q->rels.end()) n += it->second.size();
        }
        return n;
    }

    std::vector<Step> schedule_(Partition& p, std::vector<Partition*>& vis,
                                const Rule& r, int delta_atom) {
        std::vector<bool> bound(r.nvars, false);
        std::vector<bool> done_pos(r.pos.size(), false), done_neg(r.neg.size(), false),
            done_b(r.builtins.size(), false);
        std::vector<Step> steps;
        auto mark_atom = [&](const Atom& a) {
            for (Arg x : a.args)
                if (is_var(x)) bound[var_of(x)] = true;
        };
        auto all_bound = [&](const Atom& a) {
            for (Arg x : a.args)
                if (is_var(x) && !bound[var_of(x)]) return false;
            return true;
        };
        if (delta_atom >= 0) {
            steps.push_back({StepKind::Pos, static_cast<size_t>(delta_atom)});
            done_pos[delta_atom] = true;
            mark_atom(r.pos[delta_atom]);
        }
        size_t remaining = r.pos.size() + r.neg.size() + r.builtins.size() - steps.size();
        while (remaining > 0) {
            bool progressed = false;
            for (size_t i = 0; i < r.builtins.size(); ++i) {
                if (done_b[i]) continue;
                const Builtin& b = r.builtins[i];
                size_t n = b.args.size();
                bool ins = true;
                for (size_t j = 0; j + 1 < n; ++j)
                    if (is_var(b.args[j]) && !bound[var_of(b.args[j])]) ins = false;
                bool out = n == 0 ||
                           (!is_var(b.args[n - 1]) || bound[var_of(b.args[n - 1])]);
                bool ready = b.kind == Builtin::Kind::Fn ? ins : (ins || out);
                if (ready) {
                    steps.push_back({StepKind::BuiltinStep, i});
                    done_b[i] = true;
                    for (Arg x : b.args)
                        if (is_var(x)) bound[var_of(x)] = true;
                    --remaining;
                    progressed = true;
                }
            }
            for (size_t i = 0; i < r.neg.size(); ++i) {
                if (done_neg[i] || !all_bound(r.neg[i])) continue;
                steps.push_back({StepKind::Neg, i});
                done_neg[i] = true;
                --remaining;
                progressed = true;
            }
            if (remaining == 0) break;
            // Smallest visible relation first among positive atoms, preferring
            // atoms that already have a bound or constant argument.
            int best = -1;
            std::tuple<int, size_t, size_t> best_cost{2, SIZE_MAX, SIZE_MAX};
            for (size_t i = 0; i < r.pos.size(); ++i) {
                if (done_pos[i]) continue;
                const Atom& a = r.pos[i];
                bool anchored = false;
                for (Arg x : a.args)
                    if (!is_var(x) || bound[var_of(x)]) anchored = true;
                std::tuple<int, size_t, size_t> cost{anchored ? 0 : 1,
                                                     visible_size_(p, vis, a.pred), i};
                if (best < 0 || cost < best_cost) {
                    best = static_cast<int>(i);
                    best_cost = cost;
                }
            }
            if (best >= 0) {
                steps.push_back({StepKind::Pos, static_cast<size_t>(best)});
                done_pos[best] = true;
                mark_atom(r.pos[best]);
                --remaining;
                progressed = true;
            } else if (!progressed) {
                throw EngineError("rule cannot be scheduled (builtin inputs never bound)");
            }
        }
        return steps;
    }

    bool unify_(Arg a, TermId t, std::vector<TermId>& bind,
                std::vector<int>& trail) {
        if (!is_var(a)) return term_of(a) == t;
        TermId& slot = bind[var_of(a)];
        if (slot == kNoTerm) {
            slot = t;
            trail.push_back(var_of(a));
            return true;
        }
        return slot == t;
    }

    TermId arg_value_(Arg a, const std::vector<TermId>& bind) {
        return is_var(a) ? bind[var_of(a)] : term_of(a);
    }

    void eval_rule_(Partition& p, std::vector<Partition*>& vis, const Rule& r,
                    int delta_atom, size_t delta_begin, size_t delta_end,
                    MatStats& stats) {
        std::vector<Step> steps = schedule_(p, vis, r, delta_atom);
        std::vector<TermId> bind(r.nvars, kNoTerm);
        exec_step_(p, vis, r, steps, 0, bind, delta_atom, delta_begin, delta_end, stats);
    }

    void exec_step_(Partition& p, std::vector<Partition*>& vis, const Rule& r,
                    const std::vector<Step>& steps, size_t si,
                    std::vector<TermId>& bind, int delta_atom, size_t delta_begin,
                    size_t delta_end, MatStats& stats) {
        if (si == steps.size()) {
            for (const Atom& h : r.heads) {
                Tuple t;
                t.reserve(h.args.size());
                for (Arg a : h.args) t.push_back(arg_value_(a, bind));
                if (visible_contains_(p, h.pred, t)) continue;
                rel_(p, h.pred, static_cast<int>(t.size())).insert(t);
                ++stats.derived;
            }
            return;
        }
        const Step& st = steps[si];
        if (st.kind == StepKind::Neg) {
            const Atom& a = r.neg[st.idx];
            Tuple t;
            t.reserve(a.args.size());
            for (Arg x : a.args) t.push_back(arg_value_(x, bind));
            if (!visible_contains_(p, a.pred, t))
                exec_step_(p, vis, r, steps, si + 1, bind, delta_atom, delta_begin,
                           delta_end, stats);
            return;
        }
        if (st.kind == StepKind::BuiltinStep) {
            const Builtin& b = r.builtins[st.idx];
            size_t n = b.args.size();
            std::vector<int> trail;
            bool ok = true;
            bool ins_bound = true;
            for (size_t j = 0; j + 1 < n; ++j) {
                Arg x = b.args[j];
                if (is_var(x) && bind[var_of(x)] == kNoTerm) ins_bound = false;
            }
            if (ins_bound) {
                std::vector<TermId> ins;
                for (size_t j = 0; j + 1 < n; ++j) ins.push_back(arg_value_(b.args[j], bind));
                TermId t;
                if (b.kind == Builtin::Kind::Skolem) {
                    t = terms_.packed(ins);
                } else {
                    t = terms_.fnapp(b.sym, ins);
                    if (terms_.depth(t) > depth_bound_)
                        throw DepthError("function term depth exceeds bound " +
                                         std::to_string(depth_bound_) + ": " +
                                         terms_.text(t));
                }
                ok = n == 0 || unify_(b.args[n - 1], t, bind, trail);
            } else {
                // SKOLEM unpack: output must be a packed term of equal width.
                TermId out = arg_value_(b.args[n - 1], bind);
                if (out == kNoTerm || terms_.kind(out) != TermKind::Packed ||
                    terms_.args(out).size() != n - 1) {
                    ok = false;
                } else {
                    const auto& parts = terms_.args(out);
                    for (size_t j = 0; ok && j + 1 < n; ++j)
                        ok = unify_(b.args[j], parts[j], bind, trail);
                }
            }
            if (ok)
                exec_step_(p, vis, r, steps, si + 1, bind, delta_atom, delta_begin,
                           delta_end, stats);
            for (int v : trail) bind[v] = kNoTerm;
            return;
        }
        const Atom& a = r.pos[st.idx];
        bool is_delta = delta_atom >= 0 && st.idx == static_cast<size_t>(delta_atom);
        // Candidate ranges: every visible relation, or only the delta slice of
        // the partition's own relation for the pinned atom.
        for (Partition* q : vis) {
            if (is_delta && q != &p) continue;
            auto it = q->rels.find(a.pred);
            if (it == q->rels.end()) continue;
            Relation& rel = it->second;
            size_t lo = is_delta ? delta_begin : 0;
            size_t hi = is_delta ? std::min(delta_end, rel.size()) : rel.size();
            // Prefer an index bucket when some argument is already fixed.
            int ipos = -1;
            TermId ikey = kNoTerm;
            for (size_t j = 0; j < a.args.size(); ++j) {
                TermId v = arg_value_(a.args[j], bind);
                if (v != kNoTerm) {
                    ipos = static_cast<int>(j);
                    ikey = v;
                    break;
                }
            }
            // Leaf insertions may grow this very relation, so candidate rows
            // are copied before recursing.
            auto try_tuple = [&](Tuple t) {
                std::vector<int> trail;
                bool ok = true;
                for (size_t j = 0; ok && j < a.args.size(); ++j)
                    ok = unify_(a.args[j], t[j], bind, trail);
                if (ok)
                    exec_step_(p, vis, r, steps, si + 1, bind, delta_atom, delta_begin,
                               delta_end, stats);
                for (int v : trail) bind[v] = kNoTerm;
            };
            if (ipos >= 0 && !is_delta) {
                std::vector<uint32_t> bucket = rel.bucket(ipos, ikey);
                for (uint32_t ti : bucket)
                    if (ti < hi) try_tuple(rel.tuples()[ti]);
            } else {
                for (size_t ti = lo; ti < hi && ti < rel.tuples().size(); ++ti)
                    try_tuple(rel.tuples()[ti]);
            }
        }
    }

    mutable std::shared_mutex mu_;
    TermPool terms_;
    PredPool preds_;
    std::map<std::string, std::unique_ptr<Partition>> parts_;
    int depth_bound_;
    std::map<std::string, int> mat_counts_;
    std::atomic<uint64_t> total_materializations_{0};
};

}  // namespace rsacomb
