#pragma once

// Stratification of a rule set: assigns every predicate a stratum index in
// 1..k such that positive dependencies never decrease the index and negative
// dependencies strictly increase it, with k minimal.  Rejects programs with a
// cycle through negation and reports the offending predicate cycle.

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "rsacomb/rule.hpp"

namespace rsacomb {

struct Strata {
    std::unordered_map<PredId, int> delta;  // predicate -> stratum in 1..k
    int k = 1;
    // groups[i] holds indexes (into the input rule vector) of rules whose
    // evaluation stratum is i+1.
    std::vector<std::vector<size_t>> groups;

    int stratum_of(PredId p) const {
        auto it = delta.find(p);
        return it == delta.end() ? 1 : it->second;
    }
};

inline Strata stratify(const std::vector<Rule>& rules, const PredPool& preds) {
    struct Edge { int src; int dst; int w; };
    std::vector<PredId> ids;
    std::unordered_map<PredId, int> node;
    auto node_of = [&](PredId p) {
        auto it = node.find(p);
        if (it != node.end()) return it->second;
        int n = static_cast<int>(ids.size());
        ids.push_back(p);
        node.emplace(p, n);
        return n;
    };
    std::vector<Edge> edges;
    for (const auto& r : rules) {
        for (const auto& h : r.heads) {
            int dst = node_of(h.pred);
            for (const auto& b : r.pos) edges.push_back({node_of(b.pred), dst, 0});
            for (const auto& b : r.neg) edges.push_back({node_of(b.pred), dst, 1});
        }
    }
    int n = static_cast<int>(ids.size());
    std::vector<std::vector<int>> adj(n);
    for (size_t e = 0; e < edges.size(); ++e) adj[edges[e].src].push_back(static_cast<int>(e));

    // Tarjan SCC, iterative.
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stk;
    int counter = 0, ncomp = 0;
    struct Frame { int v; size_t ei; };
    for (int s = 0; s < n; ++s) {
        if (idx[s] >= 0) continue;
        std::vector<Frame> call{{s, 0}};
        idx[s] = low[s] = counter++;
        stk.push_back(s);
        on_stack[s] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.ei < adj[f.v].size()) {
                int w = edges[adj[f.v][f.ei++]].dst;
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                if (low[f.v] == idx[f.v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == f.v) break;
                    }
                    ++ncomp;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // A negative edge inside one SCC witnesses a cycle through negation.
    for (const auto& e : edges) {
        if (e.w == 1 && comp[e.src] == comp[e.dst]) {
            // Path e.dst -> e.src restricted to the SCC, plus the edge back.
            std::vector<int> prev(n, -1);
            std::vector<int> queue{e.dst};
            prev[e.dst] = e.dst;
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                int v = queue[qi];
                for (int ei : adj[v]) {
                    int w = edges[ei].dst;
                    if (comp[w] != comp[e.src] || prev[w] >= 0) continue;
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
            std::vector<std::string> cyc;
            int v = e.src;
            while (v != e.dst) {
                cyc.push_back(preds.text(ids[v]));
                v = prev[v];
            }
            cyc.push_back(preds.text(ids[e.dst]));
            std::reverse(cyc.begin(), cyc.end());
            std::string msg = "program is not stratifiable; cycle through negation: ";
            for (size_t i = 0; i < cyc.size(); ++i) msg += (i ? " -> " : "") + cyc[i];
            throw StratifyError(msg, cyc);
        }
    }

    // Longest-path strata over the SCC condensation (weights 0/1, base 1).
    // Tarjan numbers components in reverse topological order, so iterate
    // components from high to low.
    std::vector<int> comp_delta(ncomp, 1);
    std::vector<std::vector<const Edge*>> comp_in(ncomp);
    for (const auto& e : edges)
        if (comp[e.src] != comp[e.dst]) comp_in[comp[e.dst]].push_back(&e);
    for (int c = ncomp - 1; c >= 0; --c) {
        for (const Edge* e : comp_in[c])
            comp_delta[c] = std::max(comp_delta[c], comp_delta[comp[e->src]] + e->w);
    }

    Strata out;
    for (int v = 0; v < n; ++v) out.delta[ids[v]] = comp_delta[comp[v]];
    for (const auto& [p, d] : out.delta) {
        (void)p;
        out.k = std::max(out.k, d);
    }
    out.groups.assign(out.k, {});
    for (size_t ri = 0; ri < rules.size(); ++ri) {
        int st = 1;
        for (const auto& h : rules[ri].heads) st = std::max(st, out.delta[h.pred]);
        out.groups[st - 1].push_back(ri);
    }
    return out;
}

}  // namespace rsacomb
