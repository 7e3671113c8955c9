#pragma once

// End-to-end answering pipeline: structural membership check, sound
// approximation when the ontology falls outside the tractable class (or when
// forced), one shared canonical-model materialization, then per-query
// filtering — optionally across a small thread pool, each query in a private
// partition over the sealed canonical partition.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rsacomb/approx.hpp"
#include "rsacomb/canonical.hpp"
#include "rsacomb/filter.hpp"
#include "rsacomb/profile.hpp"
#include "rsacomb/text.hpp"

namespace rsacomb {

struct RunConfig {
    std::string ontology_path;
    std::vector<std::string> query_paths;
    std::string mode = "packed";        // packed | reference | both
    bool force_approximation = false;
    int depth_bound = 8;                // chase bound; used by the oracle command
    std::string output_format = "tsv";  // tsv | json
    std::string report_path;            // empty: no report file
    std::string out_dir = ".";
    bool stats = false;
    int parallel = 0;                   // 0/1: sequential
};

inline std::vector<FilterMode> filter_modes(const std::string& mode) {
    if (mode == "reference") return {FilterMode::Reference};
    if (mode == "packed") return {FilterMode::Packed};
    if (mode == "both") return {FilterMode::Reference, FilterMode::Packed};
    throw std::invalid_argument("unknown filter mode: " + mode);
}

// Runs the query under each requested mode and checks the results agree; a
// disagreement means the two filtering encodings diverged, which is a bug,
// not a property of the input.
inline AnswerSet answer_all_modes(Store& store, const CanonicalModel& cm,
                                  const ConjunctiveQuery& q,
                                  const std::vector<FilterMode>& modes,
                                  std::vector<FilterStats>& runs) {
    AnswerSet out;
    for (size_t i = 0; i < modes.size(); ++i) {
        FilterStats st;
        AnswerSet as = answer(store, cm, q, modes[i], &st);
        runs.push_back(std::move(st));
        if (i > 0 && (as.vars != out.vars || as.rows != out.rows))
            throw EngineError("filter modes disagree on a query result");
        out = std::move(as);
    }
    return out;
}

struct QueryRun {
    std::string label;  // source file (or synthetic label)
    ConjunctiveQuery query;
    AnswerSet answers;              // the emitted result (last mode's run)
    std::vector<FilterStats> runs;  // one per executed mode
};

struct PipelineRun {
    bool horn = true;        // input is union-free
    bool checked = false;    // the structural check ran on the input
    RsaReport check;         // meaningful iff checked
    bool approximator_ran = false;
    bool approximated = false;  // the approximation changed the axiom set
    ApproximationProvenance provenance;  // meaningful iff approximator_ran
    Ontology effective;      // the ontology the queries were answered over
    CanonicalModel canonical;
    int canonical_materializations = 0;
    std::vector<QueryRun> queries;

    bool exact() const { return !approximated; }
};

// parse -> check -> approximate when needed -> one canonical model -> filter
// per query.  Throws UnsatisfiableOntology before answering anything when the
// canonical model derives bottom.  Query results land in command-line order
// regardless of the worker count, so emitted bytes never depend on timing.
inline PipelineRun run_pipeline(Store& store, const Ontology& input,
                                const std::vector<std::pair<std::string, ConjunctiveQuery>>& queries,
                                const RunConfig& cfg) {
    PipelineRun out;
    out.horn = !input.has_union();

    RsaAnalysis analysis;
    bool needs = cfg.force_approximation || !out.horn;
    if (out.horn) {
        analysis = analyze_rsa(store, input);
        out.check.safety = analysis.safety;
        out.check.graph = analysis.graph;
        out.check.forest_ok = analysis.forest.ok;
        out.check.forest_violation = analysis.forest.cycle;
        out.check.equality_violations = analysis.equality_violations;
        out.check.is_rsa = analysis.forest.ok && analysis.equality_violations.empty();
        out.checked = true;
        needs = needs || !out.check.is_rsa;
    }
    if (needs) {
        auto [onto, prov] = approximate_to_rsa(input);
        out.effective = std::move(onto);
        out.provenance = std::move(prov);
        out.approximator_ran = true;
        out.approximated = out.provenance.touched();
    } else {
        out.effective = input;
    }

    // An untouched approximation leaves the axiom set — and therefore the
    // membership analysis — identical, so the input's analysis still applies.
    const RsaAnalysis* pre = (out.checked && !out.approximated) ? &analysis : nullptr;
    out.canonical = build_canonical_model(store, out.effective, "canonical", pre);
    out.canonical_materializations = store.materialize_count(out.canonical.partition);
    if (!out.canonical.satisfiable)
        throw UnsatisfiableOntology(
            "ontology is unsatisfiable; every tuple is entailed");

    std::vector<FilterMode> modes = filter_modes(cfg.mode);
    out.queries.resize(queries.size());
    auto run_one = [&](size_t i) {
        QueryRun& qr = out.queries[i];
        qr.label = queries[i].first;
        qr.query = queries[i].second;
        qr.answers = answer_all_modes(store, out.canonical, qr.query, modes, qr.runs);
        qr.answers.exact = out.exact();
    };

    size_t workers = cfg.parallel > 1
                         ? std::min<size_t>(static_cast<size_t>(cfg.parallel), queries.size())
                         : 1;
    if (workers > 1) {
        std::atomic<size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr err;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= out.queries.size()) return;
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err) err = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    } else {
        for (size_t i = 0; i < queries.size(); ++i) run_one(i);
    }
    out.canonical_materializations = store.materialize_count(out.canonical.partition);
    return out;
}

// Run report.  Every emitted timing counter is stripped so that report bytes
// depend only on the inputs; wall-clock numbers stay on stderr diagnostics.
inline nlohmann::json pipeline_report(const PipelineRun& run, const RunConfig& cfg) {
    auto drop_time = [](nlohmann::json j) {
        j.erase("elapsed_ms");
        return j;
    };
    nlohmann::json j;
    j["schema"] = 1;
    j["ontology"] = cfg.ontology_path;
    j["mode"] = cfg.mode;
    j["horn"] = run.horn;
    j["is_rsa"] = run.checked && run.check.is_rsa;
    j["approximated"] = run.approximated;
    j["exact"] = run.exact();
    if (run.approximator_ran) j["provenance"] = run.provenance.to_json();
    j["canonical"] = drop_time(run.canonical.stats_json());
    j["canonical_materializations"] = run.canonical_materializations;
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& qr : run.queries) {
        nlohmann::json q;
        q["query"] = qr.label;
        q["answers"] = qr.answers.rows.size();
        q["exact"] = qr.answers.exact;
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& st : qr.runs) rs.push_back(drop_time(st.to_json()));
        q["runs"] = rs;
        qs.push_back(q);
    }
    j["queries"] = qs;
    return j;
}

}  // namespace rsacomb
