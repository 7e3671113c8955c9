// rsacomb: conjunctive-query answering over Horn ontologies via a structural
// membership check, a sound approximation step, a single canonical-model
// materialization and per-query filtering.
//
// Exit codes: 0 success; 1 usage error; 2 unreadable or unparseable input;
// 3 unsatisfiable ontology (answer); 4 internal error; 10 check verdict
// "outside the tractable class".  stdout carries data, stderr diagnostics.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsacomb/oracle.hpp"
#include "rsacomb/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kUnsat = 3;
constexpr int kInternal = 4;
constexpr int kNotRsa = 10;

// Diagnostics are carried in the message and printed once by main's handler.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("rsacomb: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
    out.flush();
    if (!out) throw std::runtime_error("short write on " + path);
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string in_dir(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string render_errors(const std::vector<rsacomb::ParseError>& errors) {
    std::string msg;
    for (size_t i = 0; i < errors.size(); ++i)
        msg += (i ? "\n" : "") + errors[i].render();
    return msg;
}

rsacomb::Ontology load_ontology(const std::string& path) {
    rsacomb::OntologyParse p = rsacomb::parse_ontology(read_file(path), path);
    if (!p.ok()) throw InputError(render_errors(p.errors));
    return std::move(p.ontology);
}

rsacomb::ConjunctiveQuery load_query(const std::string& path) {
    rsacomb::QueryParse p = rsacomb::parse_query(read_file(path), path);
    if (!p.ok()) throw InputError(render_errors(p.errors));
    return std::move(p.query);
}

// RSACOMB_DEPTH overrides the flag; a malformed value is a usage error, not
// something to ignore silently.
int effective_depth(int flag_value) {
    const char* env = std::getenv("RSACOMB_DEPTH");
    if (!env || !*env) return flag_value;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1000000)
        throw UsageError("RSACOMB_DEPTH must be a positive integer, got '" +
                         std::string(env) + "'");
    return static_cast<int>(v);
}

int cmd_check(const rsacomb::RunConfig& cfg, const std::string& dot_path) {
    rsacomb::Ontology o = load_ontology(cfg.ontology_path);
    rsacomb::RsaReport rep;
    bool horn = !o.has_union();
    // A non-Horn ontology is outside the class by definition; the structural
    // check itself only runs on union-free input.
    if (horn) rep = rsacomb::is_rsa(o);
    nlohmann::json j = rep.to_json();
    j["horn"] = horn;
    std::cout << j.dump(2) << "\n";
    if (!dot_path.empty()) write_file(dot_path, rsacomb::emit_graph_dot(rep.graph));
    return rep.is_rsa ? kOk : kNotRsa;
}

int cmd_approximate(const rsacomb::RunConfig& cfg) {
    rsacomb::Ontology o = load_ontology(cfg.ontology_path);
    auto [rsa, prov] = rsacomb::approximate_to_rsa(o);
    std::string stem = stem_of(cfg.ontology_path);
    std::string onto_path = in_dir(cfg.out_dir, stem + ".rsa.nha");
    std::string prov_path = in_dir(cfg.out_dir, stem + ".approx.json");
    std::string prov_json = prov.to_json().dump(2) + "\n";
    write_file(onto_path, rsacomb::serialize_ontology(rsa));
    write_file(prov_path, prov_json);
    std::cout << prov_json;
    std::cerr << "rsacomb: wrote " << onto_path << " and " << prov_path << "\n";
    return kOk;
}

int cmd_answer(const rsacomb::RunConfig& cfg) {
    rsacomb::Ontology o = load_ontology(cfg.ontology_path);
    std::vector<std::pair<std::string, rsacomb::ConjunctiveQuery>> queries;
    std::set<std::string> stems;
    for (const auto& qp : cfg.query_paths) {
        if (!stems.insert(stem_of(qp)).second)
            throw UsageError("duplicate query file stem '" + stem_of(qp) +
                             "'; answer files would collide");
        queries.emplace_back(qp, load_query(qp));
    }

    rsacomb::Store store;
    rsacomb::PipelineRun run = rsacomb::run_pipeline(store, o, queries, cfg);

    std::string ext = cfg.output_format == "json" ? "json" : "tsv";
    for (const auto& qr : run.queries) {
        std::string path = in_dir(cfg.out_dir, stem_of(qr.label) + ".answers." + ext);
        write_file(path, rsacomb::emit_answers(qr.answers, cfg.output_format));
        std::cerr << "rsacomb: " << qr.label << " -> " << path << " ("
                  << qr.answers.rows.size() << " rows, exact="
                  << (qr.answers.exact ? "true" : "false") << ")\n";
    }

    nlohmann::json rep = rsacomb::pipeline_report(run, cfg);
    if (cfg.stats) std::cout << rep.dump(2) << "\n";
    if (!cfg.report_path.empty()) write_file(cfg.report_path, rep.dump(2) + "\n");
    std::cerr << "rsacomb: canonical model: " << run.canonical.facts << " facts, "
              << run.canonical.rules << " rules, " << run.canonical.elapsed_ms
              << " ms\n";
    return kOk;
}

int cmd_oracle(const rsacomb::RunConfig& cfg) {
    rsacomb::Ontology o = load_ontology(cfg.ontology_path);
    if (o.has_union())
        throw InputError(cfg.ontology_path +
                         ": the oracle chase requires a union-free (Horn) ontology");
    bool first = true;
    for (const auto& qp : cfg.query_paths) {
        rsacomb::ConjunctiveQuery q = load_query(qp);
        rsacomb::AnswerSet as =
            rsacomb::oracle::certain_answers_chase(o, q, cfg.depth_bound);
        if (!as.exact)
            std::cerr << "rsacomb: " << qp << ": depth bound " << cfg.depth_bound
                      << " reached; answers are a sound lower bound\n";
        if (cfg.output_format == "json") {
            std::cout << rsacomb::emit_answers(as, cfg.output_format);
        } else {
            if (!first) std::cout << "\n";
            std::cout << "# query: " << qp << "\n# exact: "
                      << (as.exact ? "true" : "false") << "\n"
                      << rsacomb::emit_answers(as, cfg.output_format);
        }
        first = false;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    rsacomb::RunConfig cfg;
    std::string dot_path;

    CLI::App app{
        "conjunctive query answering over Horn ontologies: membership check, "
        "sound approximation, one canonical model, per-query filtering"};
    app.require_subcommand(1);

    auto add_onto = [&](CLI::App* sub) {
        sub->add_option("ontology", cfg.ontology_path, "ontology file (.nha)")
            ->required();
    };

    CLI::App* c_check = app.add_subcommand(
        "check", "structural membership check (exit 0 inside the class, 10 outside)");
    add_onto(c_check);
    c_check->add_option("--dot", dot_path, "write the dependency graph as DOT");

    CLI::App* c_approx = app.add_subcommand(
        "approximate",
        "sound Horn approximation; writes <stem>.rsa.nha and <stem>.approx.json");
    add_onto(c_approx);
    c_approx->add_option("--out-dir", cfg.out_dir, "output directory")
        ->capture_default_str();

    CLI::App* c_answer = app.add_subcommand(
        "answer", "answer conjunctive queries; writes one answer file per query");
    add_onto(c_answer);
    c_answer->add_option("queries", cfg.query_paths, "query files (.cq)")->required();
    c_answer->add_option("--mode", cfg.mode, "filtering mode")
        ->check(CLI::IsMember({"packed", "reference", "both"}))
        ->capture_default_str();
    c_answer->add_flag("--force-approximation", cfg.force_approximation,
                       "run the approximation even inside the class");
    c_answer->add_option("--format", cfg.output_format, "answer file format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    c_answer->add_option("--out-dir", cfg.out_dir, "output directory")
        ->capture_default_str();
    c_answer->add_flag("--stats", cfg.stats, "print the run report (JSON) to stdout");
    c_answer->add_option("--report", cfg.report_path,
                         "write the run report (JSON) to this file");
    c_answer
        ->add_option("--parallel", cfg.parallel,
                     "worker threads for per-query filtering (0/1: sequential)")
        ->check(CLI::Range(0, 64));

    CLI::App* c_oracle = app.add_subcommand(
        "oracle", "reference chase answers for Horn fixtures (debugging aid)");
    add_onto(c_oracle);
    c_oracle->add_option("queries", cfg.query_paths, "query files (.cq)")->required();
    c_oracle->add_option("--depth-bound", cfg.depth_bound, "chase depth bound")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    c_oracle->add_option("--format", cfg.output_format, "answer format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        cfg.depth_bound = effective_depth(cfg.depth_bound);
        if (c_check->parsed()) return cmd_check(cfg, dot_path);
        if (c_approx->parsed()) return cmd_approximate(cfg);
        if (c_answer->parsed()) return cmd_answer(cfg);
        if (c_oracle->parsed()) return cmd_oracle(cfg);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "rsacomb: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const rsacomb::UnsatisfiableOntology& e) {
        std::cerr << "rsacomb: " << e.what() << "\n";
        return kUnsat;
    } catch (const std::exception& e) {
        std::cerr << "rsacomb: internal error: " << e.what() << "\n";
        return kInternal;
    }
}
