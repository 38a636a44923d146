// Command-line surface for the session-search testbed: build an index, run
// retrieval experiments, evaluate run files and emit analysis reports.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "sesh/common.hpp"
#include "sesh/index.hpp"
#include "sesh/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEvalMismatch = 1;
constexpr int kExitIoError = 2;

struct IndexArgs {
    std::string corpus;
    std::string out;
    std::string spam;
    int spam_threshold = 70;
    bool stem = false;
    bool stopwords = false;
    std::string stopwords_file;
};

int cmd_index(const IndexArgs& args) {
    if (!fs::exists(args.corpus)) {
        std::fprintf(stderr, "corpus not found: %s\n", args.corpus.c_str());
        return kExitIoError;
    }
    sesh::IndexBuildOptions options;
    options.corpus_path = args.corpus;
    options.spam_threshold = args.spam_threshold;
    options.tokenizer.stem = args.stem;
    options.tokenizer.remove_stopwords = args.stopwords || !args.stopwords_file.empty();
    if (!args.stopwords_file.empty()) {
        for (const auto& word : sesh::tokenize(sesh::read_file(args.stopwords_file))) {
            options.tokenizer.stopwords.push_back(word);
        }
    }

    sesh::SpamScores spam;
    const sesh::SpamScores* spam_ptr = nullptr;
    if (!args.spam.empty()) {
        spam = sesh::SpamScores::load(args.spam);
        spam_ptr = &spam;
        options.spam_path = args.spam;
    }

    auto corpus = sesh::open_corpus(args.corpus);
    sesh::Index index = sesh::Index::build(*corpus, spam_ptr, options);
    index.save(args.out);

    std::printf("indexed %lld documents (%lld spam-filtered)\n",
                static_cast<long long>(index.num_docs()),
                static_cast<long long>(index.spam_filtered()));
    std::printf("unique terms: %d\n", index.vocab_size());
    std::printf("total terms: %lld\n", static_cast<long long>(index.total_terms()));
    std::printf("index written to %s\n", args.out.c_str());
    return kExitOk;
}

void add_run_flags(CLI::App* cmd, sesh::ExperimentManifest& manifest, std::string& method,
                   std::string& qcm_source, std::string& nugget_threshold) {
    cmd->add_option("--index", manifest.index_path, "index file built by 'sesh index'");
    cmd->add_option("--sessions", manifest.sessions_path, "session log XML");
    cmd->add_option("--qrels", manifest.qrels_path, "qrels file (topic 0 docno grade)");
    cmd->add_option("--mapping", manifest.mapping_path,
                    "JSON with topic_to_sessions and grade_map");
    cmd->add_option("--anchors", manifest.anchors_path, "anchor-text JSON lines");
    cmd->add_option("--method", method,
                    "tf_first|tf_last|tf_all|nugget_rl2|nugget_rl3|nugget_rl4|qcm|oracle|grid");
    cmd->add_option("--mu", manifest.smoothing.mu, "Dirichlet smoothing pseudo-count");
    cmd->add_option("--first-pass-n", manifest.first_pass_n, "candidate pool size");
    cmd->add_option("--nugget-theta", manifest.method.nugget.theta, "nugget acceptance threshold");
    cmd->add_option("--nugget-beta", manifest.method.nugget.beta, "nugget n-gram weight");
    cmd->add_option("--nugget-k-snippet", manifest.method.nugget.k_snippet,
                    "snippets mined per interaction");
    cmd->add_option("--nugget-k-anchor", manifest.method.nugget.k_anchor,
                    "anchors mined per document");
    cmd->add_option("--nugget-max-order", manifest.method.nugget.max_order,
                    "longest n-gram mined from a query");
    cmd->add_option("--nugget-threshold-mode", nugget_threshold,
                    "coverage_fraction|min_count");
    cmd->add_option("--qcm-alpha", manifest.method.qcm.alpha, "QCM theme parameter");
    cmd->add_option("--qcm-beta", manifest.method.qcm.beta, "QCM added-present parameter");
    cmd->add_option("--qcm-epsilon", manifest.method.qcm.epsilon, "QCM added-absent parameter");
    cmd->add_option("--qcm-delta", manifest.method.qcm.delta, "QCM removed parameter");
    cmd->add_option("--qcm-prob-source", qcm_source, "sat_then_top|top_doc");
    cmd->add_option("--grid-lo", manifest.grid.lo, "grid lower bound");
    cmd->add_option("--grid-hi", manifest.grid.hi, "grid upper bound");
    cmd->add_option("--grid-step", manifest.grid.step, "grid increment");
    cmd->add_option("--grid-max-terms", manifest.grid.max_unique_terms,
                    "skip sessions with more unique terms");
    cmd->add_option("--grid-max-assignments", manifest.grid.max_assignments,
                    "abort searches larger than this");
    cmd->add_option("--grid-candidates", manifest.grid.max_candidates,
                    "candidates kept for the grid search (0 = all)");
    cmd->add_option("--threads", manifest.threads, "worker threads (0 = all cores)");
    cmd->add_option("--out", manifest.out_dir, "output directory");
    cmd->add_flag("--strict", manifest.strict, "fail on the first bad session");
}

int cmd_run(sesh::ExperimentManifest manifest, const CLI::App* cmd, const std::string& method,
            const std::string& qcm_source, const std::string& nugget_threshold,
            const std::string& manifest_path) {
    if (!manifest_path.empty()) {
        sesh::ExperimentManifest base =
            sesh::ExperimentManifest::from_json(sesh::read_file(manifest_path));
        // Explicit flags override the loaded manifest.
        sesh::ExperimentManifest flags = manifest;
        manifest = base;
        auto seen = [&](const char* name) { return cmd->count(name) > 0; };
        if (seen("--index")) manifest.index_path = flags.index_path;
        if (seen("--sessions")) manifest.sessions_path = flags.sessions_path;
        if (seen("--qrels")) manifest.qrels_path = flags.qrels_path;
        if (seen("--mapping")) manifest.mapping_path = flags.mapping_path;
        if (seen("--anchors")) manifest.anchors_path = flags.anchors_path;
        if (seen("--mu")) manifest.smoothing.mu = flags.smoothing.mu;
        if (seen("--first-pass-n")) manifest.first_pass_n = flags.first_pass_n;
        if (seen("--grid-lo")) manifest.grid.lo = flags.grid.lo;
        if (seen("--grid-hi")) manifest.grid.hi = flags.grid.hi;
        if (seen("--grid-step")) manifest.grid.step = flags.grid.step;
        if (seen("--grid-max-terms")) manifest.grid.max_unique_terms = flags.grid.max_unique_terms;
        if (seen("--grid-max-assignments"))
            manifest.grid.max_assignments = flags.grid.max_assignments;
        if (seen("--grid-candidates")) manifest.grid.max_candidates = flags.grid.max_candidates;
        if (seen("--threads")) manifest.threads = flags.threads;
        if (seen("--out")) manifest.out_dir = flags.out_dir;
        if (seen("--strict")) manifest.strict = flags.strict;
        if (seen("--nugget-theta")) manifest.method.nugget.theta = flags.method.nugget.theta;
        if (seen("--nugget-beta")) manifest.method.nugget.beta = flags.method.nugget.beta;
        if (seen("--nugget-k-snippet"))
            manifest.method.nugget.k_snippet = flags.method.nugget.k_snippet;
        if (seen("--nugget-k-anchor"))
            manifest.method.nugget.k_anchor = flags.method.nugget.k_anchor;
        if (seen("--nugget-max-order"))
            manifest.method.nugget.max_order = flags.method.nugget.max_order;
        if (seen("--qcm-alpha")) manifest.method.qcm.alpha = flags.method.qcm.alpha;
        if (seen("--qcm-beta")) manifest.method.qcm.beta = flags.method.qcm.beta;
        if (seen("--qcm-epsilon")) manifest.method.qcm.epsilon = flags.method.qcm.epsilon;
        if (seen("--qcm-delta")) manifest.method.qcm.delta = flags.method.qcm.delta;
    }
    if (cmd->count("--method") > 0 || manifest_path.empty()) {
        auto parsed = sesh::parse_method(method);
        if (!parsed) {
            std::fprintf(stderr, "unknown method: %s\n", method.c_str());
            return kExitIoError;
        }
        manifest.method.method = *parsed;
    }
    if (cmd->count("--qcm-prob-source") > 0) {
        if (qcm_source == "sat_then_top") {
            manifest.method.qcm.prob_source = sesh::ClickProbSource::sat_then_top;
        } else if (qcm_source == "top_doc") {
            manifest.method.qcm.prob_source = sesh::ClickProbSource::top_doc;
        } else {
            std::fprintf(stderr, "unknown qcm probability source: %s\n", qcm_source.c_str());
            return kExitIoError;
        }
    }
    if (cmd->count("--nugget-threshold-mode") > 0) {
        if (nugget_threshold == "coverage_fraction") {
            manifest.method.nugget.threshold = sesh::NuggetThreshold::coverage_fraction;
        } else if (nugget_threshold == "min_count") {
            manifest.method.nugget.threshold = sesh::NuggetThreshold::min_count;
        } else {
            std::fprintf(stderr, "unknown nugget threshold mode: %s\n",
                         nugget_threshold.c_str());
            return kExitIoError;
        }
    }

    sesh::RunSummary summary = sesh::run_experiment(manifest);
    std::printf("%s: %ld/%ld sessions ranked (%ld skipped)\n",
                sesh::method_name(manifest.method.method), summary.sessions_ranked,
                summary.sessions_total, summary.sessions_skipped);
    if (summary.eval.mean_ndcg) {
        std::printf("mean NDCG@10 %s, mean MRR %s over %zu evaluated sessions\n",
                    sesh::format_fixed6(*summary.eval.mean_ndcg).c_str(),
                    sesh::format_fixed6(*summary.eval.mean_mrr).c_str(),
                    summary.eval.per_session.size());
    }
    std::printf("run file: %s\n", summary.run_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"session-search testbed: lexical query models over a Dirichlet LM engine"};
    app.require_subcommand(1);

    IndexArgs index_args;
    CLI::App* index_cmd = app.add_subcommand("index", "build an index from a corpus");
    index_cmd->add_option("--corpus", index_args.corpus, "JSON-lines or TRECTEXT corpus")
        ->required();
    index_cmd->add_option("--out", index_args.out, "index file to write")->required();
    index_cmd->add_option("--spam", index_args.spam, "spam sidecar: 'score docno' lines");
    index_cmd->add_option("--spam-threshold", index_args.spam_threshold,
                          "drop documents scoring below this (default 70)");
    index_cmd->add_flag("--stem", index_args.stem, "apply Porter stemming");
    index_cmd->add_flag("--stopwords", index_args.stopwords, "remove built-in stopwords");
    index_cmd->add_option("--stopwords-file", index_args.stopwords_file,
                          "remove stopwords from this file");

    sesh::ExperimentManifest manifest;
    std::string method = "tf_all";
    std::string qcm_source;
    std::string nugget_threshold;
    std::string manifest_path;
    CLI::App* run_cmd = app.add_subcommand("run", "run the retrieval pipeline over sessions");
    add_run_flags(run_cmd, manifest, method, qcm_source, nugget_threshold);
    run_cmd->add_option("--manifest", manifest_path, "load settings from a manifest echo");

    std::string eval_run, eval_qrels, eval_mapping, eval_out;
    bool eval_missing_zero = false;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "evaluate an existing run file");
    eval_cmd->add_option("--run", eval_run, "run file in TREC format")->required();
    eval_cmd->add_option("--qrels", eval_qrels, "qrels file")->required();
    eval_cmd->add_option("--mapping", eval_mapping, "topic/session mapping JSON");
    eval_cmd->add_option("--out", eval_out, "output directory");
    eval_cmd->add_flag("--missing-as-zero", eval_missing_zero,
                       "count judged sessions missing from the run as 0");

    sesh::ReportOptions report;
    CLI::App* report_cmd = app.add_subcommand("report", "emit comparison tables and figure data");
    report_cmd->add_option("--runs", report.run_paths, "run files to compare")->required();
    report_cmd->add_option("--qrels", report.qrels_path, "qrels file")->required();
    report_cmd->add_option("--mapping", report.mapping_path, "topic/session mapping JSON");
    report_cmd->add_option("--sessions", report.sessions_path, "session log XML");
    report_cmd->add_option("--index", report.index_path,
                           "index file (enables the progressing-session report)");
    report_cmd->add_option("--anchors", report.anchors_path, "anchor-text JSON lines");
    report_cmd->add_option("--out", report.out_dir, "output directory")->required();
    report_cmd->add_option("--mu", report.smoothing.mu, "Dirichlet smoothing pseudo-count");
    report_cmd->add_option("--first-pass-n", report.first_pass_n, "candidate pool size");
    report_cmd->add_flag("--reference-table", report.reference_table,
                         "append published TREC Session track results to table2.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) {
            return cmd_index(index_args);
        }
        if (run_cmd->parsed()) {
            return cmd_run(manifest, run_cmd, method, qcm_source, nugget_threshold,
                           manifest_path);
        }
        if (eval_cmd->parsed()) {
            auto outcome = sesh::evaluate_run_file(eval_run, eval_qrels, eval_mapping, eval_out,
                                                   eval_missing_zero);
            if (outcome.eval.mean_ndcg) {
                std::printf("mean NDCG@10 %s, mean MRR %s over %zu sessions\n",
                            sesh::format_fixed6(*outcome.eval.mean_ndcg).c_str(),
                            sesh::format_fixed6(*outcome.eval.mean_mrr).c_str(),
                            outcome.eval.per_session.size());
            } else {
                std::printf("no evaluable sessions\n");
            }
            return outcome.mismatch ? kExitEvalMismatch : kExitOk;
        }
        if (report_cmd->parsed()) {
            auto summary = sesh::report_runs(report);
            for (const auto& artifact : summary.artifacts) {
                std::printf("wrote %s\n", artifact.c_str());
            }
            return summary.mismatch ? kExitEvalMismatch : kExitOk;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIoError;
    }
    return kExitOk;
}
