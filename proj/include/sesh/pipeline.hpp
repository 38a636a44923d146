#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sesh/metrics.hpp"
#include "sesh/methods.hpp"
#include "sesh/oracles.hpp"
#include "sesh/qrels.hpp"

namespace sesh {

// Everything one experiment needs, serializable so a run can be reproduced
// from the manifest echoed into its output directory.
struct ExperimentManifest {
    std::string index_path;
    std::string sessions_path;
    std::string qrels_path;
    std::string mapping_path;  // empty: topic ids are session ids
    std::string anchors_path;  // empty: RL3 degrades to RL2

    MethodConfig method;
    SmoothingConfig smoothing;
    int first_pass_n = 2000;
    GridConfig grid;

    int threads = 0;  // 0: library default
    std::string out_dir;
    bool strict = false;
    // There is no randomness anywhere in the pipeline; recorded so manifests
    // are explicit about it.
    bool deterministic = true;

    std::string to_json() const;
    static ExperimentManifest from_json(const std::string& text);
};

struct RunSummary {
    long sessions_total = 0;
    long sessions_ranked = 0;
    long sessions_skipped = 0;       // per-session failures
    long grid_sessions_skipped = 0;  // guardrails (grid method only)
    EvalSummary eval;
    std::string run_path;
    std::string per_session_csv_path;
    std::string aggregate_json_path;
    std::string manifest_path;
};

// Full per-session pipeline: first pass, method model (or oracle), rerank,
// evaluation. Writes run.txt, persession.csv, aggregate.json and
// manifest.json (plus grid_results.jsonl / grid_summary.csv for the grid
// method) into out_dir; artifacts are byte-identical across invocations and
// thread counts.
RunSummary run_experiment(const ExperimentManifest& manifest);

struct EvaluateOutcome {
    EvalSummary eval;
    bool mismatch = false;  // run/qrels session sets disagree
};

EvaluateOutcome evaluate_run_file(const std::string& run_path, const std::string& qrels_path,
                                  const std::string& mapping_path, const std::string& out_dir,
                                  bool missing_as_zero = false);

struct ReportOptions {
    std::vector<std::string> run_paths;
    std::string qrels_path;
    std::string mapping_path;
    std::string sessions_path;
    std::string index_path;  // enables the progressing-session report
    std::string anchors_path;
    std::string out_dir;
    bool reference_table = false;
    SmoothingConfig smoothing;
    int first_pass_n = 2000;
};

struct ReportSummary {
    bool mismatch = false;
    std::vector<std::string> artifacts;
};

// Emits table2.csv, fig2_box.json, fig3_by_length.csv and (when an index is
// supplied) fig4_progressing.csv with deltas against the TF(last) baseline.
ReportSummary report_runs(const ReportOptions& options);

// Published NDCG@10/MRR reference results for the 2011-2014 TREC Session
// tracks, printed next to local results by the reference-table mode.
struct ReferenceRow {
    const char* method;
    const char* edition;
    double ndcg_at_10;
    double mrr;
};
const std::vector<ReferenceRow>& reference_results();

}  // namespace sesh
