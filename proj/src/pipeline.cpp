#include "sesh/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "sesh/common.hpp"
#include "sesh/session_xml.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sesh {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Manifest serialization
// ---------------------------------------------------------------------------

namespace {

const char* click_source_name(ClickProbSource source) {
    return source == ClickProbSource::sat_then_top ? "sat_then_top" : "top_doc";
}

ClickProbSource parse_click_source(const std::string& name) {
    if (name == "sat_then_top") return ClickProbSource::sat_then_top;
    if (name == "top_doc") return ClickProbSource::top_doc;
    throw ParseError("unknown click probability source: " + name);
}

const char* threshold_name(NuggetThreshold threshold) {
    return threshold == NuggetThreshold::coverage_fraction ? "coverage_fraction" : "min_count";
}

NuggetThreshold parse_threshold(const std::string& name) {
    if (name == "coverage_fraction") return NuggetThreshold::coverage_fraction;
    if (name == "min_count") return NuggetThreshold::min_count;
    throw ParseError("unknown nugget threshold mode: " + name);
}

}  // namespace

std::string ExperimentManifest::to_json() const {
    json j;
    j["index"] = index_path;
    j["sessions"] = sessions_path;
    j["qrels"] = qrels_path;
    j["mapping"] = mapping_path;
    j["anchors"] = anchors_path;
    j["method"] = method_name(method.method);
    j["nugget"] = {{"k_snippet", method.nugget.k_snippet},
                   {"theta", method.nugget.theta},
                   {"k_anchor", method.nugget.k_anchor},
                   {"beta", method.nugget.beta},
                   {"threshold", threshold_name(method.nugget.threshold)},
                   {"max_order", method.nugget.max_order}};
    j["qcm"] = {{"alpha", method.qcm.alpha},
                {"beta", method.qcm.beta},
                {"epsilon", method.qcm.epsilon},
                {"delta", method.qcm.delta},
                {"prob_source", click_source_name(method.qcm.prob_source)}};
    j["mu"] = smoothing.mu;
    j["first_pass_n"] = first_pass_n;
    j["grid"] = {{"lo", grid.lo},
                 {"hi", grid.hi},
                 {"step", grid.step},
                 {"max_unique_terms", grid.max_unique_terms},
                 {"max_assignments", grid.max_assignments},
                 {"max_candidates", grid.max_candidates}};
    j["threads"] = threads;
    j["out"] = out_dir;
    j["strict"] = strict;
    j["deterministic"] = deterministic;
    return j.dump(2) + "\n";
}

ExperimentManifest ExperimentManifest::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad manifest: ") + e.what());
    }
    ExperimentManifest m;
    m.index_path = j.value("index", std::string{});
    m.sessions_path = j.value("sessions", std::string{});
    m.qrels_path = j.value("qrels", std::string{});
    m.mapping_path = j.value("mapping", std::string{});
    m.anchors_path = j.value("anchors", std::string{});
    if (j.contains("method")) {
        auto method = parse_method(j["method"].get<std::string>());
        if (!method) throw ParseError("unknown method in manifest: " + j["method"].dump());
        m.method.method = *method;
    }
    if (j.contains("nugget")) {
        const auto& n = j["nugget"];
        m.method.nugget.k_snippet = n.value("k_snippet", m.method.nugget.k_snippet);
        m.method.nugget.theta = n.value("theta", m.method.nugget.theta);
        m.method.nugget.k_anchor = n.value("k_anchor", m.method.nugget.k_anchor);
        m.method.nugget.beta = n.value("beta", m.method.nugget.beta);
        m.method.nugget.max_order = n.value("max_order", m.method.nugget.max_order);
        if (n.contains("threshold"))
            m.method.nugget.threshold = parse_threshold(n["threshold"].get<std::string>());
    }
    if (j.contains("qcm")) {
        const auto& q = j["qcm"];
        m.method.qcm.alpha = q.value("alpha", m.method.qcm.alpha);
        m.method.qcm.beta = q.value("beta", m.method.qcm.beta);
        m.method.qcm.epsilon = q.value("epsilon", m.method.qcm.epsilon);
        m.method.qcm.delta = q.value("delta", m.method.qcm.delta);
        if (q.contains("prob_source"))
            m.method.qcm.prob_source = parse_click_source(q["prob_source"].get<std::string>());
    }
    m.smoothing.mu = j.value("mu", m.smoothing.mu);
    m.first_pass_n = j.value("first_pass_n", m.first_pass_n);
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        m.grid.lo = g.value("lo", m.grid.lo);
        m.grid.hi = g.value("hi", m.grid.hi);
        m.grid.step = g.value("step", m.grid.step);
        m.grid.max_unique_terms = g.value("max_unique_terms", m.grid.max_unique_terms);
        m.grid.max_assignments = g.value("max_assignments", m.grid.max_assignments);
        m.grid.max_candidates = g.value("max_candidates", m.grid.max_candidates);
    }
    m.threads = j.value("threads", 0);
    m.out_dir = j.value("out", std::string{});
    m.strict = j.value("strict", false);
    m.deterministic = j.value("deterministic", true);
    return m;
}

// ---------------------------------------------------------------------------
// run_experiment
// ---------------------------------------------------------------------------

namespace {

struct SessionOutcome {
    bool ranked = false;
    Ranking ranking;
    std::string error;
    // Grid method bookkeeping.
    bool grid_attempted = false;
    GridOutcome grid;
    double tf_capped_ndcg = -1.0;
    double oracle_capped_ndcg = -1.0;
};

std::string per_session_csv(const EvalSummary& eval) {
    std::string out = "session_id,ndcg10,mrr\n";
    for (const EvalResult& r : eval.per_session) {
        out += r.session_id;
        out += ',';
        out += format_fixed6(r.ndcg_at_10);
        out += ',';
        out += format_fixed6(r.mrr);
        out += '\n';
    }
    return out;
}

json eval_to_json(const EvalSummary& eval) {
    json j;
    j["sessions_evaluated"] = eval.per_session.size();
    j["excluded_no_positive_judgments"] = eval.excluded_no_positive;
    j["run_sessions_without_judgments"] = eval.unknown_sessions;
    j["judged_sessions_missing_from_run"] = eval.qrels_missing_from_run;
    if (eval.mean_ndcg) {
        j["mean_ndcg10"] = json::parse(format_fixed6(*eval.mean_ndcg));
        j["mean_mrr"] = json::parse(format_fixed6(*eval.mean_mrr));
    } else {
        j["mean_ndcg10"] = nullptr;
        j["mean_mrr"] = nullptr;
    }
    return j;
}

const JudgmentMap& judgments_for(const Qrels& qrels, const std::string& session_id) {
    static const JudgmentMap empty;
    auto it = qrels.find(session_id);
    return it == qrels.end() ? empty : it->second;
}

void process_session(const Index& index, const Session& session, const Qrels& qrels,
                     const ExperimentManifest& manifest, const AnchorTexts* anchors,
                     SessionOutcome& out) {
    RankerConfig ranker_cfg{manifest.first_pass_n, manifest.smoothing};
    CandidateSet candidates = first_pass(index, session, ranker_cfg);
    const JudgmentMap& judgments = judgments_for(qrels, session.session_id);

    if (manifest.method.method == Method::oracle) {
        out.ranking = ground_truth_rank(candidates, judgments);
        out.ranked = true;
        return;
    }
    if (manifest.method.method == Method::grid) {
        out.grid_attempted = true;
        out.grid = ideal_weights(index, session, candidates, judgments, manifest.grid,
                                 manifest.smoothing);
        if (out.grid.status != GridStatus::ok) return;

        GridSearchProblem problem = make_grid_problem(index, session, candidates, judgments,
                                                      manifest.grid, manifest.smoothing);
        // TF(all) and ground-truth scored on the identical truncated
        // candidate list, so the summary rows are directly comparable.
        if (auto tf_point = scaled_tf_point(problem, session)) {
            out.tf_capped_ndcg = evaluate_assignment(problem, *tf_point);
        } else {
            CandidateSet capped{session.session_id, problem.docnos};
            Ranking tf_ranking =
                rerank(index, capped, tf_session_model(session, TfScope::all_queries), ranker_cfg);
            out.tf_capped_ndcg = ndcg_at_k(tf_ranking, judgments, 10);
        }
        CandidateSet capped{session.session_id, problem.docnos};
        out.oracle_capped_ndcg = ndcg_at_k(ground_truth_rank(capped, judgments), judgments, 10);

        std::vector<double> best(problem.terms.size(), 0.0);
        {
            // Reconstruct the winning weight vector from the stored model.
            const GridResult& result = *out.grid.result;
            for (size_t t = 0; t < problem.terms.size(); t++) {
                best[t] = result.best_weights.weight(unigram(problem.terms[t]));
            }
        }
        out.ranking = assignment_ranking(problem, best);
        out.ranked = true;
        return;
    }

    QueryModel qm = build_query_model(index, session, manifest.method, anchors);
    out.ranking = rerank(index, candidates, qm, ranker_cfg);
    out.ranked = true;
}

std::string grid_results_jsonl(const std::vector<Session>& sessions,
                               const std::vector<SessionOutcome>& outcomes) {
    std::string out;
    for (size_t i = 0; i < sessions.size(); i++) {
        const SessionOutcome& o = outcomes[i];
        if (!o.grid_attempted && o.error.empty()) continue;
        json j;
        j["session_id"] = sessions[i].session_id;
        if (!o.error.empty()) {
            j["status"] = "error";
            j["detail"] = o.error;
            out += j.dump() + "\n";
            continue;
        }
        switch (o.grid.status) {
            case GridStatus::ok: j["status"] = "ok"; break;
            case GridStatus::skipped_too_many_terms: j["status"] = "skipped_too_many_terms"; break;
            case GridStatus::skipped_no_positive_judgments:
                j["status"] = "skipped_no_positive_judgments";
                break;
            case GridStatus::skipped_assignment_budget:
                j["status"] = "skipped_assignment_budget";
                break;
        }
        j["unique_terms"] = o.grid.terms;
        if (o.grid.result) {
            const GridResult& r = *o.grid.result;
            j["assignments_evaluated"] = r.assignments_evaluated;
            j["best_ndcg10"] = json::parse(format_fixed6(r.best_ndcg));
            json weights = json::object();
            for (const auto& [entity, w] : r.best_weights) {
                weights[entity[0]] = json::parse(format_fixed6(w));
            }
            j["best_weights"] = weights;
        } else {
            j["detail"] = o.grid.detail;
        }
        out += j.dump() + "\n";
    }
    return out;
}

std::string grid_summary_csv(const std::vector<Session>& sessions,
                             const std::vector<SessionOutcome>& outcomes) {
    std::string out = "session_id,unique_terms,assignments,tf_all_ndcg10,ideal_ndcg10,oracle_ndcg10\n";
    for (size_t i = 0; i < sessions.size(); i++) {
        const SessionOutcome& o = outcomes[i];
        if (!o.grid_attempted || o.grid.status != GridStatus::ok) continue;
        const GridResult& r = *o.grid.result;
        out += sessions[i].session_id;
        out += ',';
        out += std::to_string(o.grid.terms.size());
        out += ',';
        out += std::to_string(r.assignments_evaluated);
        out += ',';
        out += format_fixed6(o.tf_capped_ndcg);
        out += ',';
        out += format_fixed6(r.best_ndcg);
        out += ',';
        out += format_fixed6(o.oracle_capped_ndcg);
        out += '\n';
    }
    return out;
}

}  // namespace

RunSummary run_experiment(const ExperimentManifest& manifest) {
    if (manifest.out_dir.empty()) throw Error("run needs an output directory");
#ifdef _OPENMP
    if (manifest.threads > 0) omp_set_num_threads(manifest.threads);
#endif

    Index index = Index::load(manifest.index_path);
    std::vector<Session> sessions = load_sessions(manifest.sessions_path, index.tokenizer());
    MappingConfig mapping;
    if (!manifest.mapping_path.empty()) mapping = load_mapping(manifest.mapping_path);
    Qrels qrels = load_qrels(manifest.qrels_path, mapping).qrels;

    AnchorTexts anchors_storage;
    const AnchorTexts* anchors = nullptr;
    if (!manifest.anchors_path.empty()) {
        anchors_storage = AnchorTexts::load(manifest.anchors_path);
        anchors = &anchors_storage;
    } else if (manifest.method.method == Method::nugget_rl3) {
        log_warn("nugget_rl3 without an anchors file degrades to RL2");
    }

    const auto n = static_cast<int64_t>(sessions.size());
    std::vector<SessionOutcome> outcomes(sessions.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < n; i++) {
        try {
            process_session(index, sessions[static_cast<size_t>(i)], qrels, manifest, anchors,
                            outcomes[static_cast<size_t>(i)]);
        } catch (const std::exception& e) {
            outcomes[static_cast<size_t>(i)].error = e.what();
        }
    }

    RunSummary summary;
    summary.sessions_total = static_cast<long>(sessions.size());
    std::vector<Ranking> run;
    for (size_t i = 0; i < sessions.size(); i++) {
        SessionOutcome& o = outcomes[i];
        if (!o.error.empty()) {
            if (manifest.strict) {
                throw Error("session " + sessions[i].session_id + " failed: " + o.error);
            }
            log_warn("session " + sessions[i].session_id + " skipped: " + o.error);
            summary.sessions_skipped++;
            continue;
        }
        if (!o.ranked) {
            summary.grid_sessions_skipped++;
            continue;
        }
        summary.sessions_ranked++;
        run.push_back(o.ranking);
    }

    fs::create_directories(manifest.out_dir);
    auto out_path = [&](const char* name) { return (fs::path(manifest.out_dir) / name).string(); };

    summary.run_path = out_path("run.txt");
    write_file(summary.run_path, write_run(run, method_name(manifest.method.method)));

    summary.eval = evaluate_run(run, qrels);
    summary.per_session_csv_path = out_path("persession.csv");
    write_file(summary.per_session_csv_path, per_session_csv(summary.eval));

    json aggregate;
    aggregate["method"] = method_name(manifest.method.method);
    aggregate["sessions_total"] = summary.sessions_total;
    aggregate["sessions_ranked"] = summary.sessions_ranked;
    aggregate["sessions_skipped"] = summary.sessions_skipped;
    if (manifest.method.method == Method::grid) {
        aggregate["grid_sessions_skipped"] = summary.grid_sessions_skipped;
    }
    aggregate["evaluation"] = eval_to_json(summary.eval);
    summary.aggregate_json_path = out_path("aggregate.json");
    write_file(summary.aggregate_json_path, aggregate.dump(2) + "\n");

    if (manifest.method.method == Method::grid) {
        write_file(out_path("grid_results.jsonl"), grid_results_jsonl(sessions, outcomes));
        write_file(out_path("grid_summary.csv"), grid_summary_csv(sessions, outcomes));
    }

    summary.manifest_path = out_path("manifest.json");
    write_file(summary.manifest_path, manifest.to_json());

    if (summary.sessions_skipped > 0) {
        log_warn(std::to_string(summary.sessions_skipped) + " session(s) skipped");
    }
    return summary;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

EvaluateOutcome evaluate_run_file(const std::string& run_path, const std::string& qrels_path,
                                  const std::string& mapping_path, const std::string& out_dir,
                                  bool missing_as_zero) {
    RunFile run = read_run(read_file(run_path));
    MappingConfig mapping;
    if (!mapping_path.empty()) mapping = load_mapping(mapping_path);
    Qrels qrels = load_qrels(qrels_path, mapping).qrels;

    EvaluateOutcome outcome;
    EvalOptions options;
    options.missing_as_zero = missing_as_zero;
    outcome.eval = evaluate_run(run.rankings, qrels, options);
    outcome.mismatch =
        !outcome.eval.unknown_sessions.empty() || outcome.eval.qrels_missing_from_run > 0;

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file((fs::path(out_dir) / "persession.csv").string(),
                   per_session_csv(outcome.eval));
        json aggregate;
        aggregate["run"] = run_path;
        aggregate["tag"] = run.tag;
        aggregate["evaluation"] = eval_to_json(outcome.eval);
        write_file((fs::path(out_dir) / "aggregate.json").string(), aggregate.dump(2) + "\n");
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

const std::vector<ReferenceRow>& reference_results() {
    static const std::vector<ReferenceRow> rows = {
        {"oracle", "2011", 0.777, 0.868},     {"oracle", "2012", 0.695, 0.865},
        {"oracle", "2013", 0.517, 0.920},     {"oracle", "2014", 0.410, 0.800},
        {"tf_first", "2011", 0.371, 0.568},   {"tf_first", "2012", 0.302, 0.523},
        {"tf_first", "2013", 0.121, 0.379},   {"tf_first", "2014", 0.120, 0.336},
        {"tf_last", "2011", 0.358, 0.598},    {"tf_last", "2012", 0.316, 0.586},
        {"tf_last", "2013", 0.133, 0.358},    {"tf_last", "2014", 0.156, 0.458},
        {"tf_all", "2011", 0.448, 0.685},     {"tf_all", "2012", 0.348, 0.604},
        {"tf_all", "2013", 0.162, 0.477},     {"tf_all", "2014", 0.174, 0.478},
        {"nugget_rl2", "2011", 0.437, 0.677}, {"nugget_rl2", "2012", 0.352, 0.609},
        {"nugget_rl2", "2013", 0.163, 0.488}, {"nugget_rl2", "2014", 0.173, 0.476},
        {"nugget_rl3", "2011", 0.442, 0.678}, {"nugget_rl3", "2012", 0.360, 0.619},
        {"nugget_rl3", "2013", 0.162, 0.488}, {"nugget_rl3", "2014", 0.172, 0.477},
        {"nugget_rl4", "2011", 0.437, 0.677}, {"nugget_rl4", "2012", 0.352, 0.609},
        {"nugget_rl4", "2013", 0.163, 0.488}, {"nugget_rl4", "2014", 0.173, 0.476},
        {"qcm", "2011", 0.440, 0.661},        {"qcm", "2012", 0.342, 0.575},
        {"qcm", "2013", 0.160, 0.484},        {"qcm", "2014", 0.162, 0.450},
    };
    return rows;
}

namespace {

json box_to_json(const BoxStats& box) {
    json j;
    j["q1"] = box.q1;
    j["median"] = box.median;
    j["q3"] = box.q3;
    j["mean"] = box.mean;
    j["whisker_low"] = box.whisker_low;
    j["whisker_high"] = box.whisker_high;
    j["outliers"] = box.outliers;
    return j;
}

}  // namespace

ReportSummary report_runs(const ReportOptions& options) {
    if (options.out_dir.empty()) throw Error("report needs an output directory");
    if (options.run_paths.empty()) throw Error("report needs at least one run file");

    MappingConfig mapping;
    if (!options.mapping_path.empty()) mapping = load_mapping(options.mapping_path);
    Qrels qrels = load_qrels(options.qrels_path, mapping).qrels;

    std::optional<Index> index;
    if (!options.index_path.empty()) index = Index::load(options.index_path);

    std::vector<Session> sessions;
    if (!options.sessions_path.empty()) {
        TokenizerConfig tokenizer = index ? index->tokenizer() : TokenizerConfig{};
        sessions = load_sessions(options.sessions_path, tokenizer);
    }

    AnchorTexts anchors_storage;
    const AnchorTexts* anchors = nullptr;
    if (!options.anchors_path.empty()) {
        anchors_storage = AnchorTexts::load(options.anchors_path);
        anchors = &anchors_storage;
    }

    ReportSummary summary;
    fs::create_directories(options.out_dir);
    auto out_path = [&](const char* name) { return (fs::path(options.out_dir) / name).string(); };

    struct RunEval {
        std::string tag;
        EvalSummary eval;
    };
    std::vector<RunEval> evals;
    for (const std::string& path : options.run_paths) {
        RunFile run = read_run(read_file(path));
        RunEval entry;
        entry.tag = run.tag.empty() ? fs::path(path).stem().string() : run.tag;
        entry.eval = evaluate_run(run.rankings, qrels);
        if (!entry.eval.unknown_sessions.empty() || entry.eval.qrels_missing_from_run > 0) {
            summary.mismatch = true;
        }
        evals.push_back(std::move(entry));
    }

    // Table of local results, one row per run, plus the published reference
    // rows on request.
    std::string table = "method,edition,sessions,ndcg10,mrr\n";
    for (const RunEval& e : evals) {
        table += e.tag;
        table += ",local,";
        table += std::to_string(e.eval.per_session.size());
        table += ',';
        table += e.eval.mean_ndcg ? format_fixed6(*e.eval.mean_ndcg) : "";
        table += ',';
        table += e.eval.mean_mrr ? format_fixed6(*e.eval.mean_mrr) : "";
        table += '\n';
    }
    if (options.reference_table) {
        for (const ReferenceRow& row : reference_results()) {
            table += row.method;
            table += ',';
            table += row.edition;
            table += ",,";
            table += format_fixed6(row.ndcg_at_10);
            table += ',';
            table += format_fixed6(row.mrr);
            table += '\n';
        }
    }
    write_file(out_path("table2.csv"), table);
    summary.artifacts.push_back(out_path("table2.csv"));

    json boxes = json::object();
    for (const RunEval& e : evals) {
        std::vector<double> values;
        values.reserve(e.eval.per_session.size());
        for (const EvalResult& r : e.eval.per_session) values.push_back(r.ndcg_at_10);
        if (!values.empty()) boxes[e.tag] = box_to_json(box_stats(values));
    }
    write_file(out_path("fig2_box.json"), boxes.dump(2) + "\n");
    summary.artifacts.push_back(out_path("fig2_box.json"));

    if (!sessions.empty()) {
        std::string by_length = "method,session_length,sessions,mean_ndcg10\n";
        for (const RunEval& e : evals) {
            for (const auto& [length, bucket] : by_session_length(e.eval.per_session, sessions)) {
                by_length += e.tag;
                by_length += ',';
                by_length += std::to_string(length);
                by_length += ',';
                by_length += std::to_string(bucket.count);
                by_length += ',';
                by_length += format_fixed6(bucket.mean_ndcg);
                by_length += '\n';
            }
        }
        write_file(out_path("fig3_by_length.csv"), by_length);
        summary.artifacts.push_back(out_path("fig3_by_length.csv"));
    }

    // Progressing-session deltas need the index to replay truncated sessions.
    if (index && !sessions.empty()) {
        EngineConfig engine{RankerConfig{options.first_pass_n, options.smoothing}};
        std::string fig4 = "method,history_mode,step,sessions,mean_delta_ndcg10\n";

        std::vector<const Session*> five_query;
        for (const Session& s : sessions) {
            if (s.num_queries() == 5 && qrels.count(s.session_id) > 0 &&
                has_positive_judgment(qrels.at(s.session_id))) {
                five_query.push_back(&s);
            }
        }
        for (const RunEval& e : evals) {
            auto method = parse_method(e.tag);
            if (!method || !is_model_method(*method)) {
                log_warn("run tag '" + e.tag + "' is not a model method; no progressing report");
                continue;
            }
            MethodConfig config;
            config.method = *method;
            MethodConfig baseline;
            baseline.method = Method::tf_last;
            for (HistoryMode mode : {HistoryMode::full_history, HistoryMode::previous_query_only}) {
                std::vector<double> delta_sums(5, 0.0);
                long counted = 0;
                for (const Session* s : five_query) {
                    const JudgmentMap& judgments = qrels.at(s->session_id);
                    std::vector<double> values =
                        progressing_session(*index, *s, config, judgments, mode, engine, anchors);
                    std::vector<double> base =
                        progressing_session(*index, *s, baseline, judgments, mode, engine, anchors);
                    for (size_t step = 0; step < 5; step++) {
                        delta_sums[step] += values[step] - base[step];
                    }
                    counted++;
                }
                if (counted == 0) continue;
                const char* mode_name =
                    mode == HistoryMode::full_history ? "full_history" : "previous_query_only";
                for (size_t step = 0; step < 5; step++) {
                    fig4 += e.tag;
                    fig4 += ',';
                    fig4 += mode_name;
                    fig4 += ',';
                    fig4 += std::to_string(step + 1);
                    fig4 += ',';
                    fig4 += std::to_string(counted);
                    fig4 += ',';
                    fig4 += format_fixed6(delta_sums[step] / static_cast<double>(counted));
                    fig4 += '\n';
                }
            }
        }
        write_file(out_path("fig4_progressing.csv"), fig4);
        summary.artifacts.push_back(out_path("fig4_progressing.csv"));
    }
    return summary;
}

}  // namespace sesh
