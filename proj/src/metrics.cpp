#include "sesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sesh/common.hpp"

namespace sesh {

bool has_positive_judgment(const JudgmentMap& judgments) {
    for (const auto& [_, grade] : judgments) {
        if (grade > 0) return true;
    }
    return false;
}

double ideal_dcg(const JudgmentMap& judgments, int k) {
    std::vector<int> gains;
    gains.reserve(judgments.size());
    for (const auto& [_, grade] : judgments) {
        if (grade > 0) gains.push_back(grade);
    }
    std::sort(gains.begin(), gains.end(), std::greater<>());
    double total = 0.0;
    for (size_t i = 0; i < gains.size() && i < static_cast<size_t>(k); i++) {
        total += gains[i] * rank_discount(static_cast<int>(i) + 1);
    }
    return total;
}

double ndcg_at_k(const Ranking& ranking, const JudgmentMap& judgments, int k) {
    if (!has_positive_judgment(judgments)) {
        throw Error("session " + ranking.session_id + " has no positively judged documents");
    }
    double dcg = 0.0;
    for (const RankedEntry& e : ranking.entries) {
        if (e.rank > k) break;
        int gain = gain_of(judgments, e.docno);
        if (gain > 0) dcg += gain * rank_discount(e.rank);
    }
    return dcg / ideal_dcg(judgments, k);
}

double mrr(const Ranking& ranking, const JudgmentMap& judgments) {
    if (!has_positive_judgment(judgments)) {
        throw Error("session " + ranking.session_id + " has no positively judged documents");
    }
    for (const RankedEntry& e : ranking.entries) {
        if (gain_of(judgments, e.docno) > 0) {
            return 1.0 / static_cast<double>(e.rank);
        }
    }
    return 0.0;
}

EvalSummary evaluate_run(const std::vector<Ranking>& run, const Qrels& qrels,
                         const EvalOptions& options) {
    EvalSummary out;
    std::set<std::string> run_sessions;
    double ndcg_sum = 0.0;
    double mrr_sum = 0.0;

    for (const Ranking& ranking : run) {
        run_sessions.insert(ranking.session_id);
        auto it = qrels.find(ranking.session_id);
        if (it == qrels.end()) {
            log_warn("run session " + ranking.session_id + " has no judgments, skipped");
            out.unknown_sessions.push_back(ranking.session_id);
            continue;
        }
        if (!has_positive_judgment(it->second)) {
            log_info("session " + ranking.session_id +
                     " has no positively judged documents, excluded");
            out.excluded_no_positive++;
            continue;
        }
        EvalResult result;
        result.session_id = ranking.session_id;
        result.ndcg_at_10 = ndcg_at_k(ranking, it->second, options.k);
        result.mrr = mrr(ranking, it->second);
        ndcg_sum += result.ndcg_at_10;
        mrr_sum += result.mrr;
        out.per_session.push_back(std::move(result));
    }

    for (const auto& [session_id, judgments] : qrels) {
        if (run_sessions.count(session_id) > 0) continue;
        out.qrels_missing_from_run++;
        if (options.missing_as_zero && has_positive_judgment(judgments)) {
            log_warn("session " + session_id + " missing from the run, counted as 0");
            out.per_session.push_back({session_id, 0.0, 0.0});
        } else {
            log_warn("session " + session_id + " missing from the run, skipped");
        }
    }

    size_t n = out.per_session.size();
    if (n > 0) {
        out.mean_ndcg = ndcg_sum / static_cast<double>(n);
        out.mean_mrr = mrr_sum / static_cast<double>(n);
    }
    return out;
}

std::map<size_t, LengthBucket> by_session_length(const std::vector<EvalResult>& results,
                                                 const std::vector<Session>& sessions) {
    std::map<std::string, size_t> lengths;
    for (const Session& s : sessions) lengths[s.session_id] = s.num_queries();

    std::map<size_t, double> sums;
    std::map<size_t, LengthBucket> out;
    for (const EvalResult& r : results) {
        auto it = lengths.find(r.session_id);
        if (it == lengths.end()) {
            throw Error("no session definition for evaluated session " + r.session_id);
        }
        out[it->second].count++;
        sums[it->second] += r.ndcg_at_10;
    }
    for (auto& [length, bucket] : out) {
        bucket.mean_ndcg = sums[length] / static_cast<double>(bucket.count);
    }
    return out;
}

std::vector<double> progressing_session(const Index& index, const Session& session,
                                        const MethodConfig& method, const JudgmentMap& judgments,
                                        HistoryMode mode, const EngineConfig& engine,
                                        const AnchorTexts* anchors) {
    std::vector<double> out;
    out.reserve(session.num_queries());
    for (size_t j = 1; j <= session.num_queries(); j++) {
        Session truncated = truncate_session(session, j, mode);
        CandidateSet candidates = first_pass(index, truncated, engine.ranker);
        QueryModel qm = build_query_model(index, truncated, method, anchors);
        Ranking ranking = rerank(index, candidates, qm, engine.ranker);
        out.push_back(ndcg_at_k(ranking, judgments, 10));
    }
    return out;
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw Error("box_stats needs at least one value");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();

    auto quantile = [&](double p) {
        double h = static_cast<double>(n - 1) * p;
        size_t lo = static_cast<size_t>(h);
        double frac = h - static_cast<double>(lo);
        if (lo + 1 >= n) return values[n - 1];
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };

    BoxStats box;
    box.q1 = quantile(0.25);
    box.median = quantile(0.5);
    box.q3 = quantile(0.75);
    double sum = 0.0;
    for (double v : values) sum += v;
    box.mean = sum / static_cast<double>(n);

    double iqr = box.q3 - box.q1;
    double lo_fence = box.q1 - 1.5 * iqr;
    double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_low = values.back();
    box.whisker_high = values.front();
    for (double v : values) {
        if (v >= lo_fence && v <= hi_fence) {
            box.whisker_low = std::min(box.whisker_low, v);
            box.whisker_high = std::max(box.whisker_high, v);
        } else {
            box.outliers.push_back(v);
        }
    }
    return box;
}

}  // namespace sesh
