#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sesh/methods.hpp"
#include "sesh/qrels.hpp"
#include "sesh/ranker.hpp"
#include "sesh/session.hpp"

namespace sesh {

// Shared by the metric engine and the grid-search oracle so NDCG values from
// either path are bit-identical for the same ranking.
inline double rank_discount(int rank) {
    return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

struct EvalResult {
    std::string session_id;
    double ndcg_at_10 = 0.0;
    double mrr = 0.0;
};

struct BoxStats {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double mean = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
};

// Linear gain with negative grades clamped to 0 and discount 1/log2(r+1);
// the ideal ranking uses every judged document, truncated at k. Sessions
// with no positively judged document are not evaluable.
bool has_positive_judgment(const JudgmentMap& judgments);
double ideal_dcg(const JudgmentMap& judgments, int k);
double ndcg_at_k(const Ranking& ranking, const JudgmentMap& judgments, int k = 10);

// Reciprocal rank of the first positively judged document, over the whole
// ranking; 0 when none is retrieved.
double mrr(const Ranking& ranking, const JudgmentMap& judgments);

struct EvalOptions {
    int k = 10;
    // When set, sessions judged in the qrels but absent from the run count
    // as 0 instead of being skipped.
    bool missing_as_zero = false;
};

struct EvalSummary {
    std::vector<EvalResult> per_session;  // run order, evaluable sessions only
    std::optional<double> mean_ndcg;
    std::optional<double> mean_mrr;
    long excluded_no_positive = 0;            // judged sessions without positives
    std::vector<std::string> unknown_sessions;  // in the run but not the qrels
    long qrels_missing_from_run = 0;
};

EvalSummary evaluate_run(const std::vector<Ranking>& run, const Qrels& qrels,
                         const EvalOptions& options = {});

struct LengthBucket {
    long count = 0;
    double mean_ndcg = 0.0;
};

// Grouped by number of queries in the session (history + current).
std::map<size_t, LengthBucket> by_session_length(const std::vector<EvalResult>& results,
                                                 const std::vector<Session>& sessions);

struct EngineConfig {
    RankerConfig ranker;
};

// NDCG@10 after each interaction: step j ranks query j given either the full
// preceding history or only the previous interaction.
std::vector<double> progressing_session(const Index& index, const Session& session,
                                        const MethodConfig& method, const JudgmentMap& judgments,
                                        HistoryMode mode, const EngineConfig& engine,
                                        const AnchorTexts* anchors = nullptr);

// Quartiles by linear interpolation over the sorted sample; whiskers at the
// most extreme points within 1.5 IQR of the box.
BoxStats box_stats(std::vector<double> values);

}  // namespace sesh
