#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/lmscore.hpp"
#include "sesh/session.hpp"

namespace sesh {

enum class AggregationScheme { uniform };

enum class TfScope { first_query, last_query, all_queries };

enum class NuggetVariant { RL2, RL3, RL4 };

// How the acceptance threshold theta is read when testing a candidate
// n-gram against the expansion snippets.
enum class NuggetThreshold {
    coverage_fraction,  // accepted iff containing-fraction >= theta
    min_count,          // accepted iff containing-count >= theta
};

struct NuggetParams {
    int k_snippet = 10;
    double theta = 0.97;
    int k_anchor = 5;
    double beta = 0.1;
    NuggetVariant variant = NuggetVariant::RL2;
    NuggetThreshold threshold = NuggetThreshold::coverage_fraction;
    // Longest n-gram mined from a query; raise via config if needed.
    int max_order = 3;
};

struct QcmParams {
    double alpha = 2.2;
    double beta = 1.8;
    double epsilon = 0.07;
    double delta = 0.4;
    ClickProbSource prob_source = ClickProbSource::sat_then_top;
};

struct QcmDecomposition {
    std::set<Term> theme;    // terms shared with the previous query
    std::set<Term> added;    // new terms
    std::set<Term> removed;  // terms dropped from the previous query
};

enum class QcmBranch { theme, added_present, added_absent, removed };

// docno -> anchor strings pointing at the document.
class AnchorTexts {
public:
    static AnchorTexts parse_jsonl(std::string_view text);
    static AnchorTexts load(const std::string& path);

    void add(const std::string& docno, std::string anchor);
    const std::vector<std::string>* anchors_for(const std::string& docno) const;
    size_t size() const { return anchors_.size(); }

private:
    std::map<std::string, std::vector<std::string>> anchors_;
};

// Term-frequency model of a single query. Empty queries have no model.
QueryModel tf_model(const Query& query);

// Entity-wise sum; exact cancellation drops the entry.
QueryModel aggregate(const std::vector<QueryModel>& models, AggregationScheme scheme);

QueryModel tf_session_model(const Session& session, TfScope scope);

QcmDecomposition qcm_decompose(const Query& q_prev, const Query& q_cur);

// The query-change case equation itself, exposed for direct verification:
//   theme:          1 + alpha * (1 - P)
//   added_present:  1 - beta * P
//   added_absent:   1 + epsilon * idf
//   removed:        -delta * P
double qcm_case_weight(QcmBranch branch, double p, double idf_value, const QcmParams& params);

// Per-interaction query model. i = 1 degenerates to the TF model of the
// first query; i >= 2 applies the case equation against interaction i-1.
QueryModel qcm_interaction_model(const Index& index, const Session& session, size_t i,
                                 const QcmParams& params);

QueryModel qcm_session_model(const Index& index, const Session& session, const QcmParams& params);

QueryModel nugget_model(const Index& index, const Session& session, const NuggetParams& params,
                        const AnchorTexts* anchors = nullptr);

}  // namespace sesh
