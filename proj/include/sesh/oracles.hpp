#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/lmscore.hpp"
#include "sesh/metrics.hpp"
#include "sesh/qrels.hpp"
#include "sesh/ranker.hpp"
#include "sesh/session.hpp"

namespace sesh {

// Ranks candidates by judged gain, descending; unjudged documents count as
// gain 0 and ties fall back to ascending docno. Scores are the gains.
Ranking ground_truth_rank(const CandidateSet& candidates, const JudgmentMap& judgments);

struct GridConfig {
    double lo = -1.0;
    double hi = 1.0;
    double step = 0.1;
    int max_unique_terms = 7;
    // Guardrails: sessions whose grid would exceed the assignment budget are
    // skipped with a report; candidates are truncated to the first
    // max_candidates first-pass entries (0 keeps them all).
    int64_t max_assignments = 10'000'000;
    int max_candidates = 200;

    int64_t points_per_term() const;
};

struct GridResult {
    std::string session_id;
    QueryModel best_weights;
    double best_ndcg = 0.0;
    int64_t assignments_evaluated = 0;
};

enum class GridStatus {
    ok,
    skipped_too_many_terms,
    skipped_no_positive_judgments,
    skipped_assignment_budget,
};

struct GridOutcome {
    GridStatus status = GridStatus::ok;
    std::optional<GridResult> result;
    std::string detail;
    std::vector<Term> terms;  // unique query terms, sorted
};

// Precomputed per-session state: one log-probability row per term over the
// (possibly truncated) candidate list, pre-sorted by docno so a stable sort
// on scores realizes the docno tie rule.
struct GridSearchProblem {
    std::string session_id;
    std::vector<Term> terms;
    std::vector<std::string> docnos;           // ascending
    std::vector<std::vector<double>> logprob;  // [term][candidate]
    std::vector<char> missing;                 // candidate absent from the index
    std::vector<int> gains;                    // per candidate
    double ideal_dcg10 = 0.0;
    GridConfig grid;
};

GridSearchProblem make_grid_problem(const Index& index, const Session& session,
                                    const CandidateSet& candidates, const JudgmentMap& judgments,
                                    const GridConfig& grid, const SmoothingConfig& smoothing);

// NDCG@10 of one explicit weight assignment (same tie rules as the search);
// used by the search itself and by dominance checks.
double evaluate_assignment(const GridSearchProblem& problem, std::span<const double> weights);

// Full ranking realized by one weight assignment, with the same ordering the
// search scores internally.
Ranking assignment_ranking(const GridSearchProblem& problem, std::span<const double> weights);

// The weight vector of the session's TF(all queries) model scaled onto the
// lattice (count * step per term), or nullopt when some count falls outside
// the grid. Reranking by it orders candidates exactly like the TF model.
std::optional<std::vector<double>> scaled_tf_point(const GridSearchProblem& problem,
                                                   const Session& session);

// Exhaustive search over the weight lattice. Ties between assignments go to
// the lexicographically smallest weight vector. The parallel version is
// bit-identical to the serial reference at any thread count.
GridResult grid_search(const GridSearchProblem& problem);
GridResult grid_search_serial(const GridSearchProblem& problem);

// Full per-session oracle: collects unique terms, applies the guardrails and
// runs the search.
GridOutcome ideal_weights(const Index& index, const Session& session,
                          const CandidateSet& candidates, const JudgmentMap& judgments,
                          const GridConfig& grid, const SmoothingConfig& smoothing);

// Weight vector of one lattice point, in enumeration order.
std::vector<double> grid_point(const GridConfig& grid, size_t num_terms, int64_t index);

}  // namespace sesh
