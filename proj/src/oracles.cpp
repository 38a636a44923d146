#include "sesh/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "sesh/common.hpp"
#include "sesh/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sesh {

Ranking ground_truth_rank(const CandidateSet& candidates, const JudgmentMap& judgments) {
    if (candidates.docnos.empty()) throw Error("empty candidate set");
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(candidates.docnos.size());
    for (const std::string& docno : candidates.docnos) {
        scored.emplace_back(docno, static_cast<double>(gain_of(judgments, docno)));
    }
    return make_ranking(candidates.session_id, std::move(scored));
}

int64_t GridConfig::points_per_term() const {
    if (step <= 0 || lo >= hi) throw Error("bad grid configuration");
    return static_cast<int64_t>(std::llround((hi - lo) / step)) + 1;
}

namespace {

// The lattice is enumerated with integer digits so no floating-point drift
// accumulates across points: weight = (k_lo + digit) * step.
double lattice_weight(const GridConfig& grid, int64_t digit) {
    int64_t k_lo = static_cast<int64_t>(std::llround(grid.lo / grid.step));
    return static_cast<double>(k_lo + digit) * grid.step;
}

}  // namespace

GridSearchProblem make_grid_problem(const Index& index, const Session& session,
                                    const CandidateSet& candidates, const JudgmentMap& judgments,
                                    const GridConfig& grid, const SmoothingConfig& smoothing) {
    GridSearchProblem problem;
    problem.session_id = session.session_id;
    problem.grid = grid;

    std::set<Term> unique;
    for (size_t i = 1; i <= session.num_queries(); i++) {
        for (const Term& t : session.query_at(i).terms) unique.insert(t);
    }
    problem.terms.assign(unique.begin(), unique.end());

    size_t take = candidates.docnos.size();
    if (grid.max_candidates > 0) {
        take = std::min(take, static_cast<size_t>(grid.max_candidates));
    }
    problem.docnos.assign(candidates.docnos.begin(),
                          candidates.docnos.begin() + static_cast<long>(take));
    std::sort(problem.docnos.begin(), problem.docnos.end());

    problem.gains.reserve(problem.docnos.size());
    problem.missing.reserve(problem.docnos.size());
    for (const std::string& docno : problem.docnos) {
        problem.gains.push_back(gain_of(judgments, docno));
        problem.missing.push_back(index.find_doc(docno) == nullptr ? 1 : 0);
    }
    problem.ideal_dcg10 = ideal_dcg(judgments, 10);

    problem.logprob.resize(problem.terms.size());
    for (size_t t = 0; t < problem.terms.size(); t++) {
        QueryModel single;
        single.set(unigram(problem.terms[t]), 1.0);
        auto compiled = kernels::compile(index, single, smoothing);
        problem.logprob[t].resize(problem.docnos.size());
        for (size_t c = 0; c < problem.docnos.size(); c++) {
            const Document* doc = index.find_doc(problem.docnos[c]);
            problem.logprob[t][c] =
                doc == nullptr ? 0.0 : kernels::score_doc(index, *doc, compiled);
        }
    }
    return problem;
}

double evaluate_assignment(const GridSearchProblem& problem, std::span<const double> weights) {
    const size_t num_candidates = problem.docnos.size();
    const size_t num_terms = problem.terms.size();
    if (weights.size() != num_terms) throw Error("weight vector/term count mismatch");
    if (problem.ideal_dcg10 <= 0) return 0.0;

    std::vector<double> scores(num_candidates, 0.0);
    for (size_t t = 0; t < num_terms; t++) {
        double w = weights[t];
        if (w == 0.0) continue;
        const std::vector<double>& row = problem.logprob[t];
        for (size_t c = 0; c < num_candidates; c++) {
            scores[c] += w * row[c];
        }
    }
    // Same convention as rerank(): index-missing candidates sort last.
    for (size_t c = 0; c < num_candidates; c++) {
        if (problem.missing[c] != 0) scores[c] = -std::numeric_limits<double>::infinity();
    }

    // Candidates are pre-sorted by docno, so a stable sort by score keeps the
    // ascending-docno tie rule.
    const size_t k = std::min<size_t>(10, num_candidates);
    std::vector<int32_t> order(num_candidates);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&scores](int32_t a, int32_t b) { return scores[a] > scores[b]; });

    double dcg = 0.0;
    for (size_t r = 0; r < k; r++) {
        int gain = problem.gains[static_cast<size_t>(order[r])];
        if (gain > 0) dcg += gain * rank_discount(static_cast<int>(r) + 1);
    }
    return dcg / problem.ideal_dcg10;
}

Ranking assignment_ranking(const GridSearchProblem& problem, std::span<const double> weights) {
    const size_t num_candidates = problem.docnos.size();
    if (weights.size() != problem.terms.size()) throw Error("weight vector/term count mismatch");
    std::vector<std::pair<std::string, double>> scored(num_candidates);
    for (size_t c = 0; c < num_candidates; c++) {
        scored[c].first = problem.docnos[c];
    }
    for (size_t t = 0; t < problem.terms.size(); t++) {
        double w = weights[t];
        if (w == 0.0) continue;
        for (size_t c = 0; c < num_candidates; c++) {
            scored[c].second += w * problem.logprob[t][c];
        }
    }
    for (size_t c = 0; c < num_candidates; c++) {
        if (problem.missing[c] != 0) {
            scored[c].second = -std::numeric_limits<double>::infinity();
        }
    }
    return make_ranking(problem.session_id, std::move(scored));
}

std::optional<std::vector<double>> scaled_tf_point(const GridSearchProblem& problem,
                                                   const Session& session) {
    std::map<Term, int> counts;
    for (size_t i = 1; i <= session.num_queries(); i++) {
        for (const Term& t : session.query_at(i).terms) counts[t]++;
    }
    std::vector<double> weights(problem.terms.size(), 0.0);
    const double eps = problem.grid.step * 1e-9;
    for (size_t t = 0; t < problem.terms.size(); t++) {
        double w = static_cast<double>(counts[problem.terms[t]]) * problem.grid.step;
        if (w < problem.grid.lo - eps || w > problem.grid.hi + eps) return std::nullopt;
        weights[t] = w;
    }
    return weights;
}

namespace {

struct BestPoint {
    double ndcg = -1.0;
    int64_t index = -1;

    // Higher NDCG wins; equal NDCG goes to the earlier (lexicographically
    // smaller) assignment.
    bool beats(const BestPoint& other) const {
        if (ndcg != other.ndcg) return ndcg > other.ndcg;
        return index < other.index;
    }
};

int64_t total_assignments(const GridSearchProblem& problem) {
    int64_t points = problem.grid.points_per_term();
    int64_t total = 1;
    for (size_t t = 0; t < problem.terms.size(); t++) {
        if (total > (int64_t{1} << 62) / points) throw Error("grid too large");
        total *= points;
    }
    return total;
}

GridResult finish(const GridSearchProblem& problem, const BestPoint& best, int64_t total) {
    GridResult result;
    result.session_id = problem.session_id;
    result.best_ndcg = best.ndcg;
    result.assignments_evaluated = total;
    std::vector<double> weights = grid_point(problem.grid, problem.terms.size(), best.index);
    for (size_t t = 0; t < problem.terms.size(); t++) {
        if (weights[t] != 0.0) {
            result.best_weights.set(unigram(problem.terms[t]), weights[t]);
        }
    }
    return result;
}

}  // namespace

std::vector<double> grid_point(const GridConfig& grid, size_t num_terms, int64_t index) {
    int64_t points = grid.points_per_term();
    std::vector<double> weights(num_terms, 0.0);
    // First term is the most significant digit, so ascending index is
    // lexicographic order over weight vectors.
    for (size_t t = num_terms; t-- > 0;) {
        weights[t] = lattice_weight(grid, index % points);
        index /= points;
    }
    return weights;
}

GridResult grid_search_serial(const GridSearchProblem& problem) {
    const int64_t total = total_assignments(problem);
    BestPoint best;
    std::vector<double> weights(problem.terms.size());
    for (int64_t i = 0; i < total; i++) {
        weights = grid_point(problem.grid, problem.terms.size(), i);
        BestPoint point{evaluate_assignment(problem, weights), i};
        if (point.beats(best)) best = point;
    }
    return finish(problem, best, total);
}

GridResult grid_search(const GridSearchProblem& problem) {
    const int64_t total = total_assignments(problem);
    BestPoint best;
#pragma omp parallel
    {
        BestPoint local;
        std::vector<double> weights(problem.terms.size());
#pragma omp for schedule(static) nowait
        for (int64_t i = 0; i < total; i++) {
            weights = grid_point(problem.grid, problem.terms.size(), i);
            BestPoint point{evaluate_assignment(problem, weights), i};
            if (point.beats(local)) local = point;
        }
#pragma omp critical(sesh_grid_reduce)
        {
            if (local.index >= 0 && local.beats(best)) best = local;
        }
    }
    return finish(problem, best, total);
}

GridOutcome ideal_weights(const Index& index, const Session& session,
                          const CandidateSet& candidates, const JudgmentMap& judgments,
                          const GridConfig& grid, const SmoothingConfig& smoothing) {
    GridOutcome outcome;

    std::set<Term> unique;
    for (size_t i = 1; i <= session.num_queries(); i++) {
        for (const Term& t : session.query_at(i).terms) unique.insert(t);
    }
    outcome.terms.assign(unique.begin(), unique.end());

    if (static_cast<int>(outcome.terms.size()) > grid.max_unique_terms) {
        outcome.status = GridStatus::skipped_too_many_terms;
        outcome.detail = "session " + session.session_id + " has " +
                         std::to_string(outcome.terms.size()) + " unique terms (limit " +
                         std::to_string(grid.max_unique_terms) + ")";
        log_info(outcome.detail);
        return outcome;
    }
    if (!has_positive_judgment(judgments)) {
        outcome.status = GridStatus::skipped_no_positive_judgments;
        outcome.detail = "session " + session.session_id + " has no positively judged documents";
        log_info(outcome.detail);
        return outcome;
    }
    int64_t points = grid.points_per_term();
    double assignments = std::pow(static_cast<double>(points),
                                  static_cast<double>(outcome.terms.size()));
    if (assignments > static_cast<double>(grid.max_assignments)) {
        outcome.status = GridStatus::skipped_assignment_budget;
        outcome.detail = "session " + session.session_id + " needs " +
                         std::to_string(assignments) + " assignments (budget " +
                         std::to_string(grid.max_assignments) + ")";
        log_warn(outcome.detail);
        return outcome;
    }

    GridSearchProblem problem =
        make_grid_problem(index, session, candidates, judgments, grid, smoothing);
    outcome.result = grid_search(problem);
    return outcome;
}

}  // namespace sesh
