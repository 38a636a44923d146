#pragma once

#include <string>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/lmscore.hpp"
#include "sesh/session.hpp"

namespace sesh {

struct RankedEntry {
    std::string docno;
    double score = 0.0;
    int rank = 0;  // 1-based, contiguous
};

// Invariants: ranks contiguous from 1, scores non-increasing, ties broken by
// ascending docno, no duplicate docnos.
struct Ranking {
    std::string session_id;
    std::vector<RankedEntry> entries;
};

struct CandidateSet {
    std::string session_id;
    std::vector<std::string> docnos;  // first-pass order
};

struct RankerConfig {
    int first_pass_n = 2000;
    SmoothingConfig smoothing;
};

// Scores every indexed document with the TF model of the current query and
// keeps the top N. This is both the candidate generator and, by definition,
// the TF(last query) baseline ordering.
CandidateSet first_pass(const Index& index, const Session& session, const RankerConfig& cfg);

// Reorders the candidate set by score under the query model. Candidates
// missing from the index sort last with a score of -infinity.
Ranking rerank(const Index& index, const CandidateSet& candidates, const QueryModel& qm,
               const RankerConfig& cfg);

// Assembles a ranking from (docno, score) pairs under the standard tie rule;
// shared by the ranker and the oracles.
Ranking make_ranking(std::string session_id, std::vector<std::pair<std::string, double>> scored);

void validate_ranking(const Ranking& ranking);

// TREC run lines: "session_id Q0 docno rank score tag", scores with six
// decimal places, sessions in input order.
std::string write_run(const std::vector<Ranking>& rankings, const std::string& tag);

struct RunFile {
    std::vector<Ranking> rankings;  // in first-appearance order
    std::string tag;                // tag of the first line
};

RunFile read_run(std::string_view text);

}  // namespace sesh
