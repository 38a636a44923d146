#pragma once

#include <span>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/lmscore.hpp"

namespace sesh::kernels {

// A query model resolved against an index so the hot loops never touch
// strings: per entity, the weight plus either a term id or the position
// lists needed for phrase counting, and the collection probability.
struct CompiledEntity {
    double weight = 0.0;
    double coll_prob = 0.0;
    bool is_unigram = true;
    TermId term = kNoTerm;
    std::vector<TermId> gram;  // set when is_unigram is false
};

struct CompiledModel {
    std::vector<CompiledEntity> entities;  // in query-model iteration order
    double mu = 2500.0;
};

CompiledModel compile(const Index& index, const QueryModel& qm, const SmoothingConfig& cfg);

// Log-linear score of one document. Exactly lmscore::score, minus the
// per-call lookups.
double score_doc(const Index& index, const Document& doc, const CompiledModel& model);

// Scores for every document in the index, in internal-id order. The parallel
// version is bit-identical to the serial reference at any thread count:
// every document's score is computed independently.
std::vector<double> score_all(const Index& index, const CompiledModel& model);
std::vector<double> score_all_serial(const Index& index, const CompiledModel& model);

// Scores for an explicit list of internal ids.
std::vector<double> score_docs(const Index& index, std::span<const int32_t> ids,
                               const CompiledModel& model);
std::vector<double> score_docs_serial(const Index& index, std::span<const int32_t> ids,
                                      const CompiledModel& model);

}  // namespace sesh::kernels
