#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/session.hpp"

namespace sesh {

struct SmoothingConfig {
    double mu = 2500.0;  // Dirichlet pseudo-count
};

// A lexical entity is a unigram (size 1) or a contiguous n-gram (size >= 2).
using LexEntity = std::vector<Term>;

LexEntity unigram(Term term);

// Sparse weights over lexical entities. Zero weights are never stored, so
// exact cancellation during aggregation removes the entry.
class QueryModel {
public:
    void set(const LexEntity& entity, double weight);
    void add(const LexEntity& entity, double weight);
    double weight(const LexEntity& entity) const;
    bool contains(const LexEntity& entity) const { return weights_.count(entity) > 0; }

    bool empty() const { return weights_.empty(); }
    size_t size() const { return weights_.size(); }

    auto begin() const { return weights_.begin(); }
    auto end() const { return weights_.end(); }

    bool operator==(const QueryModel&) const = default;

private:
    std::map<LexEntity, double> weights_;
};

// Dirichlet-smoothed probability of the entity under the document model:
// (freq + mu * P_c) / (len_units + mu), where len_units is |d| for unigrams
// and the window count max(0, |d|-n+1) for n-grams.
double doc_prob(const Index& index, const Document& doc, const LexEntity& entity,
                const SmoothingConfig& cfg);

// Ranking score: sum over entities of weight * log(doc_prob). Negative
// weights reward absence.
double score(const Index& index, const Document& doc, const QueryModel& qm,
             const SmoothingConfig& cfg);

// ln((N + 1) / (df + 0.5)); finite for df = 0.
double idf(const Index& index, const Term& term);
double idf_of(int64_t num_docs, int64_t doc_freq);

// Source of the click-based term probability used by the query change model.
enum class ClickProbSource {
    sat_then_top,  // SAT-clicked documents; top-ranked result when none
    top_doc,       // always the top-ranked result of the interaction
};

// Maximum-likelihood probability of the term in the clicked evidence of
// interaction i (1-based). Returns 0 when every referenced document is
// missing from the index.
double sat_prob(const Index& index, const Session& session, size_t i, const Term& term,
                ClickProbSource source = ClickProbSource::sat_then_top);

}  // namespace sesh
