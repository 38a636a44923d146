#include "sesh/lmscore.hpp"

#include <cmath>

#include "sesh/common.hpp"

namespace sesh {

LexEntity unigram(Term term) { return LexEntity{std::move(term)}; }

void QueryModel::set(const LexEntity& entity, double weight) {
    if (entity.empty()) throw Error("empty lexical entity");
    if (!std::isfinite(weight)) throw Error("non-finite query model weight");
    if (weight == 0.0) {
        weights_.erase(entity);
    } else {
        weights_[entity] = weight;
    }
}

void QueryModel::add(const LexEntity& entity, double weight) {
    if (entity.empty()) throw Error("empty lexical entity");
    if (!std::isfinite(weight)) throw Error("non-finite query model weight");
    auto it = weights_.find(entity);
    double next = (it == weights_.end() ? 0.0 : it->second) + weight;
    set(entity, next);
}

double QueryModel::weight(const LexEntity& entity) const {
    auto it = weights_.find(entity);
    return it == weights_.end() ? 0.0 : it->second;
}

double doc_prob(const Index& index, const Document& doc, const LexEntity& entity,
                const SmoothingConfig& cfg) {
    if (cfg.mu <= 0) throw Error("Dirichlet mu must be positive");
    if (entity.empty()) throw Error("empty lexical entity");
    double freq = 0.0;
    double len_units = 0.0;
    double coll = 0.0;
    if (entity.size() == 1) {
        TermId t = index.term_id(entity[0]);
        freq = static_cast<double>(doc.freq_of(t));
        len_units = static_cast<double>(doc.length);
        coll = index.coll_prob(t);
    } else {
        freq = static_cast<double>(index.phrase_freq(doc, entity));
        len_units = static_cast<double>(
            std::max<int64_t>(0, doc.length - static_cast<int64_t>(entity.size()) + 1));
        coll = index.coll_phrase_prob(entity);
    }
    return (freq + cfg.mu * coll) / (len_units + cfg.mu);
}

double score(const Index& index, const Document& doc, const QueryModel& qm,
             const SmoothingConfig& cfg) {
    if (qm.empty()) throw Error("empty query model");
    double total = 0.0;
    for (const auto& [entity, weight] : qm) {
        total += weight * std::log(doc_prob(index, doc, entity, cfg));
    }
    return total;
}

double idf_of(int64_t num_docs, int64_t doc_freq) {
    return std::log((static_cast<double>(num_docs) + 1.0) /
                    (static_cast<double>(doc_freq) + 0.5));
}

double idf(const Index& index, const Term& term) {
    return idf_of(index.num_docs(), index.doc_freq(index.term_id(term)));
}

namespace {

// ML estimate of term probability over a set of indexed documents.
double ml_prob(const Index& index, const std::vector<const Document*>& docs, const Term& term) {
    TermId t = index.term_id(term);
    int64_t freq = 0;
    int64_t length = 0;
    for (const Document* doc : docs) {
        freq += doc->freq_of(t);
        length += doc->length;
    }
    if (length == 0) return 0.0;
    return static_cast<double>(freq) / static_cast<double>(length);
}

}  // namespace

double sat_prob(const Index& index, const Session& session, size_t i, const Term& term,
                ClickProbSource source) {
    if (i < 1 || i > session.history.size()) {
        throw Error("interaction index " + std::to_string(i) + " out of range in session " +
                    session.session_id);
    }
    const Interaction& interaction = session.history[i - 1];

    std::vector<const ResultEntry*> referenced;
    if (source == ClickProbSource::sat_then_top) {
        for (const auto& entry : interaction.serp) {
            if (entry.sat_click) referenced.push_back(&entry);
        }
    }
    if (referenced.empty() && !interaction.serp.empty()) {
        referenced.push_back(&interaction.serp.front());  // rank 1
    }

    std::vector<const Document*> docs;
    for (const ResultEntry* entry : referenced) {
        if (const Document* doc = index.find_doc(entry->docno)) docs.push_back(doc);
    }
    if (docs.empty()) return 0.0;
    return ml_prob(index, docs, term);
}

}  // namespace sesh
