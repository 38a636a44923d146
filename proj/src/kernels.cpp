#include "sesh/kernels.hpp"

#include <cmath>

#include "sesh/common.hpp"

namespace sesh::kernels {

CompiledModel compile(const Index& index, const QueryModel& qm, const SmoothingConfig& cfg) {
    if (qm.empty()) throw Error("empty query model");
    if (cfg.mu <= 0) throw Error("Dirichlet mu must be positive");
    CompiledModel model;
    model.mu = cfg.mu;
    model.entities.reserve(qm.size());
    for (const auto& [entity, weight] : qm) {
        CompiledEntity ce;
        ce.weight = weight;
        if (entity.size() == 1) {
            ce.is_unigram = true;
            ce.term = index.term_id(entity[0]);
            ce.coll_prob = index.coll_prob(ce.term);
        } else {
            ce.is_unigram = false;
            ce.gram.reserve(entity.size());
            for (const Term& t : entity) ce.gram.push_back(index.term_id(t));
            ce.coll_prob = index.coll_phrase_prob(entity);
        }
        model.entities.push_back(std::move(ce));
    }
    return model;
}

namespace {

int64_t gram_freq(const Document& doc, std::span<const TermId> gram) {
    const std::vector<int32_t>* anchor = nullptr;
    size_t anchor_idx = 0;
    for (size_t i = 0; i < gram.size(); i++) {
        if (gram[i] == kNoTerm) return 0;
        const auto* pos = doc.positions_of(gram[i]);
        if (pos == nullptr) return 0;
        if (anchor == nullptr || pos->size() < anchor->size()) {
            anchor = pos;
            anchor_idx = i;
        }
    }
    int64_t count = 0;
    for (int32_t p : *anchor) {
        int32_t start = p - static_cast<int32_t>(anchor_idx);
        if (start < 0) continue;
        bool match = true;
        for (size_t i = 0; i < gram.size(); i++) {
            if (i == anchor_idx) continue;
            const auto* pos = doc.positions_of(gram[i]);
            if (!std::binary_search(pos->begin(), pos->end(),
                                    start + static_cast<int32_t>(i))) {
                match = false;
                break;
            }
        }
        if (match) count++;
    }
    return count;
}

}  // namespace

double score_doc(const Index& index, const Document& doc, const CompiledModel& model) {
    (void)index;
    double total = 0.0;
    for (const CompiledEntity& e : model.entities) {
        double freq;
        double len_units;
        if (e.is_unigram) {
            freq = static_cast<double>(doc.freq_of(e.term));
            len_units = static_cast<double>(doc.length);
        } else {
            freq = static_cast<double>(gram_freq(doc, e.gram));
            len_units = static_cast<double>(
                std::max<int64_t>(0, doc.length - static_cast<int64_t>(e.gram.size()) + 1));
        }
        double prob = (freq + model.mu * e.coll_prob) / (len_units + model.mu);
        total += e.weight * std::log(prob);
    }
    return total;
}

std::vector<double> score_all_serial(const Index& index, const CompiledModel& model) {
    std::vector<double> scores(static_cast<size_t>(index.num_docs()));
    for (int64_t i = 0; i < index.num_docs(); i++) {
        scores[static_cast<size_t>(i)] = score_doc(index, index.doc(static_cast<int32_t>(i)), model);
    }
    return scores;
}

std::vector<double> score_all(const Index& index, const CompiledModel& model) {
    std::vector<double> scores(static_cast<size_t>(index.num_docs()));
    const int64_t n = index.num_docs();
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        scores[static_cast<size_t>(i)] = score_doc(index, index.doc(static_cast<int32_t>(i)), model);
    }
    return scores;
}

std::vector<double> score_docs_serial(const Index& index, std::span<const int32_t> ids,
                                      const CompiledModel& model) {
    std::vector<double> scores(ids.size());
    for (size_t i = 0; i < ids.size(); i++) {
        scores[i] = score_doc(index, index.doc(ids[i]), model);
    }
    return scores;
}

std::vector<double> score_docs(const Index& index, std::span<const int32_t> ids,
                               const CompiledModel& model) {
    std::vector<double> scores(ids.size());
    const int64_t n = static_cast<int64_t>(ids.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        scores[static_cast<size_t>(i)] = score_doc(index, index.doc(ids[static_cast<size_t>(i)]), model);
    }
    return scores;
}

}  // namespace sesh::kernels
