#include "sesh/querymodels.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "sesh/common.hpp"

namespace sesh {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Anchor sidecar
// ---------------------------------------------------------------------------

AnchorTexts AnchorTexts::parse_jsonl(std::string_view text) {
    AnchorTexts out;
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("bad anchors line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!rec.contains("docno") || !rec.contains("anchors") || !rec["anchors"].is_array()) {
            throw ParseError("bad anchors line " + std::to_string(line_no) +
                             ": expected docno and anchors fields");
        }
        std::string docno = rec["docno"].get<std::string>();
        for (const auto& anchor : rec["anchors"]) {
            out.add(docno, anchor.get<std::string>());
        }
    }
    return out;
}

AnchorTexts AnchorTexts::load(const std::string& path) { return parse_jsonl(read_file(path)); }

void AnchorTexts::add(const std::string& docno, std::string anchor) {
    anchors_[docno].push_back(std::move(anchor));
}

const std::vector<std::string>* AnchorTexts::anchors_for(const std::string& docno) const {
    auto it = anchors_.find(docno);
    return it == anchors_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// TF
// ---------------------------------------------------------------------------

QueryModel tf_model(const Query& query) {
    if (query.empty()) throw Error("cannot build a model for an empty query");
    QueryModel model;
    for (const Term& term : query.terms) {
        model.add(unigram(term), 1.0);
    }
    return model;
}

QueryModel aggregate(const std::vector<QueryModel>& models, AggregationScheme scheme) {
    if (models.empty()) throw Error("cannot aggregate zero query models");
    (void)scheme;  // single scheme; the sum below is the uniform one
    QueryModel out;
    for (const QueryModel& model : models) {
        for (const auto& [entity, weight] : model) {
            out.add(entity, weight);
        }
    }
    return out;
}

QueryModel tf_session_model(const Session& session, TfScope scope) {
    switch (scope) {
        case TfScope::first_query:
            return tf_model(session.query_at(1));
        case TfScope::last_query:
            return tf_model(session.current_query);
        case TfScope::all_queries: {
            std::vector<QueryModel> models;
            for (size_t i = 1; i <= session.num_queries(); i++) {
                const Query& q = session.query_at(i);
                if (q.empty()) continue;  // empty historical query contributes nothing
                models.push_back(tf_model(q));
            }
            if (models.empty()) throw Error("session " + session.session_id + " has no terms");
            return aggregate(models, AggregationScheme::uniform);
        }
    }
    throw Error("unknown TF scope");
}

// ---------------------------------------------------------------------------
// QCM
// ---------------------------------------------------------------------------

QcmDecomposition qcm_decompose(const Query& q_prev, const Query& q_cur) {
    std::set<Term> prev(q_prev.terms.begin(), q_prev.terms.end());
    std::set<Term> cur(q_cur.terms.begin(), q_cur.terms.end());
    QcmDecomposition out;
    for (const Term& t : cur) {
        if (prev.count(t) > 0) {
            out.theme.insert(t);
        } else {
            out.added.insert(t);
        }
    }
    for (const Term& t : prev) {
        if (cur.count(t) == 0) out.removed.insert(t);
    }
    return out;
}

double qcm_case_weight(QcmBranch branch, double p, double idf_value, const QcmParams& params) {
    switch (branch) {
        case QcmBranch::theme:
            return 1.0 + params.alpha * (1.0 - p);
        case QcmBranch::added_present:
            return 1.0 - params.beta * p;
        case QcmBranch::added_absent:
            return 1.0 + params.epsilon * idf_value;
        case QcmBranch::removed:
            return -params.delta * p;
    }
    throw Error("unknown QCM branch");
}

namespace {

// Membership of a term in the previous top-ranked document: tested on the
// indexed document when we have it, otherwise on the logged snippet.
bool term_in_top_doc(const Index& index, const ResultEntry& top, const Term& term) {
    if (const Document* doc = index.find_doc(top.docno)) {
        return doc->freq_of(index.term_id(term)) > 0;
    }
    std::vector<Term> tokens = index.tokenize(top.snippet);
    return std::find(tokens.begin(), tokens.end(), term) != tokens.end();
}

}  // namespace

QueryModel qcm_interaction_model(const Index& index, const Session& session, size_t i,
                                 const QcmParams& params) {
    if (i < 1 || i > session.num_queries()) {
        throw Error("interaction index " + std::to_string(i) + " out of range in session " +
                    session.session_id);
    }
    if (i == 1) {
        return tf_model(session.query_at(1));
    }
    const Query& q_prev = session.query_at(i - 1);
    const Query& q_cur = session.query_at(i);
    const Interaction& prev = session.history[i - 2];
    if (prev.serp.empty()) {
        throw Error("session " + session.session_id + ": interaction " + std::to_string(i - 1) +
                    " has no SERP; cannot build the query-change model for query " +
                    std::to_string(i));
    }
    const ResultEntry& top = prev.serp.front();

    QcmDecomposition delta = qcm_decompose(q_prev, q_cur);
    QueryModel model;
    for (const Term& t : delta.theme) {
        double p = sat_prob(index, session, i - 1, t, params.prob_source);
        model.add(unigram(t), qcm_case_weight(QcmBranch::theme, p, 0.0, params));
    }
    for (const Term& t : delta.added) {
        if (term_in_top_doc(index, top, t)) {
            double p = sat_prob(index, session, i - 1, t, params.prob_source);
            model.add(unigram(t), qcm_case_weight(QcmBranch::added_present, p, 0.0, params));
        } else {
            model.add(unigram(t),
                      qcm_case_weight(QcmBranch::added_absent, 0.0, idf(index, t), params));
        }
    }
    for (const Term& t : delta.removed) {
        double p = sat_prob(index, session, i - 1, t, params.prob_source);
        model.add(unigram(t), qcm_case_weight(QcmBranch::removed, p, 0.0, params));
    }
    return model;
}

QueryModel qcm_session_model(const Index& index, const Session& session, const QcmParams& params) {
    std::vector<QueryModel> models;
    for (size_t i = 1; i <= session.num_queries(); i++) {
        if (i == 1 && session.query_at(1).empty()) {
            log_warn("session " + session.session_id + ": empty first query skipped");
            continue;
        }
        QueryModel model = qcm_interaction_model(index, session, i, params);
        if (!model.empty()) models.push_back(std::move(model));
    }
    if (models.empty()) throw Error("session " + session.session_id + " yields no QCM model");
    return aggregate(models, AggregationScheme::uniform);
}

// ---------------------------------------------------------------------------
// Nugget
// ---------------------------------------------------------------------------

namespace {

// One expansion unit: the token stream of a snippet or an anchor string.
struct ExpansionUnit {
    std::vector<Term> tokens;
};

bool contains_ngram(const std::vector<Term>& tokens, std::span<const Term> gram) {
    if (tokens.size() < gram.size()) return false;
    for (size_t start = 0; start + gram.size() <= tokens.size(); start++) {
        bool match = true;
        for (size_t k = 0; k < gram.size(); k++) {
            if (tokens[start + k] != gram[k]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

std::vector<ExpansionUnit> expansion_units(const Index& index, const Interaction& prev,
                                           const NuggetParams& params,
                                           const AnchorTexts* anchors) {
    std::vector<ExpansionUnit> units;
    size_t top_k = std::min<size_t>(prev.serp.size(), static_cast<size_t>(params.k_snippet));

    for (size_t r = 0; r < top_k; r++) {
        const ResultEntry& entry = prev.serp[r];
        if (params.variant == NuggetVariant::RL4 && !entry.clicked) continue;
        units.push_back({index.tokenize(entry.snippet)});
    }
    // RL4 falls back to the full snippet set when the interaction has no
    // clicks at all.
    if (params.variant == NuggetVariant::RL4 && units.empty()) {
        for (size_t r = 0; r < top_k; r++) {
            units.push_back({index.tokenize(prev.serp[r].snippet)});
        }
    }
    if (params.variant == NuggetVariant::RL3 && anchors != nullptr) {
        for (size_t r = 0; r < top_k; r++) {
            const auto* list = anchors->anchors_for(prev.serp[r].docno);
            if (list == nullptr) continue;
            size_t take = std::min<size_t>(list->size(), static_cast<size_t>(params.k_anchor));
            for (size_t a = 0; a < take; a++) {
                units.push_back({index.tokenize((*list)[a])});
            }
        }
    }
    return units;
}

bool accepted(const std::vector<ExpansionUnit>& units, std::span<const Term> gram,
              const NuggetParams& params) {
    if (units.empty()) return false;
    size_t hits = 0;
    for (const auto& unit : units) {
        if (contains_ngram(unit.tokens, gram)) hits++;
    }
    if (params.threshold == NuggetThreshold::coverage_fraction) {
        return static_cast<double>(hits) / static_cast<double>(units.size()) >= params.theta;
    }
    return static_cast<double>(hits) >= params.theta;
}

}  // namespace

QueryModel nugget_model(const Index& index, const Session& session, const NuggetParams& params,
                        const AnchorTexts* anchors) {
    if (params.variant == NuggetVariant::RL3 && anchors == nullptr) {
        log_warn("no anchor texts available; nugget RL3 degrades to RL2 for session " +
                 session.session_id);
    }

    std::vector<QueryModel> models;
    for (size_t i = 1; i <= session.num_queries(); i++) {
        const Query& q = session.query_at(i);
        if (q.empty()) continue;
        QueryModel model = tf_model(q);

        if (i >= 2) {
            const Interaction& prev = session.history[i - 2];
            auto units = expansion_units(index, prev, params, anchors);
            // Distinct contiguous n-grams of the query, shortest first.
            std::set<LexEntity> grams;
            size_t max_len = params.max_order < 2
                                 ? 0
                                 : std::min(q.terms.size(), static_cast<size_t>(params.max_order));
            for (size_t len = 2; len <= max_len; len++) {
                for (size_t start = 0; start + len <= q.terms.size(); start++) {
                    grams.insert(LexEntity(q.terms.begin() + static_cast<long>(start),
                                           q.terms.begin() + static_cast<long>(start + len)));
                }
            }
            for (const LexEntity& gram : grams) {
                if (accepted(units, gram, params)) {
                    model.add(gram, params.beta);
                }
            }
        }
        models.push_back(std::move(model));
    }
    if (models.empty()) throw Error("session " + session.session_id + " yields no nugget model");
    return aggregate(models, AggregationScheme::uniform);
}

}  // namespace sesh
