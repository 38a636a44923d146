#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sesh/index.hpp"
#include "sesh/session.hpp"

namespace testsupport {

class VectorReader : public sesh::CorpusReader {
public:
    explicit VectorReader(std::vector<std::pair<std::string, std::string>> records)
        : records_(std::move(records)) {}

    bool next(sesh::CorpusRecord& out) override {
        if (pos_ >= records_.size()) return false;
        out.docno = records_[pos_].first;
        out.text = records_[pos_].second;
        pos_++;
        return true;
    }

private:
    std::vector<std::pair<std::string, std::string>> records_;
    size_t pos_ = 0;
};

inline sesh::Index make_index(std::vector<std::pair<std::string, std::string>> corpus,
                              sesh::TokenizerConfig tokenizer = {},
                              const sesh::SpamScores* spam = nullptr, int threshold = 70) {
    VectorReader reader(std::move(corpus));
    sesh::IndexBuildOptions options;
    options.tokenizer = std::move(tokenizer);
    options.spam_threshold = threshold;
    return sesh::Index::build(reader, spam, options);
}

inline sesh::Query make_query(const std::string& raw) {
    sesh::Query q;
    q.raw = raw;
    q.terms = sesh::tokenize(raw);
    return q;
}

inline sesh::ResultEntry make_result(const std::string& docno, int rank,
                                     const std::string& snippet = "", bool clicked = false,
                                     bool sat = false) {
    sesh::ResultEntry entry;
    entry.docno = docno;
    entry.rank = rank;
    entry.snippet = snippet;
    entry.clicked = clicked;
    entry.sat_click = sat;
    return entry;
}

// One interaction per (query, serp) pair plus the final current query.
inline sesh::Session make_session(const std::string& id,
                                  std::vector<sesh::Interaction> history,
                                  const std::string& current) {
    sesh::Session s;
    s.session_id = id;
    s.history = std::move(history);
    s.current_query = make_query(current);
    return s;
}

}  // namespace testsupport
