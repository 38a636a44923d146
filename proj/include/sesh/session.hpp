#pragma once

#include <string>
#include <vector>

#include "sesh/tokenizer.hpp"

namespace sesh {

struct Query {
    std::string raw;
    std::vector<Term> terms;

    bool empty() const { return terms.empty(); }
    bool operator==(const Query&) const = default;
};

struct ResultEntry {
    std::string docno;
    int rank = 0;  // 1-based
    std::string title;
    std::string snippet;
    bool clicked = false;
    bool sat_click = false;

    bool operator==(const ResultEntry&) const = default;
};

struct Interaction {
    Query query;
    std::vector<ResultEntry> serp;

    bool operator==(const Interaction&) const = default;
};

// One search session: n past interactions plus the query to answer.
struct Session {
    std::string session_id;
    std::string topic_id;  // empty when the log carries none
    std::vector<Interaction> history;
    Query current_query;

    // 1-based query access: queries 1..n are history, n+1 is the current one.
    size_t num_queries() const { return history.size() + 1; }
    const Query& query_at(size_t i) const;

    bool operator==(const Session&) const = default;
};

// Debug dump; parsing a dump yields an equal Session.
std::string session_to_json(const Session& session);
Session session_from_json(const std::string& text);

// A truncated view used for progressing-session analysis: the current query
// becomes query j, with either the full preceding history or only the
// immediately preceding interaction.
enum class HistoryMode { full_history, previous_query_only };
Session truncate_session(const Session& session, size_t j, HistoryMode mode);

}  // namespace sesh
