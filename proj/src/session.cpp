#include "sesh/session.hpp"

#include <nlohmann/json.hpp>

#include "sesh/common.hpp"

namespace sesh {

using json = nlohmann::ordered_json;

const Query& Session::query_at(size_t i) const {
    if (i < 1 || i > num_queries()) {
        throw Error("query index " + std::to_string(i) + " out of range in session " + session_id);
    }
    if (i <= history.size()) return history[i - 1].query;
    return current_query;
}

namespace {

json query_to_json(const Query& q) {
    return json{{"raw", q.raw}, {"terms", q.terms}};
}

Query query_from_json(const json& j) {
    Query q;
    q.raw = j.at("raw").get<std::string>();
    q.terms = j.at("terms").get<std::vector<std::string>>();
    return q;
}

}  // namespace

std::string session_to_json(const Session& session) {
    json j;
    j["session_id"] = session.session_id;
    j["topic_id"] = session.topic_id;
    j["history"] = json::array();
    for (const auto& interaction : session.history) {
        json ji;
        ji["query"] = query_to_json(interaction.query);
        ji["serp"] = json::array();
        for (const auto& entry : interaction.serp) {
            ji["serp"].push_back(json{{"docno", entry.docno},
                                      {"rank", entry.rank},
                                      {"title", entry.title},
                                      {"snippet", entry.snippet},
                                      {"clicked", entry.clicked},
                                      {"sat_click", entry.sat_click}});
        }
        j["history"].push_back(std::move(ji));
    }
    j["current_query"] = query_to_json(session.current_query);
    return j.dump(2);
}

Session session_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad session dump: ") + e.what());
    }
    Session s;
    s.session_id = j.at("session_id").get<std::string>();
    s.topic_id = j.at("topic_id").get<std::string>();
    for (const auto& ji : j.at("history")) {
        Interaction interaction;
        interaction.query = query_from_json(ji.at("query"));
        for (const auto& je : ji.at("serp")) {
            ResultEntry entry;
            entry.docno = je.at("docno").get<std::string>();
            entry.rank = je.at("rank").get<int>();
            entry.title = je.at("title").get<std::string>();
            entry.snippet = je.at("snippet").get<std::string>();
            entry.clicked = je.at("clicked").get<bool>();
            entry.sat_click = je.at("sat_click").get<bool>();
            interaction.serp.push_back(std::move(entry));
        }
        s.history.push_back(std::move(interaction));
    }
    s.current_query = query_from_json(j.at("current_query"));
    return s;
}

Session truncate_session(const Session& session, size_t j, HistoryMode mode) {
    if (j < 1 || j > session.num_queries()) {
        throw Error("truncation step " + std::to_string(j) + " out of range in session " +
                    session.session_id);
    }
    Session out;
    out.session_id = session.session_id;
    out.topic_id = session.topic_id;
    out.current_query = session.query_at(j);
    if (mode == HistoryMode::full_history) {
        out.history.assign(session.history.begin(),
                           session.history.begin() + static_cast<long>(j - 1));
    } else if (j >= 2) {
        out.history.push_back(session.history[j - 2]);
    }
    return out;
}

}  // namespace sesh
