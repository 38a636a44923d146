#include "sesh/session_xml.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "sesh/common.hpp"
#include "sesh/xml.hpp"

namespace sesh {

namespace {

std::string trimmed(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes"; }

Query make_query(const std::string& raw, const TokenizerConfig& tokenizer) {
    Query q;
    q.raw = trimmed(raw);
    q.terms = tokenize(q.raw, tokenizer);
    return q;
}

// The query may sit directly in the element text or inside a <query> child.
std::string query_text_of(const xml::Element& elem) {
    if (const auto* child = elem.child("query")) return child->text;
    return elem.text;
}

// 2011 logs use <clueweb09id>, 2013+ <clueweb12id>; synthetic and converted
// logs use <docno>.
std::string docno_of(const xml::Element& result) {
    for (const char* tag : {"docno", "clueweb09id", "clueweb12id"}) {
        if (const auto* child = result.child(tag)) {
            std::string v = trimmed(child->text);
            if (!v.empty()) return v;
        }
    }
    return {};
}

std::vector<ResultEntry> parse_serp(const xml::Element& interaction, const std::string& sid) {
    std::vector<ResultEntry> serp;
    const auto* results = interaction.child("results");
    if (results == nullptr) return serp;
    for (const auto* result : results->children_named("result")) {
        ResultEntry entry;
        entry.docno = docno_of(*result);
        if (entry.docno.empty()) {
            log_warn("session " + sid + ": result without a document id skipped (line " +
                     std::to_string(result->line) + ")");
            continue;
        }
        if (const auto* rank = result->attr("rank")) {
            try {
                entry.rank = std::stoi(*rank);
            } catch (const std::exception&) {
                throw ParseError("bad rank attribute at line " + std::to_string(result->line));
            }
        } else {
            entry.rank = static_cast<int>(serp.size()) + 1;
        }
        if (const auto* title = result->child("title")) entry.title = trimmed(title->text);
        if (const auto* snippet = result->child("snippet")) entry.snippet = trimmed(snippet->text);
        serp.push_back(std::move(entry));
    }
    // The log occasionally skips ranks after dropped entries; renumber so the
    // stored SERP always ranks 1..k in order.
    std::stable_sort(serp.begin(), serp.end(),
                     [](const ResultEntry& a, const ResultEntry& b) { return a.rank < b.rank; });
    for (size_t i = 0; i < serp.size(); i++) serp[i].rank = static_cast<int>(i) + 1;
    return serp;
}

void apply_clicks(const xml::Element& interaction, std::vector<ResultEntry>& serp,
                  const std::string& sid) {
    const auto* clicked = interaction.child("clicked");
    if (clicked == nullptr) return;
    for (const auto* click : clicked->children_named("click")) {
        int rank = -1;
        if (const auto* rank_child = click->child("rank")) {
            try {
                rank = std::stoi(trimmed(rank_child->text));
            } catch (const std::exception&) {
                throw ParseError("bad click rank at line " + std::to_string(click->line));
            }
        } else if (const auto* num = click->attr("num")) {
            try {
                rank = std::stoi(*num);
            } catch (const std::exception&) {
                rank = -1;
            }
        }
        auto it = std::find_if(serp.begin(), serp.end(),
                               [rank](const ResultEntry& e) { return e.rank == rank; });
        if (it == serp.end()) {
            log_warn("session " + sid + ": click on unknown rank " + std::to_string(rank) +
                     " ignored");
            continue;
        }
        it->clicked = true;
        if (const auto* sat = click->attr("sat"); sat != nullptr && truthy(*sat)) {
            it->sat_click = true;
        }
    }
}

}  // namespace

std::vector<Session> parse_sessions(std::string_view xml_text, const TokenizerConfig& tokenizer) {
    auto root = xml::parse(xml_text);
    if (root->name.rfind("sessiontrack", 0) != 0 && root->name != "sessions") {
        throw ParseError("unexpected root element <" + root->name + "> at line " +
                         std::to_string(root->line));
    }

    std::vector<Session> sessions;
    std::unordered_set<std::string> seen_ids;
    size_t skipped = 0;

    for (const auto* session_elem : root->children_named("session")) {
        Session session;
        if (const auto* num = session_elem->attr("num")) {
            session.session_id = *num;
        } else {
            throw ParseError("session without num attribute at line " +
                             std::to_string(session_elem->line));
        }
        if (!seen_ids.insert(session.session_id).second) {
            throw ParseError("duplicate session id " + session.session_id + " at line " +
                             std::to_string(session_elem->line));
        }
        if (const auto* topic = session_elem->child("topic")) {
            if (const auto* num = topic->attr("num")) session.topic_id = *num;
        }

        // Interactions in file order; the schema also numbers them, but the
        // file order is authoritative for truncation analyses.
        for (const auto* interaction_elem : session_elem->children_named("interaction")) {
            Interaction interaction;
            interaction.query = make_query(query_text_of(*interaction_elem), tokenizer);
            if (interaction.query.empty()) {
                log_warn("session " + session.session_id + ": empty historical query (line " +
                         std::to_string(interaction_elem->line) + ")");
            }
            interaction.serp = parse_serp(*interaction_elem, session.session_id);
            apply_clicks(*interaction_elem, interaction.serp, session.session_id);
            session.history.push_back(std::move(interaction));
        }

        const auto* current = session_elem->child("currentquery");
        if (current == nullptr) {
            log_warn("session " + session.session_id + " has no current query, skipped");
            skipped++;
            continue;
        }
        session.current_query = make_query(query_text_of(*current), tokenizer);
        if (session.current_query.empty()) {
            log_warn("session " + session.session_id + " has an empty current query, skipped");
            skipped++;
            continue;
        }
        sessions.push_back(std::move(session));
    }
    if (skipped > 0) {
        log_warn(std::to_string(skipped) + " session(s) skipped while parsing the log");
    }
    return sessions;
}

std::vector<Session> load_sessions(const std::string& path, const TokenizerConfig& tokenizer) {
    return parse_sessions(read_file(path), tokenizer);
}

}  // namespace sesh
