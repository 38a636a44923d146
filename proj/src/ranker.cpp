#include "sesh/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "sesh/common.hpp"
#include "sesh/kernels.hpp"
#include "sesh/querymodels.hpp"

namespace sesh {

namespace {

// score descending, then docno ascending.
bool better(const std::pair<std::string, double>& a, const std::pair<std::string, double>& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
}

}  // namespace

Ranking make_ranking(std::string session_id, std::vector<std::pair<std::string, double>> scored) {
    std::sort(scored.begin(), scored.end(), better);
    Ranking ranking;
    ranking.session_id = std::move(session_id);
    ranking.entries.reserve(scored.size());
    for (size_t i = 0; i < scored.size(); i++) {
        ranking.entries.push_back(
            {std::move(scored[i].first), scored[i].second, static_cast<int>(i) + 1});
    }
    return ranking;
}

CandidateSet first_pass(const Index& index, const Session& session, const RankerConfig& cfg) {
    if (session.current_query.empty()) {
        throw Error("session " + session.session_id + " has an empty current query");
    }
    if (cfg.first_pass_n < 1) throw Error("first-pass N must be at least 1");

    QueryModel qm = tf_model(session.current_query);
    auto compiled = kernels::compile(index, qm, cfg.smoothing);
    std::vector<double> scores = kernels::score_all(index, compiled);

    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(scores.size());
    for (size_t i = 0; i < scores.size(); i++) {
        scored.emplace_back(index.doc(static_cast<int32_t>(i)).docno, scores[i]);
    }
    std::sort(scored.begin(), scored.end(), better);
    size_t keep = std::min<size_t>(scored.size(), static_cast<size_t>(cfg.first_pass_n));

    CandidateSet out;
    out.session_id = session.session_id;
    out.docnos.reserve(keep);
    for (size_t i = 0; i < keep; i++) out.docnos.push_back(std::move(scored[i].first));
    return out;
}

Ranking rerank(const Index& index, const CandidateSet& candidates, const QueryModel& qm,
               const RankerConfig& cfg) {
    if (candidates.docnos.empty()) throw Error("empty candidate set");
    if (qm.empty()) throw Error("empty query model");

    auto compiled = kernels::compile(index, qm, cfg.smoothing);

    std::vector<int32_t> known_ids;
    std::vector<size_t> known_slots;
    std::vector<std::pair<std::string, double>> scored(candidates.docnos.size());
    for (size_t i = 0; i < candidates.docnos.size(); i++) {
        const std::string& docno = candidates.docnos[i];
        scored[i].first = docno;
        if (const Document* doc = index.find_doc(docno)) {
            known_ids.push_back(doc->internal_id);
            known_slots.push_back(i);
        } else {
            log_warn("candidate " + docno + " not in the index; ranked last");
            scored[i].second = -std::numeric_limits<double>::infinity();
        }
    }
    std::vector<double> scores = kernels::score_docs(index, known_ids, compiled);
    for (size_t k = 0; k < known_slots.size(); k++) {
        scored[known_slots[k]].second = scores[k];
    }
    return make_ranking(candidates.session_id, std::move(scored));
}

void validate_ranking(const Ranking& ranking) {
    if (ranking.session_id.empty()) throw Error("ranking without a session id");
    std::set<std::string> seen;
    for (size_t i = 0; i < ranking.entries.size(); i++) {
        const RankedEntry& e = ranking.entries[i];
        if (e.rank != static_cast<int>(i) + 1) {
            throw Error("ranking for session " + ranking.session_id +
                        " has non-contiguous ranks");
        }
        if (!seen.insert(e.docno).second) {
            throw Error("ranking for session " + ranking.session_id + " repeats docno " + e.docno);
        }
        if (i > 0) {
            const RankedEntry& prev = ranking.entries[i - 1];
            if (e.score > prev.score) {
                throw Error("ranking for session " + ranking.session_id +
                            " has increasing scores");
            }
            if (e.score == prev.score && e.docno < prev.docno) {
                throw Error("ranking for session " + ranking.session_id +
                            " breaks the docno tie rule");
            }
        }
    }
}

std::string write_run(const std::vector<Ranking>& rankings, const std::string& tag) {
    if (tag.empty() || tag.find_first_of(" \t\r\n") != std::string::npos) {
        throw Error("run tag must be non-empty without whitespace");
    }
    std::string out;
    for (const Ranking& ranking : rankings) {
        validate_ranking(ranking);
        for (const RankedEntry& e : ranking.entries) {
            out += ranking.session_id;
            out += " Q0 ";
            out += e.docno;
            out += ' ';
            out += std::to_string(e.rank);
            out += ' ';
            out += format_fixed6(e.score);
            out += ' ';
            out += tag;
            out += '\n';
        }
    }
    return out;
}

RunFile read_run(std::string_view text) {
    RunFile out;
    std::map<std::string, size_t> session_slot;
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        std::istringstream ss(line);
        std::string session_id, q0, docno, tag;
        int rank = 0;
        double score = 0.0;
        if (!(ss >> session_id >> q0 >> docno >> rank >> score >> tag)) {
            throw ParseError("bad run line " + std::to_string(line_no));
        }
        if (out.tag.empty()) out.tag = tag;
        auto [it, inserted] = session_slot.emplace(session_id, out.rankings.size());
        if (inserted) {
            out.rankings.push_back(Ranking{session_id, {}});
        }
        out.rankings[it->second].entries.push_back({docno, score, rank});
    }
    for (Ranking& ranking : out.rankings) {
        std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                         [](const RankedEntry& a, const RankedEntry& b) { return a.rank < b.rank; });
        for (size_t i = 0; i < ranking.entries.size(); i++) {
            ranking.entries[i].rank = static_cast<int>(i) + 1;
        }
    }
    return out;
}

}  // namespace sesh
