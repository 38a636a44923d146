#include "sesh/qrels.hpp"

#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sesh/common.hpp"

namespace sesh {

using json = nlohmann::ordered_json;

MappingConfig parse_mapping(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad mapping file: ") + e.what());
    }
    MappingConfig cfg;
    if (j.contains("topic_to_sessions")) {
        for (const auto& [topic, sessions] : j["topic_to_sessions"].items()) {
            cfg.topic_to_sessions[topic] = sessions.get<std::vector<std::string>>();
        }
    }
    if (j.contains("grade_map")) {
        for (const auto& [raw, mapped] : j["grade_map"].items()) {
            int key = 0;
            auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), key);
            if (ec != std::errc{} || ptr != raw.data() + raw.size()) {
                throw ParseError("bad grade_map key: " + raw);
            }
            cfg.grade_map[key] = mapped.get<int>();
        }
    }
    return cfg;
}

MappingConfig load_mapping(const std::string& path) { return parse_mapping(read_file(path)); }

ParsedQrels parse_qrels(std::string_view text, const MappingConfig& mapping) {
    ParsedQrels out;
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.stats.lines_read++;

        std::istringstream ss(line);
        std::string topic, iteration, docno, grade_text;
        if (!(ss >> topic >> iteration >> docno >> grade_text)) {
            log_warn("qrels line " + std::to_string(line_no) + " rejected: expected 4 fields");
            out.stats.dropped_bad_line++;
            continue;
        }
        int grade = 0;
        auto [ptr, ec] =
            std::from_chars(grade_text.data(), grade_text.data() + grade_text.size(), grade);
        if (ec != std::errc{} || ptr != grade_text.data() + grade_text.size()) {
            log_warn("qrels line " + std::to_string(line_no) + " rejected: non-integer grade '" +
                     grade_text + "'");
            out.stats.dropped_bad_line++;
            continue;
        }
        if (!mapping.grade_map.empty()) {
            auto it = mapping.grade_map.find(grade);
            if (it == mapping.grade_map.end()) {
                log_warn("qrels line " + std::to_string(line_no) + " rejected: grade " +
                         std::to_string(grade) + " not covered by the grade map");
                out.stats.dropped_bad_line++;
                continue;
            }
            grade = it->second;
        }

        std::vector<std::string> sessions;
        if (mapping.topic_to_sessions.empty()) {
            sessions.push_back(topic);
        } else {
            auto it = mapping.topic_to_sessions.find(topic);
            if (it == mapping.topic_to_sessions.end()) {
                log_warn("qrels topic " + topic + " has no session mapping, judgments dropped");
                out.stats.dropped_unmapped_topic++;
                continue;
            }
            sessions = it->second;
        }
        for (const auto& session : sessions) {
            auto [slot, inserted] = out.qrels[session].emplace(docno, grade);
            if (!inserted) {
                log_warn("duplicate judgment for (" + session + ", " + docno +
                         "), last line wins");
                slot->second = grade;
                out.stats.duplicates_overwritten++;
            }
            out.stats.copies_made++;
        }
    }
    for (const auto& [_, judgments] : out.qrels) {
        out.stats.judgments_kept += static_cast<long>(judgments.size());
    }
    return out;
}

ParsedQrels load_qrels(const std::string& path, const MappingConfig& mapping) {
    return parse_qrels(read_file(path), mapping);
}

int gain_of(const JudgmentMap& judgments, const std::string& docno) {
    auto it = judgments.find(docno);
    if (it == judgments.end()) return 0;
    return it->second > 0 ? it->second : 0;
}

}  // namespace sesh
