#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sesh {

// session_id -> docno -> relevance grade. Negative grades (spam) are kept;
// metrics treat them as gain 0.
using JudgmentMap = std::map<std::string, int>;
using Qrels = std::map<std::string, JudgmentMap>;

// Per-edition raw-grade remapping (the 2012 track judged on a different
// scale). Supplied as data; when a mapping is present it must cover every
// grade observed in the file.
using GradeMapping = std::map<int, int>;

// topic id -> session ids judged under that topic.
using TopicMapping = std::map<std::string, std::vector<std::string>>;

struct MappingConfig {
    TopicMapping topic_to_sessions;  // empty: topic ids are session ids
    GradeMapping grade_map;          // empty: identity
};

MappingConfig parse_mapping(const std::string& json_text);
MappingConfig load_mapping(const std::string& path);

struct QrelsStats {
    long lines_read = 0;
    long judgments_kept = 0;           // entries present in the result
    long copies_made = 0;              // judgments times mapped sessions
    long dropped_unmapped_topic = 0;   // per input line
    long dropped_bad_line = 0;         // unparseable or unmapped grade
    long duplicates_overwritten = 0;   // last line wins
};

struct ParsedQrels {
    Qrels qrels;
    QrelsStats stats;
};

// Parses "topic 0 docno grade" lines, copies each topic's judgments to every
// mapped session and applies the grade mapping.
ParsedQrels parse_qrels(std::string_view text, const MappingConfig& mapping);
ParsedQrels load_qrels(const std::string& path, const MappingConfig& mapping);

// Judged gain used by metrics and oracles: negative grades count as 0.
int gain_of(const JudgmentMap& judgments, const std::string& docno);

}  // namespace sesh
