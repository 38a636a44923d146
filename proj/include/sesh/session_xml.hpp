#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sesh/session.hpp"
#include "sesh/tokenizer.hpp"

namespace sesh {

// Parses a TREC Session Track log (2011-2014 dialects). Queries are
// tokenized with the supplied configuration, which should be the one the
// index was built with. Sessions without a current query are skipped with a
// warning; malformed XML raises ParseError with a line number.
std::vector<Session> parse_sessions(std::string_view xml_text, const TokenizerConfig& tokenizer);

std::vector<Session> load_sessions(const std::string& path, const TokenizerConfig& tokenizer);

}  // namespace sesh
