#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sesh {

// A normalized token: non-empty, lowercase, letters and digits only.
using Term = std::string;

// Tokenization is lowercase + split on any non-alphanumeric byte. Stopword
// removal and Porter stemming are off by default and recorded in the index
// fingerprint so that queries are always tokenized the way the index was.
struct TokenizerConfig {
    bool remove_stopwords = false;
    bool stem = false;
    // Used only when remove_stopwords is set; empty means the built-in list.
    std::vector<std::string> stopwords;

    // Canonical description of this configuration, stored in the index
    // header and compared on load.
    std::string fingerprint() const;

    bool operator==(const TokenizerConfig& other) const {
        return fingerprint() == other.fingerprint();
    }
};

std::vector<Term> tokenize(std::string_view text, const TokenizerConfig& cfg = {});

// Classic Porter (1980) suffix-stripping stemmer over lowercase ASCII words.
std::string porter_stem(std::string_view word);

const std::unordered_set<std::string>& default_stopwords();

}  // namespace sesh
