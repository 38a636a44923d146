#include "sesh/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace sesh {

namespace {

bool alnum(unsigned char c) { return std::isalnum(c) != 0; }

// SMART-style short stopword list; callers can supply their own.
const char* kDefaultStopwords[] = {
    "a",    "an",   "and", "are", "as",   "at",   "be",   "but", "by",   "for",
    "if",   "in",   "into", "is", "it",   "its",  "no",   "not", "of",   "on",
    "or",   "such", "that", "the", "their", "then", "there", "these", "they", "this",
    "to",   "was",  "were", "will", "with"};

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> set(std::begin(kDefaultStopwords),
                                                     std::end(kDefaultStopwords));
    return set;
}

std::string TokenizerConfig::fingerprint() const {
    std::ostringstream ss;
    ss << "lower+alnum";
    ss << ";stop=";
    if (!remove_stopwords) {
        ss << "none";
    } else if (stopwords.empty()) {
        ss << "default";
    } else {
        // Content hash of the custom list so two indexes built with
        // different lists never compare equal.
        std::vector<std::string> sorted = stopwords;
        std::sort(sorted.begin(), sorted.end());
        size_t h = 1469598103934665603ull;
        for (const auto& w : sorted) {
            for (char c : w) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
            h = (h ^ 0x1f) * 1099511628211ull;
        }
        ss << "custom:" << std::hex << h;
    }
    ss << ";stem=" << (stem ? "porter" : "none");
    return ss.str();
}

std::vector<Term> tokenize(std::string_view text, const TokenizerConfig& cfg) {
    std::vector<Term> out;
    const std::unordered_set<std::string>* stop = nullptr;
    std::unordered_set<std::string> custom;
    if (cfg.remove_stopwords) {
        if (cfg.stopwords.empty()) {
            stop = &default_stopwords();
        } else {
            custom.insert(cfg.stopwords.begin(), cfg.stopwords.end());
            stop = &custom;
        }
    }

    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        if (stop == nullptr || stop->count(token) == 0) {
            if (cfg.stem) {
                out.push_back(porter_stem(token));
            } else {
                out.push_back(token);
            }
        }
        token.clear();
    };

    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (alnum(c)) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

// ---------------------------------------------------------------------------
// Porter stemmer. Straight transcription of the 1980 algorithm; operates on
// lowercase words, leaves anything of length <= 2 untouched.
// ---------------------------------------------------------------------------

namespace {

class PorterState {
public:
    explicit PorterState(std::string_view word) : b_(word) {}

    std::string result() && { return std::move(b_); }

    void run() {
        if (b_.size() <= 2) return;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
    }

private:
    std::string b_;

    bool is_consonant(size_t i) const {
        char c = b_[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
        if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
        return true;
    }

    // Number of VC sequences in b_[0..end).
    int measure(size_t end) const {
        int m = 0;
        size_t i = 0;
        while (i < end && is_consonant(i)) i++;
        while (i < end) {
            while (i < end && !is_consonant(i)) i++;
            if (i >= end) break;
            m++;
            while (i < end && is_consonant(i)) i++;
        }
        return m;
    }

    bool ends_with(std::string_view suffix) const {
        return b_.size() >= suffix.size() &&
               std::equal(suffix.rbegin(), suffix.rend(), b_.rbegin());
    }

    size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

    bool vowel_in_stem(size_t end) const {
        for (size_t i = 0; i < end; i++)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool double_consonant_at_end() const {
        size_t n = b_.size();
        if (n < 2) return false;
        return b_[n - 1] == b_[n - 2] && is_consonant(n - 1);
    }

    // *o condition: stem ends cvc where the final c is not w, x or y.
    bool cvc(size_t end) const {
        if (end < 3) return false;
        if (!is_consonant(end - 1) || is_consonant(end - 2) || !is_consonant(end - 3)) return false;
        char c = b_[end - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    void replace_suffix(std::string_view suffix, std::string_view repl) {
        b_.resize(b_.size() - suffix.size());
        b_.append(repl);
    }

    bool try_rule(std::string_view suffix, std::string_view repl, int min_m) {
        if (!ends_with(suffix)) return false;
        if (measure(stem_len(suffix)) > min_m - 1) replace_suffix(suffix, repl);
        return true;
    }

    void step1a() {
        if (ends_with("sses")) {
            replace_suffix("sses", "ss");
        } else if (ends_with("ies")) {
            replace_suffix("ies", "i");
        } else if (ends_with("ss")) {
            // unchanged
        } else if (ends_with("s")) {
            replace_suffix("s", "");
        }
    }

    void step1b() {
        bool cleanup = false;
        if (ends_with("eed")) {
            if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
        } else if (ends_with("ed") && vowel_in_stem(stem_len("ed"))) {
            replace_suffix("ed", "");
            cleanup = true;
        } else if (ends_with("ing") && vowel_in_stem(stem_len("ing"))) {
            replace_suffix("ing", "");
            cleanup = true;
        }
        if (!cleanup) return;
        if (ends_with("at") || ends_with("bl") || ends_with("iz")) {
            b_.push_back('e');
        } else if (double_consonant_at_end()) {
            char c = b_.back();
            if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
        } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
            b_.push_back('e');
        }
    }

    void step1c() {
        if (ends_with("y") && vowel_in_stem(b_.size() - 1)) b_.back() = 'i';
    }

    void step2() {
        static const std::pair<const char*, const char*> rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"}, {"biliti", "ble"}};
        for (const auto& [suffix, repl] : rules)
            if (try_rule(suffix, repl, 1)) return;
    }

    void step3() {
        static const std::pair<const char*, const char*> rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
        for (const auto& [suffix, repl] : rules)
            if (try_rule(suffix, repl, 1)) return;
    }

    void step4() {
        static const char* suffixes[] = {"al",  "ance", "ence", "er",  "ic",  "able", "ible",
                                         "ant", "ement", "ment", "ent", "ion", "ou",   "ism",
                                         "ate", "iti",  "ous",  "ive", "ize"};
        for (const char* suffix : suffixes) {
            if (!ends_with(suffix)) continue;
            size_t stem = stem_len(suffix);
            if (std::string_view(suffix) == "ion" && stem > 0 && b_[stem - 1] != 's' &&
                b_[stem - 1] != 't')
                continue;
            if (measure(stem) > 1) replace_suffix(suffix, "");
            return;
        }
    }

    void step5a() {
        if (!ends_with("e")) return;
        size_t stem = b_.size() - 1;
        int m = measure(stem);
        if (m > 1 || (m == 1 && !cvc(stem))) b_.pop_back();
    }

    void step5b() {
        if (b_.size() >= 2 && b_.back() == 'l' && double_consonant_at_end() &&
            measure(b_.size()) > 1)
            b_.pop_back();
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    PorterState state(word);
    state.run();
    return std::move(state).result();
}

}  // namespace sesh
