#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sesh/tokenizer.hpp"

namespace sesh {

using TermId = int32_t;
inline constexpr TermId kNoTerm = -1;

// Forward entry: term ids are sorted ascending, freqs and positions are
// aligned with them, positions are strictly increasing token offsets.
struct Document {
    std::string docno;
    int32_t internal_id = 0;
    int64_t length = 0;  // |d|, total tokens

    std::vector<TermId> terms;
    std::vector<int32_t> freqs;
    std::vector<std::vector<int32_t>> positions;

    int32_t freq_of(TermId t) const;
    const std::vector<int32_t>* positions_of(TermId t) const;
};

struct CollectionStats {
    int64_t num_docs = 0;     // N
    int64_t total_terms = 0;  // sum of document lengths
    std::vector<int64_t> doc_freq;
    std::vector<int64_t> coll_freq;
};

// Spam percentile sidecar, lines "score docno". Documents scoring below the
// build threshold are dropped before indexing.
class SpamScores {
public:
    static SpamScores parse(std::string_view text);
    static SpamScores load(const std::string& path);

    void set(const std::string& docno, int score);
    std::optional<int> score(const std::string& docno) const;
    size_t size() const { return scores_.size(); }

private:
    std::unordered_map<std::string, int> scores_;
};

struct CorpusRecord {
    std::string docno;
    std::string text;
};

// Pull reader over a corpus file. Two formats: JSON lines with "docno" and
// "text" fields, and TRECTEXT (<DOC><DOCNO>..</DOCNO><TEXT>..</TEXT></DOC>).
class CorpusReader {
public:
    virtual ~CorpusReader() = default;
    // Returns false at end of input. Throws ParseError on garbage, naming
    // the byte offset of the offending record.
    virtual bool next(CorpusRecord& out) = 0;
};

std::unique_ptr<CorpusReader> make_jsonl_reader(std::string text);
std::unique_ptr<CorpusReader> make_trectext_reader(std::string text);
// Sniffs the format from the first non-blank byte ('{' means JSON lines).
std::unique_ptr<CorpusReader> open_corpus(const std::string& path);

struct IndexBuildOptions {
    TokenizerConfig tokenizer;
    int spam_threshold = 70;
    // Provenance recorded in the on-disk header.
    std::string corpus_path;
    std::string spam_path;
};

class Index {
public:
    // Consumes the reader; internal ids are assigned by sorted docno so the
    // result is independent of record order. Duplicate docnos are rejected.
    static Index build(CorpusReader& corpus, const SpamScores* spam, IndexBuildOptions options);

    int64_t num_docs() const { return stats_.num_docs; }
    int64_t total_terms() const { return stats_.total_terms; }
    int32_t vocab_size() const { return static_cast<int32_t>(term_names_.size()); }

    const Document& doc(int32_t internal_id) const { return docs_[internal_id]; }
    const std::vector<Document>& docs() const { return docs_; }
    const Document* find_doc(std::string_view docno) const;

    TermId term_id(std::string_view term) const;
    const std::string& term_name(TermId t) const { return term_names_[t]; }

    int64_t doc_freq(TermId t) const { return t == kNoTerm ? 0 : stats_.doc_freq[t]; }
    int64_t coll_freq(TermId t) const { return t == kNoTerm ? 0 : stats_.coll_freq[t]; }
    const CollectionStats& stats() const { return stats_; }

    // Sorted internal ids of documents containing the term.
    std::span<const int32_t> postings(TermId t) const;

    // Unigram collection model. The vocabulary is extended with a single
    // out-of-vocabulary event carrying half a count, which keeps the model
    // proper: coll_prob over all terms plus oov_prob sums to exactly 1.
    double coll_prob(TermId t) const;
    double oov_prob() const;

    // Number of exact contiguous occurrences of the n-gram (len >= 2).
    int64_t phrase_freq(const Document& doc, std::span<const Term> ngram) const;
    int64_t phrase_freq(std::string_view docno, std::span<const Term> ngram) const;

    // Collection probability of an n-gram: total occurrences over total
    // n-sized windows, floored at oov_prob() when never seen.
    double coll_phrase_prob(std::span<const Term> ngram) const;

    const TokenizerConfig& tokenizer() const { return tokenizer_; }
    std::vector<Term> tokenize(std::string_view text) const { return sesh::tokenize(text, tokenizer_); }

    int64_t spam_filtered() const { return spam_filtered_; }

    void save(const std::string& path) const;
    static Index load(const std::string& path);

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, int32_t> docno_to_id_;
    std::vector<std::string> term_names_;  // sorted; TermId is the rank
    std::unordered_map<std::string, TermId> term_ids_;
    std::vector<std::vector<int32_t>> postings_;
    CollectionStats stats_;
    TokenizerConfig tokenizer_;
    int64_t spam_filtered_ = 0;
    std::string corpus_path_;
    std::string spam_path_;

    void finalize(std::vector<std::vector<std::string>>& scratch);
    friend struct IndexCodec;
};

}  // namespace sesh
