#include "sesh/index.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sesh/common.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sesh {

using json = nlohmann::ordered_json;

int32_t Document::freq_of(TermId t) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), t);
    if (it == terms.end() || *it != t) return 0;
    return freqs[static_cast<size_t>(it - terms.begin())];
}

const std::vector<int32_t>* Document::positions_of(TermId t) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), t);
    if (it == terms.end() || *it != t) return nullptr;
    return &positions[static_cast<size_t>(it - terms.begin())];
}

// ---------------------------------------------------------------------------
// Spam sidecar
// ---------------------------------------------------------------------------

SpamScores SpamScores::parse(std::string_view text) {
    SpamScores out;
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        std::istringstream ss{std::string(line)};
        int score = 0;
        std::string docno;
        if (!(ss >> score >> docno) || score < 0 || score > 99) {
            throw ParseError("bad spam score line " + std::to_string(line_no));
        }
        out.set(docno, score);
    }
    return out;
}

SpamScores SpamScores::load(const std::string& path) { return parse(read_file(path)); }

void SpamScores::set(const std::string& docno, int score) { scores_[docno] = score; }

std::optional<int> SpamScores::score(const std::string& docno) const {
    auto it = scores_.find(docno);
    if (it == scores_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Corpus readers
// ---------------------------------------------------------------------------

namespace {

class JsonlReader : public CorpusReader {
public:
    explicit JsonlReader(std::string text) : text_(std::move(text)) {}

    bool next(CorpusRecord& out) override {
        while (pos_ < text_.size()) {
            size_t start = pos_;
            size_t end = text_.find('\n', pos_);
            if (end == std::string::npos) end = text_.size();
            std::string_view line(text_.data() + start, end - start);
            pos_ = end + 1;
            if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
            json rec;
            try {
                rec = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError("unreadable corpus record at byte offset " +
                                 std::to_string(start) + ": " + e.what());
            }
            if (!rec.is_object() || !rec.contains("docno") || !rec.contains("text") ||
                !rec["docno"].is_string() || !rec["text"].is_string()) {
                throw ParseError("unreadable corpus record at byte offset " +
                                 std::to_string(start) +
                                 ": expected object with string fields docno and text");
            }
            out.docno = rec["docno"].get<std::string>();
            out.text = rec["text"].get<std::string>();
            return true;
        }
        return false;
    }

private:
    std::string text_;
    size_t pos_ = 0;
};

class TrecTextReader : public CorpusReader {
public:
    explicit TrecTextReader(std::string text) : text_(std::move(text)) {}

    bool next(CorpusRecord& out) override {
        size_t doc_start = find_tag("<DOC>", pos_);
        if (doc_start == std::string::npos) {
            // Anything non-blank left over is garbage.
            if (text_.find_first_not_of(" \t\r\n", pos_) != std::string::npos) {
                throw ParseError("unreadable corpus record at byte offset " +
                                 std::to_string(pos_) + ": expected <DOC>");
            }
            return false;
        }
        size_t doc_end = find_tag("</DOC>", doc_start);
        if (doc_end == std::string::npos) {
            throw ParseError("unreadable corpus record at byte offset " +
                             std::to_string(doc_start) + ": unterminated <DOC>");
        }
        std::string_view body(text_.data() + doc_start, doc_end - doc_start);
        out.docno = extract(body, "DOCNO", doc_start);
        out.text = extract(body, "TEXT", doc_start);
        pos_ = doc_end + 6;
        return true;
    }

private:
    size_t find_tag(std::string_view tag, size_t from) const { return text_.find(tag, from); }

    static std::string trim(std::string_view s) {
        size_t b = s.find_first_not_of(" \t\r\n");
        if (b == std::string_view::npos) return {};
        size_t e = s.find_last_not_of(" \t\r\n");
        return std::string(s.substr(b, e - b + 1));
    }

    std::string extract(std::string_view body, const std::string& tag, size_t offset) const {
        std::string open = "<" + tag + ">";
        std::string close = "</" + tag + ">";
        size_t b = body.find(open);
        size_t e = body.find(close);
        if (b == std::string_view::npos || e == std::string_view::npos || e < b) {
            throw ParseError("unreadable corpus record at byte offset " + std::to_string(offset) +
                             ": missing <" + tag + ">");
        }
        return trim(body.substr(b + open.size(), e - b - open.size()));
    }

    std::string text_;
    size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<CorpusReader> make_jsonl_reader(std::string text) {
    return std::make_unique<JsonlReader>(std::move(text));
}

std::unique_ptr<CorpusReader> make_trectext_reader(std::string text) {
    return std::make_unique<TrecTextReader>(std::move(text));
}

std::unique_ptr<CorpusReader> open_corpus(const std::string& path) {
    std::string text = read_file(path);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '<') {
        return make_trectext_reader(std::move(text));
    }
    return make_jsonl_reader(std::move(text));
}

// ---------------------------------------------------------------------------
// Build
// ---------------------------------------------------------------------------

Index Index::build(CorpusReader& corpus, const SpamScores* spam, IndexBuildOptions options) {
    Index index;
    index.tokenizer_ = options.tokenizer;
    index.corpus_path_ = options.corpus_path;
    index.spam_path_ = options.spam_path;
    if (options.spam_threshold < 0 || options.spam_threshold > 100) {
        throw Error("spam threshold must be in [0,100]");
    }

    std::vector<CorpusRecord> records;
    {
        CorpusRecord rec;
        std::unordered_map<std::string, int> seen;
        while (corpus.next(rec)) {
            if (!seen.emplace(rec.docno, 1).second) {
                throw ParseError("duplicate docno rejected: " + rec.docno);
            }
            if (spam != nullptr) {
                auto score = spam->score(rec.docno);
                if (score && *score < options.spam_threshold) {
                    index.spam_filtered_++;
                    continue;
                }
            }
            records.push_back(std::move(rec));
            rec = CorpusRecord{};
        }
    }

    // Internal ids follow sorted docno, making the index independent of the
    // order records arrived in.
    std::sort(records.begin(), records.end(),
              [](const CorpusRecord& a, const CorpusRecord& b) { return a.docno < b.docno; });

    index.docs_.resize(records.size());
    const auto n = static_cast<int64_t>(records.size());
    // Per-doc term strings between the tokenize pass and id assignment; each
    // iteration touches only its own slot, so the loop needs no locking.
    std::vector<std::vector<std::string>> scratch(records.size());

#pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < n; i++) {
        std::vector<Term> tokens = sesh::tokenize(records[i].text, index.tokenizer_);
        Document& doc = index.docs_[static_cast<size_t>(i)];
        doc.docno = records[i].docno;
        doc.internal_id = static_cast<int32_t>(i);
        doc.length = static_cast<int64_t>(tokens.size());

        std::map<std::string_view, std::vector<int32_t>> by_term;
        for (size_t p = 0; p < tokens.size(); p++) {
            by_term[tokens[p]].push_back(static_cast<int32_t>(p));
        }
        doc.terms.assign(by_term.size(), kNoTerm);  // ids assigned in finalize()
        doc.freqs.reserve(by_term.size());
        doc.positions.reserve(by_term.size());
        auto& names = scratch[static_cast<size_t>(i)];
        names.reserve(by_term.size());
        for (auto& [term, pos_list] : by_term) {
            doc.freqs.push_back(static_cast<int32_t>(pos_list.size()));
            doc.positions.push_back(std::move(pos_list));
            names.emplace_back(term);
        }
    }

    index.finalize(scratch);
    return index;
}

void Index::finalize(std::vector<std::vector<std::string>>& scratch) {
    // Vocabulary: lexicographically sorted union of per-doc terms.
    for (size_t i = 0; i < docs_.size(); i++) {
        for (const auto& name : scratch[i]) {
            term_ids_.emplace(name, 0);
        }
    }
    term_names_.reserve(term_ids_.size());
    for (const auto& [name, _] : term_ids_) term_names_.push_back(name);
    std::sort(term_names_.begin(), term_names_.end());
    for (size_t t = 0; t < term_names_.size(); t++) {
        term_ids_[term_names_[t]] = static_cast<TermId>(t);
    }

    stats_.num_docs = static_cast<int64_t>(docs_.size());
    stats_.total_terms = 0;
    stats_.doc_freq.assign(term_names_.size(), 0);
    stats_.coll_freq.assign(term_names_.size(), 0);
    postings_.assign(term_names_.size(), {});

    for (size_t i = 0; i < docs_.size(); i++) {
        Document& doc = docs_[i];
        const auto& names = scratch[i];
        for (size_t k = 0; k < names.size(); k++) {
            doc.terms[k] = term_ids_[names[k]];
        }
        // Per-doc term names were already sorted lexicographically, which is
        // exactly the id order.
        stats_.total_terms += doc.length;
        for (size_t k = 0; k < doc.terms.size(); k++) {
            TermId t = doc.terms[k];
            stats_.doc_freq[t] += 1;
            stats_.coll_freq[t] += doc.freqs[k];
            postings_[t].push_back(doc.internal_id);
        }
        docno_to_id_[doc.docno] = doc.internal_id;
    }
}

// ---------------------------------------------------------------------------
// Lookups
// ---------------------------------------------------------------------------

const Document* Index::find_doc(std::string_view docno) const {
    auto it = docno_to_id_.find(std::string(docno));
    if (it == docno_to_id_.end()) return nullptr;
    return &docs_[it->second];
}

TermId Index::term_id(std::string_view term) const {
    auto it = term_ids_.find(std::string(term));
    if (it == term_ids_.end()) return kNoTerm;
    return it->second;
}

std::span<const int32_t> Index::postings(TermId t) const {
    if (t == kNoTerm) return {};
    return postings_[t];
}

double Index::coll_prob(TermId t) const {
    if (t == kNoTerm) return oov_prob();
    return static_cast<double>(stats_.coll_freq[t]) /
           (static_cast<double>(stats_.total_terms) + 0.5);
}

double Index::oov_prob() const { return 0.5 / (static_cast<double>(stats_.total_terms) + 0.5); }

int64_t Index::phrase_freq(const Document& doc, std::span<const Term> ngram) const {
    if (ngram.size() < 2) throw Error("phrase_freq requires an n-gram of length >= 2");
    std::vector<const std::vector<int32_t>*> lists;
    lists.reserve(ngram.size());
    for (const auto& term : ngram) {
        TermId t = term_id(term);
        if (t == kNoTerm) return 0;
        const auto* pos = doc.positions_of(t);
        if (pos == nullptr) return 0;
        lists.push_back(pos);
    }
    // Walk the rarest list and probe the others at the expected offsets.
    size_t anchor = 0;
    for (size_t i = 1; i < lists.size(); i++) {
        if (lists[i]->size() < lists[anchor]->size()) anchor = i;
    }
    int64_t count = 0;
    for (int32_t p : *lists[anchor]) {
        int32_t start = p - static_cast<int32_t>(anchor);
        if (start < 0) continue;
        bool match = true;
        for (size_t i = 0; i < lists.size(); i++) {
            if (i == anchor) continue;
            int32_t want = start + static_cast<int32_t>(i);
            if (!std::binary_search(lists[i]->begin(), lists[i]->end(), want)) {
                match = false;
                break;
            }
        }
        if (match) count++;
    }
    return count;
}

int64_t Index::phrase_freq(std::string_view docno, std::span<const Term> ngram) const {
    const Document* doc = find_doc(docno);
    if (doc == nullptr) throw Error("unknown document: " + std::string(docno));
    return phrase_freq(*doc, ngram);
}

double Index::coll_phrase_prob(std::span<const Term> ngram) const {
    if (ngram.size() < 2) throw Error("coll_phrase_prob requires an n-gram of length >= 2");
    const auto n = static_cast<int64_t>(ngram.size());

    int64_t windows = 0;
    for (const Document& doc : docs_) {
        windows += std::max<int64_t>(0, doc.length - n + 1);
    }

    // Only documents containing every gram term can contribute occurrences.
    std::vector<TermId> ids;
    ids.reserve(ngram.size());
    for (const auto& term : ngram) {
        TermId t = term_id(term);
        if (t == kNoTerm) return oov_prob();
        ids.push_back(t);
    }
    TermId rarest = ids[0];
    for (TermId t : ids) {
        if (postings_[t].size() < postings_[rarest].size()) rarest = t;
    }
    int64_t occurrences = 0;
    for (int32_t doc_id : postings_[rarest]) {
        occurrences += phrase_freq(docs_[doc_id], ngram);
    }
    if (occurrences == 0 || windows == 0) return oov_prob();
    return static_cast<double>(occurrences) / static_cast<double>(windows);
}

// ---------------------------------------------------------------------------
// Persistence: versioned single file, little-endian payload after a JSON
// header. Reload is bit-exact for every statistic scoring reads.
// ---------------------------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'S', 'E', 'S', 'H', 'I', 'D', 'X', '\x01'};
constexpr uint32_t kFormatVersion = 1;
}  // namespace

struct IndexCodec {
    static std::string encode(const Index& index) {
        std::string out;
        out.append(kMagic, sizeof(kMagic));

        json header;
        header["format_version"] = kFormatVersion;
        header["tokenizer"] = {{"fingerprint", index.tokenizer_.fingerprint()},
                               {"remove_stopwords", index.tokenizer_.remove_stopwords},
                               {"stem", index.tokenizer_.stem},
                               {"stopwords", index.tokenizer_.stopwords}};
        header["num_docs"] = index.stats_.num_docs;
        header["vocab_size"] = index.term_names_.size();
        header["total_terms"] = index.stats_.total_terms;
        header["spam_filtered"] = index.spam_filtered_;
        header["corpus_path"] = index.corpus_path_;
        header["spam_path"] = index.spam_path_;
        std::string header_text = header.dump();
        put_u32(out, static_cast<uint32_t>(header_text.size()));
        out += header_text;

        for (const auto& name : index.term_names_) {
            put_u32(out, static_cast<uint32_t>(name.size()));
            out += name;
        }
        for (int64_t v : index.stats_.doc_freq) put_i64(out, v);
        for (int64_t v : index.stats_.coll_freq) put_i64(out, v);

        for (const Document& doc : index.docs_) {
            put_u32(out, static_cast<uint32_t>(doc.docno.size()));
            out += doc.docno;
            put_i64(out, doc.length);
            put_u32(out, static_cast<uint32_t>(doc.terms.size()));
            for (TermId t : doc.terms) put_u32(out, static_cast<uint32_t>(t));
            for (int32_t f : doc.freqs) put_u32(out, static_cast<uint32_t>(f));
            for (const auto& pos_list : doc.positions) {
                for (int32_t p : pos_list) put_u32(out, static_cast<uint32_t>(p));
            }
        }
        return out;
    }

    static Index decode(const std::string& bytes) {
        if (bytes.size() < sizeof(kMagic) + 4 ||
            std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
            throw ParseError("not a sesh index file (bad magic)");
        }
        ByteReader reader(bytes.data() + sizeof(kMagic), bytes.size() - sizeof(kMagic));
        uint32_t header_len = reader.u32();
        json header;
        try {
            header = json::parse(reader.bytes(header_len));
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad index header: ") + e.what());
        }
        if (header.value("format_version", 0u) != kFormatVersion) {
            throw ParseError("unsupported index format version");
        }

        Index index;
        index.tokenizer_.remove_stopwords = header["tokenizer"]["remove_stopwords"].get<bool>();
        index.tokenizer_.stem = header["tokenizer"]["stem"].get<bool>();
        index.tokenizer_.stopwords =
            header["tokenizer"]["stopwords"].get<std::vector<std::string>>();
        if (index.tokenizer_.fingerprint() !=
            header["tokenizer"]["fingerprint"].get<std::string>()) {
            throw ParseError("index tokenizer fingerprint mismatch");
        }
        index.spam_filtered_ = header.value("spam_filtered", int64_t{0});
        index.corpus_path_ = header.value("corpus_path", std::string{});
        index.spam_path_ = header.value("spam_path", std::string{});

        auto num_docs = header["num_docs"].get<int64_t>();
        auto vocab = header["vocab_size"].get<size_t>();
        index.stats_.num_docs = num_docs;
        index.stats_.total_terms = header["total_terms"].get<int64_t>();

        index.term_names_.reserve(vocab);
        for (size_t t = 0; t < vocab; t++) {
            uint32_t len = reader.u32();
            index.term_names_.emplace_back(reader.bytes(len));
            index.term_ids_[index.term_names_.back()] = static_cast<TermId>(t);
        }
        index.stats_.doc_freq.resize(vocab);
        for (auto& v : index.stats_.doc_freq) v = reader.i64();
        index.stats_.coll_freq.resize(vocab);
        for (auto& v : index.stats_.coll_freq) v = reader.i64();

        index.docs_.resize(static_cast<size_t>(num_docs));
        index.postings_.assign(vocab, {});
        for (int64_t i = 0; i < num_docs; i++) {
            Document& doc = index.docs_[static_cast<size_t>(i)];
            uint32_t docno_len = reader.u32();
            doc.docno = std::string(reader.bytes(docno_len));
            doc.internal_id = static_cast<int32_t>(i);
            doc.length = reader.i64();
            uint32_t nterms = reader.u32();
            doc.terms.resize(nterms);
            for (auto& t : doc.terms) t = static_cast<TermId>(reader.u32());
            doc.freqs.resize(nterms);
            for (auto& f : doc.freqs) f = static_cast<int32_t>(reader.u32());
            doc.positions.resize(nterms);
            for (uint32_t k = 0; k < nterms; k++) {
                doc.positions[k].resize(static_cast<size_t>(doc.freqs[k]));
                for (auto& p : doc.positions[k]) p = static_cast<int32_t>(reader.u32());
            }
            for (uint32_t k = 0; k < nterms; k++) {
                index.postings_[doc.terms[k]].push_back(doc.internal_id);
            }
            index.docno_to_id_[doc.docno] = doc.internal_id;
        }
        if (reader.remaining() != 0) {
            throw ParseError("trailing bytes in index file");
        }
        return index;
    }
};

void Index::save(const std::string& path) const { write_file(path, IndexCodec::encode(*this)); }

Index Index::load(const std::string& path) { return IndexCodec::decode(read_file(path)); }

}  // namespace sesh
