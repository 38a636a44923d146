#pragma once

// Independent reference scorer. Recomputes every statistic from the raw
// corpus text on each call and shares no code with the engine; the unit and
// acceptance suites compare the engine against it.

#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sesh/lmscore.hpp"

namespace testsupport {

class NaiveScorer {
public:
    NaiveScorer(std::vector<std::pair<std::string, std::string>> corpus, double mu)
        : corpus_(std::move(corpus)), mu_(mu) {}

    double score(const std::string& docno, const sesh::QueryModel& qm) const {
        double total = 0.0;
        for (const auto& [entity, weight] : qm) {
            total += weight * std::log(prob(docno, entity));
        }
        return total;
    }

    double prob(const std::string& docno, const std::vector<std::string>& entity) const {
        std::vector<std::string> doc_tokens = split(text_of(docno));
        double len_units;
        double freq;
        if (entity.size() == 1) {
            freq = 0;
            for (const auto& token : doc_tokens) {
                if (token == entity[0]) freq++;
            }
            len_units = static_cast<double>(doc_tokens.size());
        } else {
            freq = static_cast<double>(count_occurrences(doc_tokens, entity));
            double windows =
                static_cast<double>(doc_tokens.size()) - static_cast<double>(entity.size()) + 1;
            len_units = windows > 0 ? windows : 0;
        }
        return (freq + mu_ * collection_prob(entity)) / (len_units + mu_);
    }

    double collection_prob(const std::vector<std::string>& entity) const {
        long total_tokens = 0;
        long occurrences = 0;
        long windows = 0;
        for (const auto& [_, text] : corpus_) {
            std::vector<std::string> tokens = split(text);
            total_tokens += static_cast<long>(tokens.size());
            if (entity.size() == 1) {
                for (const auto& token : tokens) {
                    if (token == entity[0]) occurrences++;
                }
            } else {
                occurrences += count_occurrences(tokens, entity);
                long w = static_cast<long>(tokens.size()) - static_cast<long>(entity.size()) + 1;
                if (w > 0) windows += w;
            }
        }
        double floor_prob = 0.5 / (static_cast<double>(total_tokens) + 0.5);
        if (occurrences == 0) return floor_prob;
        if (entity.size() == 1) {
            return static_cast<double>(occurrences) / (static_cast<double>(total_tokens) + 0.5);
        }
        if (windows == 0) return floor_prob;
        return static_cast<double>(occurrences) / static_cast<double>(windows);
    }

private:
    const std::string& text_of(const std::string& docno) const {
        for (const auto& [name, text] : corpus_) {
            if (name == docno) return text;
        }
        throw std::runtime_error("naive scorer: unknown docno " + docno);
    }

    static std::vector<std::string> split(const std::string& text) {
        std::vector<std::string> out;
        std::string token;
        for (char ch : text) {
            if (std::isalnum(static_cast<unsigned char>(ch))) {
                token.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
            } else if (!token.empty()) {
                out.push_back(token);
                token.clear();
            }
        }
        if (!token.empty()) out.push_back(token);
        return out;
    }

    static long count_occurrences(const std::vector<std::string>& tokens,
                                  const std::vector<std::string>& gram) {
        if (tokens.size() < gram.size()) return 0;
        long count = 0;
        for (size_t start = 0; start + gram.size() <= tokens.size(); start++) {
            bool match = true;
            for (size_t k = 0; k < gram.size(); k++) {
                if (tokens[start + k] != gram[k]) {
                    match = false;
                    break;
                }
            }
            if (match) count++;
        }
        return count;
    }

    std::vector<std::pair<std::string, std::string>> corpus_;
    double mu_;
};

}  // namespace testsupport
