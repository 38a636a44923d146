#include <doctest.h>

#include "sesh/kernels.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using testsupport::make_index;

namespace {

sesh::Index random_index(testsupport::Rng& rng, int docs, int max_len) {
    std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g"};
    std::vector<std::pair<std::string, std::string>> corpus;
    for (int d = 0; d < docs; d++) {
        std::string text;
        int len = rng.range(1, max_len);
        for (int i = 0; i < len; i++) {
            text += rng.pick(vocab);
            text += ' ';
        }
        corpus.emplace_back("doc" + std::to_string(d), text);
    }
    return make_index(corpus);
}

sesh::QueryModel random_model(testsupport::Rng& rng) {
    std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "zz"};
    sesh::QueryModel qm;
    int entities = rng.range(1, 6);
    for (int e = 0; e < entities; e++) {
        double weight = rng.unit() * 4.0 - 2.0;
        if (weight == 0) weight = 1.0;
        if (rng.range(0, 4) == 0) {
            qm.set({rng.pick(vocab), rng.pick(vocab)}, weight);
        } else {
            qm.set(sesh::unigram(rng.pick(vocab)), weight);
        }
    }
    if (qm.empty()) qm.set(sesh::unigram("a"), 1.0);
    return qm;
}

}  // namespace

TEST_CASE("parallel scoring kernels match the serial reference bit for bit") {
    testsupport::Rng rng(2024);
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    for (int trial = 0; trial < 10; trial++) {
        sesh::Index index = random_index(rng, rng.range(5, 40), 60);
        sesh::QueryModel qm = random_model(rng);
        sesh::SmoothingConfig cfg;
        auto compiled = sesh::kernels::compile(index, qm, cfg);

        std::vector<double> parallel = sesh::kernels::score_all(index, compiled);
        std::vector<double> serial = sesh::kernels::score_all_serial(index, compiled);
        CHECK(parallel == serial);

        std::vector<int32_t> ids;
        for (int32_t i = 0; i < index.num_docs(); i += 2) ids.push_back(i);
        if (!ids.empty()) {
            CHECK(sesh::kernels::score_docs(index, ids, compiled) ==
                  sesh::kernels::score_docs_serial(index, ids, compiled));
        }
    }
}

TEST_CASE("kernel scores equal the lmscore reference") {
    testsupport::Rng rng(77);
    sesh::Index index = random_index(rng, 12, 40);
    sesh::SmoothingConfig cfg;
    for (int trial = 0; trial < 20; trial++) {
        sesh::QueryModel qm = random_model(rng);
        auto compiled = sesh::kernels::compile(index, qm, cfg);
        std::vector<double> scores = sesh::kernels::score_all(index, compiled);
        for (int32_t i = 0; i < index.num_docs(); i++) {
            CHECK(scores[static_cast<size_t>(i)] == sesh::score(index, index.doc(i), qm, cfg));
        }
    }
}

TEST_CASE("scoring results do not depend on the thread count") {
#ifdef _OPENMP
    testsupport::Rng rng(31);
    sesh::Index index = random_index(rng, 50, 50);
    sesh::QueryModel qm = random_model(rng);
    auto compiled = sesh::kernels::compile(index, qm, sesh::SmoothingConfig{});

    omp_set_num_threads(1);
    std::vector<double> one = sesh::kernels::score_all(index, compiled);
    omp_set_num_threads(8);
    std::vector<double> eight = sesh::kernels::score_all(index, compiled);
    CHECK(one == eight);
#endif
}
